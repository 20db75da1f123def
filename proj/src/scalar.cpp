#include "mfkit/scalar.hpp"

#include <cctype>

namespace mfkit {

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Parses a rational "a" or "a/b" starting at pos; advances pos.
mpq_class parse_rat(const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    if (pos == start) throw std::invalid_argument("Scalar: expected number in '" + s + "'");
    mpq_class q(s.substr(start, pos - start));
    q.canonicalize();
    return q;
}

} // namespace

std::string Scalar::str() const {
    if (is_zero()) return "0";
    if (im_ == 0) return rat_str(re_);
    std::string imag;
    mpq_class a = abs(im_);
    if (a == 1)
        imag = "i";
    else
        imag = rat_str(a) + "*i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + imag;
    return rat_str(re_) + (im_ < 0 ? "-" : "+") + imag;
}

Scalar Scalar::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Scalar: empty string");
    size_t pos = 0;
    mpq_class re(0), im(0);
    auto read_part = [&](bool first) {
        int sign = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("Scalar: expected sign in '" + s + "'");
        }
        if (pos < s.size() && s[pos] == 'i') {
            ++pos;
            im += sign;
            return;
        }
        mpq_class q = parse_rat(s, pos);
        if (pos < s.size() && s[pos] == '*') {
            if (pos + 1 >= s.size() || s[pos + 1] != 'i')
                throw std::invalid_argument("Scalar: expected 'i' in '" + s + "'");
            pos += 2;
            im += sign * q;
        } else if (pos < s.size() && s[pos] == 'i') {
            ++pos;
            im += sign * q;
        } else {
            re += sign * q;
        }
    };
    read_part(true);
    while (pos < s.size()) read_part(false);
    return Scalar(re, im);
}

} // namespace mfkit
