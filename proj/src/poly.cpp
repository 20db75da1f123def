#include "mfkit/poly.hpp"

#include <cctype>
#include <sstream>

namespace mfkit {

namespace {

std::string monomial_str(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m.e[i] != 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

} // namespace

std::string poly_to_string(const Poly& p, const std::vector<std::string>& vars,
                           const std::vector<int>& weights) {
    if (p.is_zero()) return "0";
    std::vector<const std::pair<const Monomial, Scalar>*> ts;
    for (const auto& t : p.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [&](const auto* a, const auto* b) {
        return weighted_less(b->first, a->first, weights);
    });
    std::string out;
    bool first = true;
    for (const auto* t : ts) {
        const Monomial& m = t->first;
        const Scalar& c = t->second;
        std::string mono = monomial_str(m, vars);
        std::string body;
        bool negative = false;
        if (c.is_rational()) {
            mpq_class a = c.re();
            negative = a < 0;
            mpq_class mag = abs(a);
            if (mono.empty())
                body = rat_str(mag);
            else if (mag == 1)
                body = mono;
            else
                body = rat_str(mag) + "*" + mono;
        } else if (c.re() == 0) {
            negative = c.im() < 0;
            mpq_class mag = abs(c.im());
            std::string imag = (mag == 1) ? "i" : rat_str(mag) + "*i";
            body = mono.empty() ? imag : imag + "*" + mono;
        } else {
            body = "(" + c.str() + ")";
            if (!mono.empty()) body += "*" + mono;
        }
        if (first) {
            out = (negative ? "-" : "") + body;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + body;
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    const std::vector<std::string>& vars;
    size_t pos = 0;

    explicit Parser(const std::string& str, const std::vector<std::string>& v)
        : s(str), vars(v) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse_poly: " + what + " at position " +
                                    std::to_string(pos) + " in '" + s + "'");
    }

    int parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected integer");
        return std::stoi(s.substr(start, pos - start));
    }

    mpq_class parse_rat() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected number");
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        mpq_class q(s.substr(start, pos - start));
        q.canonicalize();
        return q;
    }

    std::optional<size_t> match_var() {
        skip_ws();
        size_t best = vars.size();
        size_t best_len = 0;
        for (size_t i = 0; i < vars.size(); ++i) {
            const std::string& v = vars[i];
            if (v.size() > best_len && s.compare(pos, v.size(), v) == 0) {
                best = i;
                best_len = v.size();
            }
        }
        if (best == vars.size()) return std::nullopt;
        pos += best_len;
        return best;
    }

    // factor := '(' scalar ')' | rational ['*i'] | 'i' | var ['^' int]
    // term := factor ('*' factor)*
    Poly parse_term() {
        Poly acc = Poly::constant(Scalar(1), vars.size());
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of input");
            if (s[pos] == '(') {
                size_t depth = 1, start = ++pos;
                while (pos < s.size() && depth > 0) {
                    if (s[pos] == '(') ++depth;
                    if (s[pos] == ')') --depth;
                    ++pos;
                }
                if (depth != 0) fail("unbalanced parenthesis");
                acc = acc * Poly::constant(Scalar::parse(s.substr(start, pos - 1 - start)),
                                           vars.size());
            } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                acc = acc * Poly::constant(Scalar(parse_rat()), vars.size());
            } else if (auto vi = match_var()) {
                int exp = 1;
                skip_ws();
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    exp = parse_int();
                }
                acc = acc * Poly::term(Scalar(1), Monomial::var(*vi, vars.size(), exp));
            } else if (s[pos] == 'i') {
                ++pos;
                acc = acc * Poly::constant(Scalar::imag_unit(), vars.size());
            } else {
                fail("unexpected character");
            }
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        return acc;
    }

    Poly parse_expr() {
        Poly total;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= s.size()) {
                if (first) fail("empty expression");
                break;
            }
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Poly t = parse_term();
            total += sign < 0 ? -t : t;
            first = false;
        }
        return total;
    }
};

} // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    Parser p(text, vars);
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] == '0') {
        size_t save = p.pos;
        ++p.pos;
        p.skip_ws();
        if (p.pos == text.size()) return Poly::zero();
        p.pos = save;
    }
    Poly r = p.parse_expr();
    return r;
}

} // namespace mfkit
