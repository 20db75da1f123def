#ifndef MFKIT_SCALAR_HPP
#define MFKIT_SCALAR_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace mfkit {

/// Element of Q(i): a + b*i with arbitrary-precision rational a, b.
/// This is the default coefficient field. All arithmetic is exact.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(const mpq_class& re) : re_(re), im_(0) { re_.canonicalize(); }
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar rational(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    }
    static Scalar imag_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar operator+(const Scalar& o) const { return Scalar(re_ + o.re_, im_ + o.im_); }
    Scalar operator-(const Scalar& o) const { return Scalar(re_ - o.re_, im_ - o.im_); }
    Scalar operator*(const Scalar& o) const {
        return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    Scalar operator/(const Scalar& o) const {
        if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        return Scalar((re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n);
    }
    Scalar inverse() const { return Scalar(1) / *this; }
    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Deterministic total order, used only for canonical term ordering in output.
    bool operator<(const Scalar& o) const {
        if (re_ != o.re_) return re_ < o.re_;
        return im_ < o.im_;
    }

    std::string str() const;
    static Scalar parse(const std::string& s);

private:
    mpq_class re_, im_;
};

/// Prime field F_p, p an odd prime: the alternative coefficient field.
/// The library's catalog data requires Q(i); F_p is provided for the
/// polynomial layer, which is generic over the field.
class Fp {
public:
    Fp() : v_(0), p_(3) {}
    Fp(long v, long p) : v_(((v % p) + p) % p), p_(p) {
        if (p < 3 || p % 2 == 0) throw std::domain_error("Fp: p must be an odd prime");
    }

    long value() const { return v_; }
    long p() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(p_ - v_, p_); }
    Fp operator+(const Fp& o) const { check(o); return Fp(v_ + o.v_, p_); }
    Fp operator-(const Fp& o) const { check(o); return Fp(v_ - o.v_ + p_, p_); }
    Fp operator*(const Fp& o) const { check(o); return Fp(v_ * o.v_, p_); }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp: division by zero");
        long t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            long q = r / nr;
            long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return Fp(t, p_);
    }
    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::domain_error("Fp: mixed characteristics");
    }
    long v_, p_;
};

} // namespace mfkit

#endif
