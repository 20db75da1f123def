#include "mfkit/matrix.hpp"

namespace mfkit {

PolyMat PolyMat::identity(size_t n, size_t nvars) {
    PolyMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(Scalar(1), nvars);
    return m;
}

bool PolyMat::is_zero() const {
    for (const auto& p : a_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMat: size mismatch in +");
    PolyMat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

PolyMat PolyMat::operator-(const PolyMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMat: size mismatch in -");
    PolyMat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("PolyMat: size mismatch in *");
    PolyMat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Poly& x = at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

PolyMat PolyMat::operator-() const {
    PolyMat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
}

PolyMat PolyMat::scaled(const Poly& c) const {
    PolyMat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
}

PolyMat PolyMat::transposed() const {
    PolyMat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

PolyMat PolyMat::map(const std::function<Poly(const Poly&)>& fn) const {
    PolyMat r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = fn(a_[k]);
    return r;
}

PolyMat PolyMat::submatrix(const std::vector<size_t>& keep_rows,
                           const std::vector<size_t>& keep_cols) const {
    PolyMat r(keep_rows.size(), keep_cols.size());
    for (size_t i = 0; i < keep_rows.size(); ++i)
        for (size_t j = 0; j < keep_cols.size(); ++j) r.at(i, j) = at(keep_rows[i], keep_cols[j]);
    return r;
}

PolyMat PolyMat::block2x2(const PolyMat& a, const PolyMat& b, const PolyMat& c,
                          const PolyMat& d) {
    return vstack(hstack(a, b), hstack(c, d));
}

PolyMat PolyMat::direct_sum(const PolyMat& a, const PolyMat& b) {
    PolyMat r(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows_; ++i)
        for (size_t j = 0; j < b.cols_; ++j) r.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
    return r;
}

PolyMat PolyMat::hstack(const PolyMat& a, const PolyMat& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("PolyMat: hstack row mismatch");
    PolyMat r(a.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
        for (size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
}

PolyMat PolyMat::vstack(const PolyMat& a, const PolyMat& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("PolyMat: vstack col mismatch");
    PolyMat r(a.rows_ + b.rows_, a.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
    return r;
}

PolyMat PolyMat::permuted(const std::vector<size_t>& row_of,
                          const std::vector<size_t>& col_of) const {
    PolyMat r(row_of.size(), col_of.size());
    for (size_t i = 0; i < row_of.size(); ++i)
        for (size_t j = 0; j < col_of.size(); ++j) r.at(i, j) = at(row_of[i], col_of[j]);
    return r;
}

std::vector<std::vector<Scalar>> PolyMat::eval_at_zero() const {
    std::vector<std::vector<Scalar>> r(rows_, std::vector<Scalar>(cols_));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r[i][j] = at(i, j).eval_at_zero();
    return r;
}

void PolyMat::row_axpy(size_t dst, size_t src, const Poly& c) {
    for (size_t j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}
void PolyMat::col_axpy(size_t dst, size_t src, const Poly& c) {
    for (size_t i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}
void PolyMat::row_swap(size_t i, size_t j) {
    for (size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}
void PolyMat::col_swap(size_t i, size_t j) {
    for (size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}
void PolyMat::row_scale(size_t i, const Poly& c) {
    for (size_t j = 0; j < cols_; ++j) at(i, j) = at(i, j) * c;
}
void PolyMat::col_scale(size_t j, const Poly& c) {
    for (size_t i = 0; i < rows_; ++i) at(i, j) = at(i, j) * c;
}

Poly poly_divexact(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::domain_error("poly_divexact: division by zero");
    if (p.is_zero()) return Poly::zero();
    std::vector<int> w(p.nvars(), 1);
    const Monomial ltq = q.leading_monomial(w);
    const Scalar lcq = q.coeff(ltq);
    Poly rem = p, quot;
    while (!rem.is_zero()) {
        const Monomial ltp = rem.leading_monomial(w);
        if (!ltq.divides(ltp)) throw std::domain_error("poly_divexact: not divisible");
        Poly t = Poly::term(rem.coeff(ltp) / lcq, ltp / ltq);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

Poly det(const PolyMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    size_t n = m.rows();
    size_t nv = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) nv = std::max(nv, m.at(i, j).nvars());
    if (n == 0) return Poly::constant(Scalar(1), nv);
    PolyMat a = m;
    Poly prev = Poly::constant(Scalar(1), nv);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k).is_zero()) {
            size_t piv = n;
            for (size_t i = k + 1; i < n; ++i)
                if (!a.at(i, k).is_zero()) { piv = i; break; }
            if (piv == n) return Poly::zero();
            a.row_swap(k, piv);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Poly num = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = poly_divexact(num, prev);
            }
        prev = a.at(k, k);
        for (size_t i = k + 1; i < n; ++i) a.at(i, k) = Poly::zero();
    }
    Poly d = a.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

Scalar det_constant_term(const PolyMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_constant_term: not square");
    size_t n = m.rows();
    auto a = m.eval_at_zero();
    Scalar result(1);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = n;
        for (size_t i = k; i < n; ++i)
            if (!a[i][k].is_zero()) { piv = i; break; }
        if (piv == n) return Scalar(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            result = -result;
        }
        result *= a[k][k];
        Scalar inv = a[k][k].inverse();
        for (size_t i = k + 1; i < n; ++i) {
            Scalar factor = a[i][k] * inv;
            if (factor.is_zero()) continue;
            for (size_t j = k; j < n; ++j) a[i][j] = a[i][j] - factor * a[k][j];
        }
    }
    return result;
}

PolyMat inverse_scalar_det(const PolyMat& m) {
    Poly d = det(m);
    if (d.term_count() != 1 || !d.terms().begin()->first.is_constant())
        throw std::domain_error("inverse_scalar_det: determinant is not a scalar");
    Scalar dc = d.constant_term();
    size_t n = m.rows();
    PolyMat adj(n, n);
    std::vector<size_t> all;
    for (size_t i = 0; i < n; ++i) all.push_back(i);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<size_t> ri, cj;
            for (size_t k = 0; k < n; ++k) {
                if (k != i) ri.push_back(k);
                if (k != j) cj.push_back(k);
            }
            Poly mij = det(m.submatrix(ri, cj));
            Scalar sgn = ((i + j) % 2 == 0) ? Scalar(1) : Scalar(-1);
            adj.at(j, i) = mij * sgn;
        }
    return adj.map([&](const Poly& p) { return p * dc.inverse(); });
}

} // namespace mfkit
