#ifndef MFKIT_MATRIX_HPP
#define MFKIT_MATRIX_HPP

#include "mfkit/ring.hpp"

#include <functional>
#include <vector>

namespace mfkit {

/// Dense matrix of polynomials. Sizes may be zero (empty factorizations and
/// degenerate certificate columns are legal).
class PolyMat {
public:
    PolyMat() : rows_(0), cols_(0) {}
    PolyMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static PolyMat identity(size_t n, size_t nvars);
    static PolyMat zero(size_t rows, size_t cols) { return PolyMat(rows, cols); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Poly& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Poly& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const PolyMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const PolyMat& o) const { return !(*this == o); }

    PolyMat operator+(const PolyMat& o) const;
    PolyMat operator-(const PolyMat& o) const;
    PolyMat operator*(const PolyMat& o) const;
    PolyMat operator-() const;
    PolyMat scaled(const Poly& c) const;
    PolyMat transposed() const;

    PolyMat map(const std::function<Poly(const Poly&)>& fn) const;
    PolyMat nf_entries(const RingCtx& ctx) const {
        return map([&](const Poly& p) { return nf(p, ctx); });
    }
    PolyMat substituted(const std::vector<Poly>& images, size_t target_nvars) const {
        return map([&](const Poly& p) { return p.substitute(images, target_nvars); });
    }
    PolyMat embedded(size_t target_nvars) const {
        return map([&](const Poly& p) { return embed_poly(p, target_nvars); });
    }

    PolyMat submatrix(const std::vector<size_t>& keep_rows,
                      const std::vector<size_t>& keep_cols) const;

    /// Block assembly: (rows of blocks) x (cols of blocks), sizes must agree.
    static PolyMat block2x2(const PolyMat& a, const PolyMat& b, const PolyMat& c,
                            const PolyMat& d);
    static PolyMat direct_sum(const PolyMat& a, const PolyMat& b);
    static PolyMat hstack(const PolyMat& a, const PolyMat& b);
    static PolyMat vstack(const PolyMat& a, const PolyMat& b);

    /// Row/column permutation: out[i][j] = in[row_of[i]][col_of[j]].
    PolyMat permuted(const std::vector<size_t>& row_of, const std::vector<size_t>& col_of) const;

    /// Entrywise constant term (image under every variable -> 0).
    std::vector<std::vector<Scalar>> eval_at_zero() const;

    // in-place elementary operations
    void row_axpy(size_t dst, size_t src, const Poly& c);  // row dst += c * row src
    void col_axpy(size_t dst, size_t src, const Poly& c);
    void row_swap(size_t i, size_t j);
    void col_swap(size_t i, size_t j);
    void row_scale(size_t i, const Poly& c);
    void col_scale(size_t j, const Poly& c);

private:
    size_t rows_, cols_;
    std::vector<Poly> a_;
};

/// Exact quotient of multivariate polynomials; throws when not divisible.
Poly poly_divexact(const Poly& p, const Poly& q);

/// Exact determinant (fraction-free elimination).
Poly det(const PolyMat& m);

/// Determinant of the constant-term matrix: the constant term of det(m),
/// which decides unit-ness in the local ring at the irrelevant maximal ideal.
Scalar det_constant_term(const PolyMat& m);

/// Adjugate-based inverse for matrices whose determinant is a nonzero scalar.
PolyMat inverse_scalar_det(const PolyMat& m);

} // namespace mfkit

#endif
