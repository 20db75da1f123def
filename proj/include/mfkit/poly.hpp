#ifndef MFKIT_POLY_HPP
#define MFKIT_POLY_HPP

#include "mfkit/scalar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfkit {

/// Exponent vector over a fixed variable list. Exponents are nonnegative
/// except on variables a locus computation has marked inverted (Laurent mode).
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(size_t nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    static Monomial var(size_t idx, size_t nvars, int exp = 1) {
        Monomial m(nvars);
        m.e[idx] = exp;
        return m;
    }

    size_t nvars() const { return e.size(); }
    bool is_constant() const {
        return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    }
    bool is_laurent() const {
        return std::any_of(e.begin(), e.end(), [](int k) { return k < 0; });
    }

    long weighted_degree(const std::vector<int>& weights) const {
        long d = 0;
        for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * weights[i];
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    /// Exact quotient; caller must have checked divisibility (or accept Laurent).
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        if (e.size() != o.e.size()) return false;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    /// Plain lexicographic order (x0 > x1 > ...): the tie-break order.
    bool lex_less(const Monomial& o) const {
        for (size_t i = 0; i < e.size() && i < o.e.size(); ++i) {
            if (e[i] != o.e[i]) return e[i] < o.e[i];
        }
        return e.size() < o.e.size();
    }
};

/// Graded-lex compare under the given weights: by weighted degree, ties by lex.
inline bool weighted_less(const Monomial& a, const Monomial& b, const std::vector<int>& w) {
    long da = a.weighted_degree(w), db = b.weighted_degree(w);
    if (da != db) return da < db;
    return a.lex_less(b);
}

struct MonomialLex {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.lex_less(b); }
};

/// Sparse multivariate polynomial over an exact field K.
/// Stored zero coefficients are never kept; equality is term-map equality.
template <typename K>
class BasicPoly {
public:
    using Terms = std::map<Monomial, K, MonomialLex>;

    BasicPoly() = default;
    static BasicPoly zero() { return BasicPoly(); }
    static BasicPoly constant(const K& c, size_t nvars) {
        BasicPoly p;
        if (!c.is_zero()) p.terms_[Monomial(nvars)] = c;
        return p;
    }
    static BasicPoly term(const K& c, Monomial m) {
        BasicPoly p;
        if (!c.is_zero()) p.terms_[std::move(m)] = c;
        return p;
    }
    static BasicPoly variable(size_t idx, size_t nvars) {
        return term(K(1), Monomial::var(idx, nvars));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    size_t nvars() const { return terms_.empty() ? 0 : terms_.begin()->first.nvars(); }
    bool is_laurent() const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.first.is_laurent(); });
    }

    void add_term(const Monomial& m, const K& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K(0) : it->second;
    }
    K constant_term() const { return terms_.empty() ? K(0) : coeff(Monomial(nvars())); }

    BasicPoly operator-() const {
        BasicPoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    BasicPoly operator+(const BasicPoly& o) const {
        BasicPoly r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    BasicPoly operator-(const BasicPoly& o) const {
        BasicPoly r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    BasicPoly operator*(const BasicPoly& o) const {
        BasicPoly r;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
        return r;
    }
    BasicPoly operator*(const K& c) const {
        BasicPoly r;
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }
    BasicPoly& operator+=(const BasicPoly& o) { *this = *this + o; return *this; }
    BasicPoly& operator-=(const BasicPoly& o) { *this = *this - o; return *this; }
    BasicPoly& operator*=(const BasicPoly& o) { *this = *this * o; return *this; }

    bool operator==(const BasicPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const BasicPoly& o) const { return terms_ != o.terms_; }

    BasicPoly pow(int k) const {
        if (k < 0) throw std::domain_error("BasicPoly: negative power");
        BasicPoly r = constant(K(1), nvars() ? nvars() : 0);
        BasicPoly b(*this);
        if (is_zero() && k > 0) return zero();
        if (k == 0) return r.is_zero() ? one_for(*this) : r;
        r = one_for(*this);
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    /// Substitutes images[i] for variable i; images are over the target
    /// variable set (all must agree on arity). Fully expands.
    BasicPoly substitute(const std::vector<BasicPoly>& images, size_t target_nvars) const {
        BasicPoly r;
        for (const auto& [m, c] : terms_) {
            BasicPoly t = constant(c, target_nvars);
            for (size_t i = 0; i < m.e.size(); ++i) {
                if (m.e[i] == 0) continue;
                if (m.e[i] < 0) throw std::domain_error("substitute: Laurent input");
                t = t * images[i].pow(m.e[i]);
            }
            r += t;
        }
        return r;
    }

    /// Sets the given variables to zero, keeps the rest (arity unchanged).
    BasicPoly kill_vars(const std::vector<size_t>& vars) const {
        std::vector<bool> dead(nvars(), false);
        for (size_t v : vars) dead[v] = true;
        BasicPoly r;
        for (const auto& [m, c] : terms_) {
            bool survives = true;
            for (size_t i = 0; i < m.e.size(); ++i)
                if (dead[i] && m.e[i] != 0) { survives = false; break; }
            if (survives) r.terms_.emplace(m, c);
        }
        return r;
    }

    /// Drops every term divisible by one of the given monomials
    /// (reduction modulo a monomial ideal).
    BasicPoly reduce_mod_monomials(const std::vector<Monomial>& gens) const {
        if (gens.empty()) return *this;
        BasicPoly r;
        for (const auto& [m, c] : terms_) {
            bool killed = false;
            for (const auto& g : gens)
                if (g.divides(m)) { killed = true; break; }
            if (!killed) r.terms_.emplace(m, c);
        }
        return r;
    }

    K eval_at_zero() const { return constant_term(); }

    long max_weighted_degree(const std::vector<int>& w) const {
        long d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree(w));
        return d;
    }

    /// Largest monomial under the weighted-graded-lex order.
    const Monomial& leading_monomial(const std::vector<int>& w) const {
        if (terms_.empty()) throw std::domain_error("leading_monomial of zero");
        const Monomial* best = &terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            if (weighted_less(*best, m, w)) best = &m;
        return *best;
    }

private:
    static BasicPoly one_for(const BasicPoly& model) {
        return constant(K(1), model.nvars());
    }
    Terms terms_;
};

using Poly = BasicPoly<Scalar>;

/// Canonical text form: terms in descending weighted-graded-lex order,
/// `c * x0^a0 * ...` pieces; round-trips exactly through parse_poly.
std::string poly_to_string(const Poly& p, const std::vector<std::string>& vars,
                           const std::vector<int>& weights);
Poly parse_poly(const std::string& text, const std::vector<std::string>& vars);

} // namespace mfkit

#endif
