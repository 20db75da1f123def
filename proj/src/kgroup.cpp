#include "mfkit/kgroup.hpp"

#include <algorithm>

namespace mfkit {

namespace {

size_t zrows(const ZMat& m) { return m.size(); }
size_t zcols(const ZMat& m) { return m.empty() ? 0 : m[0].size(); }

ZMat zidentity(size_t n) {
    ZMat e(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) e[i][i] = 1;
    return e;
}

ZMat zmul(const ZMat& a, const ZMat& b) {
    ZMat r(zrows(a), std::vector<mpz_class>(zcols(b), 0));
    for (size_t i = 0; i < zrows(a); ++i)
        for (size_t k = 0; k < zcols(a); ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < zcols(b); ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

mpz_class zdet(ZMat a) {
    size_t n = zrows(a);
    if (n == 0) return 1;
    // fraction-free elimination
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = n;
            for (size_t i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = q;
            }
        prev = a[k][k];
        for (size_t i = k + 1; i < n; ++i) a[i][k] = 0;
    }
    return sign * a[n - 1][n - 1];
}

void check_snf(const ZMat& M, const SNFResult& r) {
    size_t m = zrows(M), n = zcols(M);
    ZMat lhs = zmul(zmul(r.U, M), r.V);
    if (lhs != r.D) throw std::logic_error("snf: U*M*V != D");
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && r.D[i][j] != 0) throw std::logic_error("snf: D not diagonal");
    mpz_class du = zdet(r.U), dv = zdet(r.V);
    if (du != 1 && du != -1) throw std::logic_error("snf: U not unimodular");
    if (dv != 1 && dv != -1) throw std::logic_error("snf: V not unimodular");
    for (size_t i = 0; i + 1 < r.diagonal.size(); ++i) {
        if (r.diagonal[i] == 0) throw std::logic_error("snf: zero inside the chain");
        if (r.diagonal[i + 1] % r.diagonal[i] != 0)
            throw std::logic_error("snf: divisibility chain broken");
    }
}

} // namespace

SNFResult snf(const ZMat& M) {
    size_t m = zrows(M), n = zcols(M);
    SNFResult r;
    r.U = zidentity(m);
    r.V = zidentity(n);
    r.D = M;
    ZMat& D = r.D;

    auto row_axpy = [&](size_t dst, size_t src, const mpz_class& c) {
        for (size_t j = 0; j < n; ++j) D[dst][j] += c * D[src][j];
        for (size_t j = 0; j < m; ++j) r.U[dst][j] += c * r.U[src][j];
    };
    auto col_axpy = [&](size_t dst, size_t src, const mpz_class& c) {
        for (size_t i = 0; i < m; ++i) D[i][dst] += c * D[i][src];
        for (size_t i = 0; i < n; ++i) r.V[i][dst] += c * r.V[i][src];
    };
    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        std::swap(D[i], D[j]);
        std::swap(r.U[i], r.U[j]);
    };
    auto col_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < m; ++k) std::swap(D[k][i], D[k][j]);
        for (size_t k = 0; k < n; ++k) std::swap(r.V[k][i], r.V[k][j]);
    };
    auto row_negate = [&](size_t i) {
        for (size_t j = 0; j < n; ++j) D[i][j] = -D[i][j];
        for (size_t j = 0; j < m; ++j) r.U[i][j] = -r.U[i][j];
    };

    size_t k = 0;
    while (k < m && k < n) {
        // find a nonzero pivot of smallest absolute value
        size_t pi = m, pj = n;
        mpz_class best = 0;
        for (size_t i = k; i < m; ++i)
            for (size_t j = k; j < n; ++j) {
                if (D[i][j] == 0) continue;
                mpz_class a = abs(D[i][j]);
                if (pi == m || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;  // submatrix is zero
        row_swap(k, pi);
        col_swap(k, pj);
        bool clean = true;
        for (size_t i = k + 1; i < m; ++i) {
            if (D[i][k] == 0) continue;
            mpz_class q = D[i][k] / D[k][k];
            // round toward smaller remainder
            if (abs(D[i][k] - q * D[k][k]) * 2 > abs(D[k][k])) q += D[i][k] * D[k][k] > 0 ? 1 : -1;
            row_axpy(i, k, -q);
            if (D[i][k] != 0) clean = false;
        }
        for (size_t j = k + 1; j < n; ++j) {
            if (D[k][j] == 0) continue;
            mpz_class q = D[k][j] / D[k][k];
            if (abs(D[k][j] - q * D[k][k]) * 2 > abs(D[k][k])) q += D[k][j] * D[k][k] > 0 ? 1 : -1;
            col_axpy(j, k, -q);
            if (D[k][j] != 0) clean = false;
        }
        if (!clean) continue;  // remainders got smaller, pivot again
        // pivot must divide the remaining submatrix
        bool divides = true;
        for (size_t i = k + 1; i < m && divides; ++i)
            for (size_t j = k + 1; j < n; ++j)
                if (D[i][j] % D[k][k] != 0) {
                    row_axpy(k, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (D[k][k] < 0) row_negate(k);
        ++k;
    }

    for (size_t i = 0; i < std::min(m, n); ++i)
        if (D[i][i] != 0) r.diagonal.push_back(D[i][i]);
    r.coker_free_rank = static_cast<long>(m) - static_cast<long>(r.diagonal.size());
    for (const auto& d : r.diagonal)
        if (d > 1) r.torsion.push_back(d);
    check_snf(M, r);
    return r;
}

AbPresentation harvest_relations(const Catalog& cat) {
    AbPresentation ab;
    for (const auto& e : cat.entries) ab.generators.push_back(e.label);
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < ab.generators.size(); ++i) idx[ab.generators[i]] = i;
    size_t g = ab.generators.size();
    size_t r_col = idx.at("R");

    for (const auto& s : cat.sequences) {
        SESVerdict v = verify_ses_cert(s.cert);
        if (!v.ok) throw std::runtime_error("harvest_relations: unverified certificate: " + v.detail);
        std::vector<mpz_class> row(g, 0);
        row[idx.at(s.cert.sub.label)] += 1;
        row[idx.at(s.cert.quot.label)] += 1;
        if (!s.cert.mid_core_label.empty()) row[idx.at(s.cert.mid_core_label)] -= 1;
        row[r_col] -= s.cert.free_rank;
        ab.relations.push_back(std::move(row));
    }
    for (const auto& iso : cat.isos) {
        const MatFac& src = cat.entry(iso.from).mf;
        const MatFac& dst = cat.entry(iso.to).mf;
        if (!check_equivalence(src, dst, iso.U, iso.V))
            throw std::runtime_error("harvest_relations: unverified isomorphism " + iso.from);
        std::vector<mpz_class> row(g, 0);
        row[idx.at(iso.from)] += 1;
        row[idx.at(iso.to)] -= 1;
        ab.relations.push_back(std::move(row));
    }
    return ab;
}

AbPresentation harvest_relations(const RingCtx& ctx, int n_max) {
    if (n_max == 0) {
        AbPresentation ab;
        ab.generators.push_back("R");
        return ab;
    }
    return harvest_relations(build_catalog(ctx, n_max));
}

std::string K0Class::pretty() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& t : torsion) parts.push_back("Z/" + t.get_str() + "Z");
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

namespace {

K0Class classify(const AbPresentation& ab) {
    // cokernel of Z^rows -> Z^gens given by the transposed relation matrix
    size_t g = ab.generators.size(), r = ab.relations.size();
    ZMat Mt(g, std::vector<mpz_class>(r, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < g; ++j) Mt[j][i] = ab.relations[i][j];
    SNFResult s = snf(Mt);
    K0Class c;
    c.free_rank = s.coker_free_rank;
    c.torsion = s.torsion;
    return c;
}

K0Class present_once(const RingCtx& ctx, K0Variant variant, int n_max) {
    AbPresentation ab = harvest_relations(ctx, n_max);
    if (variant == K0Variant::Stable) {
        // add [R] = 0 and drop the free generator
        size_t r_col = 0;
        while (ab.generators[r_col] != "R") ++r_col;
        AbPresentation st;
        for (size_t j = 0; j < ab.generators.size(); ++j)
            if (j != r_col) st.generators.push_back(ab.generators[j]);
        for (const auto& row : ab.relations) {
            std::vector<mpz_class> nrow;
            for (size_t j = 0; j < row.size(); ++j)
                if (j != r_col) nrow.push_back(row[j]);
            st.relations.push_back(std::move(nrow));
        }
        ab = std::move(st);
    }
    return classify(ab);
}

} // namespace

K0Class present_k0(const RingCtx& ctx, K0Variant variant, int n_max) {
    if (n_max < 1) throw std::invalid_argument("present_k0: n_max must be >= 1");
    K0Class a = present_once(ctx, variant, n_max);
    K0Class b = present_once(ctx, variant, n_max + 1);
    if (!(a == b))
        throw std::runtime_error("present_k0: classification not stable under n_max growth");
    bool domain = ctx.family == Family::DInf ? ctx.d >= 2 : ctx.d >= 3;
    a.route = domain ? "stable-quotient (domain)" : "total-quotient-ring (non-domain)";
    return a;
}

namespace {

struct MinimalPrime {
    std::string name;
    size_t t_var;       // the nilpotent / field variable
    int nilpotency;     // e: localization is kappa[t]/(t^e)
    bool domain = false;
};

std::vector<MinimalPrime> minimal_primes(const RingCtx& ctx) {
    if (ctx.d > 2) throw std::invalid_argument("multirank: restricted to d <= 2");
    size_t x0 = static_cast<size_t>(ctx.var_index("x0"));
    if (ctx.family == Family::AInf && ctx.d == 1) return {{"(x0)", x0, 2, false}};
    if (ctx.family == Family::DInf && ctx.d == 1) {
        size_t x1 = static_cast<size_t>(ctx.var_index("x1"));
        return {{"(x0)", x0, 2, false}, {"(x1)", x1, 1, false}};
    }
    if (ctx.family == Family::AInf && ctx.d == 2) {
        if (ctx.form != Form::UV)
            throw std::invalid_argument("multirank: unsupported prime structure (use the uv form)");
        size_t x2 = static_cast<size_t>(ctx.var_index("x2"));
        return {{"(x0)", x0, 1, false}, {"(x2)", x2, 1, false}};
    }
    if (ctx.form != Form::UV)
        throw std::invalid_argument("multirank: unsupported prime structure (use the uv form)");
    return {{"(0)", 0, 0, true}};
}

long ord_t(const Poly& p, size_t t_var) {
    if (p.is_zero()) return -1;  // infinite
    long best = -1;
    for (const auto& [m, c] : p.terms()) {
        long e = m.e[t_var];
        if (best < 0 || e < best) best = e;
    }
    return best;
}

bool next_combination(std::vector<size_t>& idx, size_t total) {
    size_t k = idx.size();
    size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] + (k - i) < total) {
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Length of coker([A | t^e E]) over kappa[t]: min over maximal minors of the
/// t-order (the determinant divisor argument; gcd order = min order since
/// ord_t is a valuation).
long nilpotent_length(const PolyMat& A, size_t t_var, int e, const RingCtx& ctx) {
    size_t n = A.rows();
    size_t nv = ctx.nvars();
    PolyMat M = PolyMat::hstack(A, PolyMat::identity(n, nv).scaled(
                                       Poly::term(Scalar(1), Monomial::var(t_var, nv, e))));
    // enumerate n-subsets of the 2n columns
    std::vector<size_t> idx(n), rows(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    for (size_t i = 0; i < n; ++i) rows[i] = i;
    long best = -1;
    do {
        Poly d = det(M.submatrix(rows, idx));
        long o = ord_t(d, t_var);
        if (o >= 0 && (best < 0 || o < best)) best = o;
        if (best == 0) break;
    } while (next_combination(idx, 2 * n));
    if (best < 0)
        throw std::logic_error("multirank: presentation has torsion-free part at a minimal prime");
    return best;
}

long generic_rank(const PolyMat& A, const RingCtx& ctx) {
    size_t n = A.rows();
    for (size_t r = n; r >= 1; --r) {
        std::vector<size_t> ri(r);
        for (size_t i = 0; i < r; ++i) ri[i] = i;
        do {
            std::vector<size_t> ci(r);
            for (size_t i = 0; i < r; ++i) ci[i] = i;
            do {
                if (!nf(det(A.submatrix(ri, ci)), ctx).is_zero()) return static_cast<long>(r);
            } while (next_combination(ci, n));
        } while (next_combination(ri, n));
    }
    return 0;
}

} // namespace

std::map<std::string, long> multirank(const CatalogEntry& entry) {
    const RingCtx& ctx = entry.mf.ctx;
    std::map<std::string, long> out;
    for (const auto& mp : minimal_primes(ctx)) {
        if (mp.domain) {
            long rank = static_cast<long>(entry.mf.size()) - generic_rank(entry.mf.A, ctx);
            out[mp.name] = rank;
        } else {
            out[mp.name] = nilpotent_length(entry.mf.A.nf_entries(ctx), mp.t_var,
                                            mp.nilpotency, ctx);
        }
    }
    return out;
}

} // namespace mfkit
