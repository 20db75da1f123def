#include "mfkit/matfac.hpp"

#include <cassert>

namespace mfkit {

namespace {

bool is_nonzero_constant(const Poly& p) {
    return p.term_count() == 1 && p.terms().begin()->first.is_constant();
}

bool has_unit_constant_term(const Poly& p) { return !p.eval_at_zero().is_zero(); }

} // namespace

MatFac make_matfac(RingCtx ctx, PolyMat A, PolyMat B, std::string label) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("MatFac: matrices must be square of equal size");
    return MatFac{std::move(ctx), std::move(A), std::move(B), std::move(label)};
}

MatFac trivial_free(const RingCtx& ctx) {
    PolyMat A(1, 1), B(1, 1);
    A.at(0, 0) = ctx.f;
    B.at(0, 0) = Poly::constant(Scalar(1), ctx.nvars());
    return MatFac{ctx, A, B, "R"};
}

MatFac trivial_unit(const RingCtx& ctx) {
    PolyMat A(1, 1), B(1, 1);
    A.at(0, 0) = Poly::constant(Scalar(1), ctx.nvars());
    B.at(0, 0) = ctx.f;
    return MatFac{ctx, A, B, "0"};
}

ValidationResult validate(const MatFac& mf) {
    size_t n = mf.size();
    const Poly& f = mf.ctx.f;
    for (int side = 0; side < 2; ++side) {
        PolyMat prod = side == 0 ? mf.A * mf.B : mf.B * mf.A;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Poly want = i == j ? f : Poly::zero();
                if (prod.at(i, j) != want) {
                    ValidationResult r;
                    r.ok = false;
                    r.side = side == 0 ? 'A' : 'B';
                    r.i = i;
                    r.j = j;
                    r.residual = prod.at(i, j) - want;
                    return r;
                }
            }
    }
    return {};
}

void require_valid(const MatFac& mf) {
    ValidationResult r = validate(mf);
    if (!r.ok)
        throw std::invalid_argument("MatFac '" + mf.label + "': product " + r.side +
                                    " fails at (" + std::to_string(r.i) + "," +
                                    std::to_string(r.j) + ")");
}

MatFac syzygy(const MatFac& mf) {
    return MatFac{mf.ctx, mf.B, mf.A, "Omega(" + mf.label + ")"};
}

MatFac direct_sum(const MatFac& a, const MatFac& b) {
    if (a.ctx != b.ctx) throw std::invalid_argument("direct_sum: context mismatch");
    return MatFac{a.ctx, PolyMat::direct_sum(a.A, b.A), PolyMat::direct_sum(a.B, b.B),
                  a.label + " (+) " + b.label};
}

MatFac knorrer(const MatFac& mf) {
    RingCtx ext = knorrer_extend(mf.ctx);
    size_t n = mf.size();
    size_t nv = ext.nvars();
    Poly y = Poly::variable(nv - 2, nv);
    Poly z = Poly::variable(nv - 1, nv);
    PolyMat yE = PolyMat::identity(n, nv).scaled(y);
    PolyMat zE = PolyMat::identity(n, nv).scaled(z);
    PolyMat Ae = mf.A.embedded(nv), Be = mf.B.embedded(nv);
    PolyMat A2 = PolyMat::block2x2(Ae, yE, zE, -Be);
    PolyMat B2 = PolyMat::block2x2(Be, yE, zE, -Ae);
    return MatFac{std::move(ext), std::move(A2), std::move(B2), "F(" + mf.label + ")"};
}

bool morphism_ok(const MFMorphism& m) {
    if (m.source.ctx != m.target.ctx) return false;
    if (m.p.rows() != m.target.size() || m.p.cols() != m.source.size()) return false;
    if (m.q.rows() != m.target.size() || m.q.cols() != m.source.size()) return false;
    const RingCtx& ctx = m.source.ctx;
    PolyMat r1 = (m.p * m.source.A - m.target.A * m.q).nf_entries(ctx);
    if (!r1.is_zero()) return false;
    PolyMat r2 = (m.q * m.source.B - m.target.B * m.p).nf_entries(ctx);
    return r2.is_zero();
}

MFMorphism identity_morphism(const MatFac& mf) {
    PolyMat e = PolyMat::identity(mf.size(), mf.ctx.nvars());
    return MFMorphism{mf, mf, e, e};
}

MFMorphism compose(const MFMorphism& g, const MFMorphism& f) {
    if (f.target.ctx != g.source.ctx || f.target.size() != g.source.size())
        throw std::invalid_argument("compose: middle objects disagree");
    return MFMorphism{f.source, g.target, (g.p * f.p).nf_entries(f.source.ctx),
                      (g.q * f.q).nf_entries(f.source.ctx)};
}

MFMorphism knorrer_lift_morphism(const MFMorphism& m) {
    if (!morphism_ok(m)) throw std::invalid_argument("knorrer_lift_morphism: invalid input");
    MatFac fs = knorrer(m.source), ft = knorrer(m.target);
    size_t nv = fs.ctx.nvars();
    PolyMat pe = m.p.embedded(nv), qe = m.q.embedded(nv);
    return MFMorphism{fs, ft, PolyMat::direct_sum(pe, qe), PolyMat::direct_sum(qe, pe)};
}

int PairSplit::free_rank() const {
    int n = 0;
    for (const auto& b : blocks)
        if (b.frees_summand) ++n;
    return n;
}

PolyMat PairSplit::target_A(const RingCtx& ctx) const {
    PolyMat t = core ? core->A : PolyMat(0, 0);
    for (const auto& b : blocks) {
        PolyMat one(1, 1);
        one.at(0, 0) = b.a;
        t = PolyMat::direct_sum(t, one);
    }
    (void)ctx;
    return t;
}

PolyMat PairSplit::target_B(const RingCtx& ctx) const {
    PolyMat t = core ? core->B : PolyMat(0, 0);
    for (const auto& b : blocks) {
        PolyMat one(1, 1);
        one.at(0, 0) = b.b;
        t = PolyMat::direct_sum(t, one);
    }
    (void)ctx;
    return t;
}

PairSplit identity_split(const MatFac& mf) {
    PolyMat e = PolyMat::identity(mf.size(), mf.ctx.nvars());
    return PairSplit{e, e, e, e, mf, {}};
}

SplitVerdict verify_pair_split(const MatFac& mf, const PairSplit& split, bool exact) {
    const RingCtx& ctx = mf.ctx;
    size_t n = mf.size();
    auto fail = [](std::string s) { return SplitVerdict{false, std::move(s)}; };
    if (split.core_size() + split.blocks.size() != n) return fail("split sizes do not add up");
    auto is_zero = [&](const PolyMat& m) {
        return exact ? m.is_zero() : m.nf_entries(ctx).is_zero();
    };
    PolyMat e = PolyMat::identity(n, ctx.nvars());
    if (!is_zero(split.U * split.Uinv - e)) return fail("U*Uinv != E");
    if (!is_zero(split.V * split.Vinv - e)) return fail("V*Vinv != E");
    if (det_constant_term(split.U).is_zero()) return fail("det U not a unit");
    if (det_constant_term(split.V).is_zero()) return fail("det V not a unit");
    if (!is_zero(split.U * mf.A * split.V - split.target_A(ctx)))
        return fail("U*A*V misses the block target");
    if (!is_zero(split.Vinv * mf.B * split.Uinv - split.target_B(ctx)))
        return fail("Vinv*B*Uinv misses the block target");
    for (const auto& b : split.blocks) {
        Poly prod = b.a * b.b - ctx.f;
        if (exact ? !prod.is_zero() : !nf(prod, ctx).is_zero())
            return fail("trivial block does not multiply to f");
        bool a_unit = has_unit_constant_term(b.a);
        bool b_unit = has_unit_constant_term(b.b);
        if (a_unit == b_unit) return fail("trivial block must have exactly one unit side");
        if (b.frees_summand != b_unit) return fail("block orientation mislabeled");
    }
    if (split.core) {
        if (split.core->ctx != ctx) return fail("core context mismatch");
        ValidationResult v = validate(*split.core);
        if (exact && !v.ok) return fail("core does not validate");
        if (!exact) {
            PolyMat ab = (split.core->A * split.core->B).nf_entries(ctx);
            PolyMat ba = (split.core->B * split.core->A).nf_entries(ctx);
            if (!ab.is_zero() || !ba.is_zero()) return fail("core not a factorization mod f");
        }
    }
    return {};
}

namespace {

/// Pair under simultaneous reduction: Acur = U*A0*V, Bcur = Vinv*B0*Uinv,
/// maintained exactly through every elementary operation.
struct PairReducer {
    PolyMat Acur, Bcur, U, V, Uinv, Vinv;

    explicit PairReducer(const MatFac& mf)
        : Acur(mf.A),
          Bcur(mf.B),
          U(PolyMat::identity(mf.size(), mf.ctx.nvars())),
          V(U),
          Uinv(U),
          Vinv(U) {}

    // row(dst) += c * row(src) on the A side
    void a_row_axpy(size_t dst, size_t src, const Poly& c) {
        Acur.row_axpy(dst, src, c);
        U.row_axpy(dst, src, c);
        Uinv.col_axpy(src, dst, -c);
        Bcur.col_axpy(src, dst, -c);
    }
    // col(dst) += c * col(src) on the A side
    void a_col_axpy(size_t dst, size_t src, const Poly& c) {
        Acur.col_axpy(dst, src, c);
        V.col_axpy(dst, src, c);
        Vinv.row_axpy(src, dst, -c);
        Bcur.row_axpy(src, dst, -c);
    }
    void a_row_swap(size_t i, size_t j) {
        if (i == j) return;
        Acur.row_swap(i, j);
        U.row_swap(i, j);
        Uinv.col_swap(i, j);
        Bcur.col_swap(i, j);
    }
    void a_col_swap(size_t i, size_t j) {
        if (i == j) return;
        Acur.col_swap(i, j);
        V.col_swap(i, j);
        Vinv.row_swap(i, j);
        Bcur.row_swap(i, j);
    }
    // row(dst) += c * row(src) on the B side
    void b_row_axpy(size_t dst, size_t src, const Poly& c) {
        Bcur.row_axpy(dst, src, c);
        Vinv.row_axpy(dst, src, c);
        V.col_axpy(src, dst, -c);
        Acur.col_axpy(src, dst, -c);
    }
    void b_col_axpy(size_t dst, size_t src, const Poly& c) {
        Bcur.col_axpy(dst, src, c);
        Uinv.col_axpy(dst, src, c);
        U.row_axpy(src, dst, -c);
        Acur.row_axpy(src, dst, -c);
    }
    void b_row_swap(size_t i, size_t j) {
        if (i == j) return;
        Bcur.row_swap(i, j);
        Vinv.row_swap(i, j);
        V.col_swap(i, j);
        Acur.col_swap(i, j);
    }
    void b_col_swap(size_t i, size_t j) {
        if (i == j) return;
        Bcur.col_swap(i, j);
        Uinv.col_swap(i, j);
        U.row_swap(i, j);
        Acur.row_swap(i, j);
    }

    void normalize(const RingCtx& ctx) {
        Acur = Acur.nf_entries(ctx);
        Bcur = Bcur.nf_entries(ctx);
        U = U.nf_entries(ctx);
        V = V.nf_entries(ctx);
        Uinv = Uinv.nf_entries(ctx);
        Vinv = Vinv.nf_entries(ctx);
    }
};

struct PivotPos {
    bool found = false;
    bool in_a = true;
    size_t i = 0, j = 0;
};

PivotPos find_pivot(const PolyMat& A, const PolyMat& B, size_t m,
                    bool (*pred)(const Poly&)) {
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (pred(A.at(i, j))) return {true, true, i, j};
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (pred(B.at(i, j))) return {true, false, i, j};
    return {};
}

} // namespace

PairSplit split_constant_units(const MatFac& mf) {
    require_valid(mf);
    const RingCtx& ctx = mf.ctx;
    PairReducer red(mf);
    std::vector<TrivialBlock> blocks;
    size_t m = mf.size();

    while (m > 0) {
        PivotPos piv = find_pivot(red.Acur, red.Bcur, m, is_nonzero_constant);
        if (!piv.found) break;
        const Scalar u = (piv.in_a ? red.Acur : red.Bcur).at(piv.i, piv.j).constant_term();
        const Scalar uinv = u.inverse();
        size_t nv = ctx.nvars();
        if (piv.in_a) {
            for (size_t k = 0; k < m; ++k) {
                if (k == piv.i) continue;
                const Poly c = red.Acur.at(k, piv.j);
                if (!c.is_zero()) red.a_row_axpy(k, piv.i, -(c * uinv));
            }
            for (size_t l = 0; l < m; ++l) {
                if (l == piv.j) continue;
                const Poly c = red.Acur.at(piv.i, l);
                if (!c.is_zero()) red.a_col_axpy(l, piv.j, -(c * uinv));
            }
            red.a_row_swap(piv.i, m - 1);
            red.a_col_swap(piv.j, m - 1);
        } else {
            for (size_t k = 0; k < m; ++k) {
                if (k == piv.i) continue;
                const Poly c = red.Bcur.at(k, piv.j);
                if (!c.is_zero()) red.b_row_axpy(k, piv.i, -(c * uinv));
            }
            for (size_t l = 0; l < m; ++l) {
                if (l == piv.j) continue;
                const Poly c = red.Bcur.at(piv.i, l);
                if (!c.is_zero()) red.b_col_axpy(l, piv.j, -(c * uinv));
            }
            red.b_row_swap(piv.i, m - 1);
            red.b_col_swap(piv.j, m - 1);
        }
        // The partner matrix is forced block diagonal; anything else means
        // the input pair was not a factorization.
        for (size_t k = 0; k + 1 < m; ++k) {
            if (!red.Acur.at(k, m - 1).is_zero() || !red.Acur.at(m - 1, k).is_zero() ||
                !red.Bcur.at(k, m - 1).is_zero() || !red.Bcur.at(m - 1, k).is_zero())
                throw std::logic_error("split_constant_units: block extraction failed");
        }
        (void)nv;
        TrivialBlock blk{red.Acur.at(m - 1, m - 1), red.Bcur.at(m - 1, m - 1), !piv.in_a};
        blocks.insert(blocks.begin(), blk);
        --m;
    }

    PairSplit out;
    out.U = red.U;
    out.V = red.V;
    out.Uinv = red.Uinv;
    out.Vinv = red.Vinv;
    if (m > 0) {
        std::vector<size_t> keep;
        for (size_t i = 0; i < m; ++i) keep.push_back(i);
        out.core = MatFac{ctx, red.Acur.submatrix(keep, keep), red.Bcur.submatrix(keep, keep),
                          mf.label.empty() ? "core" : "min(" + mf.label + ")"};
    }
    out.blocks = std::move(blocks);
    return out;
}

PairSplit knorrer_lift_split(const PairSplit& split, const MatFac& mid,
                             const MatFac& lifted_mid) {
    const RingCtx& ext = lifted_mid.ctx;
    size_t n = mid.size();
    size_t nv = ext.nvars();
    size_t c = split.core_size();
    size_t t = split.blocks.size();
    const Poly f = ext.f;
    Poly y = Poly::variable(nv - 2, nv);
    Poly z = Poly::variable(nv - 1, nv);

    auto emb = [&](const PolyMat& m) { return m.embedded(nv); };

    PolyMat U1 = PolyMat::direct_sum(emb(split.U), emb(split.Vinv));
    PolyMat V1 = PolyMat::direct_sum(emb(split.V), emb(split.Uinv));
    PolyMat U1inv = PolyMat::direct_sum(emb(split.Uinv), emb(split.V));
    PolyMat V1inv = PolyMat::direct_sum(emb(split.Vinv), emb(split.U));

    // Group the doubled target into F(core) followed by one 2x2 block per
    // trivial block.
    std::vector<size_t> order;
    for (size_t i = 0; i < c; ++i) order.push_back(i);
    for (size_t i = 0; i < c; ++i) order.push_back(n + i);
    for (size_t i = 0; i < t; ++i) {
        order.push_back(c + i);
        order.push_back(n + c + i);
    }
    PolyMat P(2 * n, 2 * n);
    for (size_t i = 0; i < 2 * n; ++i)
        P.at(i, order[i]) = Poly::constant(Scalar(1), nv);
    PolyMat Pt = P.transposed();

    PolyMat U2 = P * U1, V2 = V1 * Pt, U2inv = U1inv * Pt, V2inv = P * V1inv;

    // Per-block 2x2 reduction matrices.
    PolyMat WU = PolyMat::identity(2 * c, nv), WV = WU, WUinv = WU, WVinv = WU;
    std::vector<TrivialBlock> new_blocks;
    auto one = Poly::constant(Scalar(1), nv);
    for (const auto& b : split.blocks) {
        PolyMat wu(2, 2), wv(2, 2), wui(2, 2), wvi(2, 2);
        if (!b.frees_summand) {
            // a is the constant unit
            Scalar u = b.a.constant_term();
            Poly zu = z * u.inverse(), yu = y * u.inverse();
            wu = PolyMat::identity(2, nv);
            wu.at(1, 0) = -zu;
            wui = PolyMat::identity(2, nv);
            wui.at(1, 0) = zu;
            wv = PolyMat::identity(2, nv);
            wv.at(0, 1) = -yu;
            wvi = PolyMat::identity(2, nv);
            wvi.at(0, 1) = yu;
            Poly fu = f * u.inverse();
            new_blocks.push_back({Poly::constant(u, nv), fu, false});
            new_blocks.push_back({-fu, Poly::constant(-u, nv), true});
        } else {
            // b is the constant unit
            Scalar w = b.b.constant_term();
            Poly zw = z * w.inverse(), yw = y * w.inverse();
            wu = PolyMat::identity(2, nv);
            wu.at(0, 1) = yw;
            wui = PolyMat::identity(2, nv);
            wui.at(0, 1) = -yw;
            wv = PolyMat::identity(2, nv);
            wv.at(1, 0) = zw;
            wvi = PolyMat::identity(2, nv);
            wvi.at(1, 0) = -zw;
            Poly fw = f * w.inverse();
            new_blocks.push_back({fw, Poly::constant(w, nv), true});
            new_blocks.push_back({Poly::constant(-w, nv), -fw, false});
        }
        WU = PolyMat::direct_sum(WU, wu);
        WV = PolyMat::direct_sum(WV, wv);
        WUinv = PolyMat::direct_sum(WUinv, wui);
        WVinv = PolyMat::direct_sum(WVinv, wvi);
    }
    (void)one;

    PairSplit out;
    out.U = WU * U2;
    out.V = V2 * WV;
    out.Uinv = U2inv * WUinv;
    out.Vinv = WVinv * V2inv;
    if (split.core) out.core = knorrer(*split.core);
    out.blocks = std::move(new_blocks);
    return out;
}

Poly inverse_in_quotient(const Poly& u, const RingCtx& ctx) {
    Poly un = nf(u, ctx);
    Scalar c = un.eval_at_zero();
    if (c.is_zero())
        throw std::domain_error("inverse_in_quotient: not a unit (zero constant term)");
    size_t nv = ctx.nvars();
    Poly one = Poly::constant(Scalar(1), nv);
    Poly g = one - un * c.inverse();  // in the maximal ideal
    g = nf(g, ctx);
    long cap = 4 * std::max<long>(ctx.f.max_weighted_degree(ctx.weights),
                                  std::max<long>(1, un.max_weighted_degree(ctx.weights)));
    Poly acc = one, pow = g;
    for (long k = 0; k <= cap; ++k) {
        Poly cand = acc * c.inverse();
        if (nf(un * cand - one, ctx).is_zero()) return nf(cand, ctx);
        acc += pow;
        pow = nf(pow * g, ctx);
    }
    throw std::domain_error("inverse_in_quotient: series did not stabilize below degree cap");
}

MinimizeResult minimize(const MatFac& mf) {
    const RingCtx& ctx = mf.ctx;
    PairSplit s = split_constant_units(mf);

    bool more_units = false;
    if (s.core) {
        for (size_t i = 0; i < s.core->size() && !more_units; ++i)
            for (size_t j = 0; j < s.core->size(); ++j)
                if (has_unit_constant_term(nf(s.core->A.at(i, j), ctx)) ||
                    has_unit_constant_term(nf(s.core->B.at(i, j), ctx))) {
                    more_units = true;
                    break;
                }
    }

    if (more_units) {
        // Non-constant unit pivots: reduce with quotient-ring arithmetic.
        PairReducer red(*s.core);
        size_t m = s.core->size();
        std::vector<TrivialBlock> extra;
        while (m > 0) {
            red.normalize(ctx);
            PivotPos piv = find_pivot(red.Acur, red.Bcur, m, [](const Poly& p) {
                return !p.eval_at_zero().is_zero();
            });
            if (!piv.found) break;
            const Poly& pv = (piv.in_a ? red.Acur : red.Bcur).at(piv.i, piv.j);
            Poly w = inverse_in_quotient(pv, ctx);
            if (piv.in_a) {
                for (size_t k = 0; k < m; ++k)
                    if (k != piv.i && !red.Acur.at(k, piv.j).is_zero())
                        red.a_row_axpy(k, piv.i, nf(-(red.Acur.at(k, piv.j) * w), ctx));
                for (size_t l = 0; l < m; ++l)
                    if (l != piv.j && !red.Acur.at(piv.i, l).is_zero())
                        red.a_col_axpy(l, piv.j, nf(-(red.Acur.at(piv.i, l) * w), ctx));
                red.a_row_swap(piv.i, m - 1);
                red.a_col_swap(piv.j, m - 1);
            } else {
                for (size_t k = 0; k < m; ++k)
                    if (k != piv.i && !red.Bcur.at(k, piv.j).is_zero())
                        red.b_row_axpy(k, piv.i, nf(-(red.Bcur.at(k, piv.j) * w), ctx));
                for (size_t l = 0; l < m; ++l)
                    if (l != piv.j && !red.Bcur.at(piv.i, l).is_zero())
                        red.b_col_axpy(l, piv.j, nf(-(red.Bcur.at(piv.i, l) * w), ctx));
                red.b_row_swap(piv.i, m - 1);
                red.b_col_swap(piv.j, m - 1);
            }
            red.normalize(ctx);
            for (size_t k = 0; k + 1 < m; ++k) {
                if (!red.Acur.at(k, m - 1).is_zero() || !red.Acur.at(m - 1, k).is_zero() ||
                    !red.Bcur.at(k, m - 1).is_zero() || !red.Bcur.at(m - 1, k).is_zero())
                    throw std::domain_error("minimize: reduction left a non-split block");
            }
            extra.insert(extra.begin(), TrivialBlock{red.Acur.at(m - 1, m - 1),
                                                     red.Bcur.at(m - 1, m - 1), !piv.in_a});
            --m;
        }
        // Fold the second stage into the first stage's transform.
        size_t nv = ctx.nvars();
        size_t m0 = s.core->size();
        auto pad = [&](const PolyMat& inner) {
            PolyMat full = PolyMat::identity(m0 + s.blocks.size(), nv);
            for (size_t i = 0; i < m0; ++i)
                for (size_t j = 0; j < m0; ++j) full.at(i, j) = inner.at(i, j);
            return full;
        };
        s.U = (pad(red.U) * s.U).nf_entries(ctx);
        s.V = (s.V * pad(red.V)).nf_entries(ctx);
        s.Uinv = (s.Uinv * pad(red.Uinv)).nf_entries(ctx);
        s.Vinv = (pad(red.Vinv) * s.Vinv).nf_entries(ctx);
        std::vector<TrivialBlock> blocks = extra;
        for (auto& b : s.blocks) blocks.push_back(b);
        s.blocks = std::move(blocks);
        if (m > 0) {
            std::vector<size_t> keep;
            for (size_t i = 0; i < m; ++i) keep.push_back(i);
            s.core = MatFac{ctx, red.Acur.submatrix(keep, keep),
                            red.Bcur.submatrix(keep, keep), "min(" + mf.label + ")"};
        } else {
            s.core.reset();
        }
    }

    MinimizeResult out;
    out.split = s;
    if (s.core) {
        out.reduced = *s.core;
        out.reduced.label = "min(" + mf.label + ")";
        ValidationResult v = validate(out.reduced);
        if (!v.ok)
            throw std::domain_error(
                "minimize: reduced pair is not an exact factorization (non-constant units)");
    } else {
        out.reduced = MatFac{ctx, PolyMat(0, 0), PolyMat(0, 0), "min(" + mf.label + ")"};
    }
    for (const auto& b : s.blocks) {
        if (b.frees_summand)
            ++out.removed_free;
        else
            ++out.removed;
    }
    return out;
}

bool check_equivalence(const MatFac& m, const MatFac& m_prime, const PolyMat& U,
                       const PolyMat& V) {
    if (m.ctx != m_prime.ctx) throw std::invalid_argument("check_equivalence: context mismatch");
    if (U.rows() != U.cols() || V.rows() != V.cols() || U.cols() != m.size() ||
        V.rows() != m.size() || U.rows() != m_prime.size() || V.cols() != m_prime.size())
        throw std::invalid_argument("check_equivalence: size mismatch");
    const RingCtx& ctx = m.ctx;
    PolyMat lhs = (U * m.A * V).nf_entries(ctx);
    PolyMat rhs = m_prime.A.nf_entries(ctx);
    if (lhs != rhs) return false;
    if (det_constant_term(U).is_zero()) return false;
    if (det_constant_term(V).is_zero()) return false;
    return true;
}

} // namespace mfkit
