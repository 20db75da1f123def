#include "mfkit/catalog.hpp"

#include <algorithm>

namespace mfkit {

namespace {

Poly pp(const RingCtx& ctx, const std::string& s) { return parse_poly(s, ctx.vars); }

PolyMat mat(const RingCtx& ctx, const std::vector<std::vector<std::string>>& rows) {
    PolyMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = pp(ctx, rows[i][j]);
    return m;
}

MatFac pair_of(const RingCtx& ctx, const std::vector<std::vector<std::string>>& A,
               const std::vector<std::vector<std::string>>& B, const std::string& label) {
    MatFac mf = make_matfac(ctx, mat(ctx, A), mat(ctx, B), label);
    require_valid(mf);
    return mf;
}

CatalogEntry make_entry(MatFac mf, std::vector<std::string> locus) {
    CatalogEntry e;
    e.label = mf.label;
    auto shifts = infer_shifts(mf.A, mf.ctx);
    if (!shifts) throw std::logic_error("catalog entry '" + mf.label + "' is ungradable");
    e.row_shifts = shifts->row;
    e.col_shifts = shifts->col;
    e.mf = std::move(mf);
    e.declared_locus = std::move(locus);
    return e;
}

/// Signed permutations (P, Q) with P*core_A*Q = want_A and the matching
/// B-side identity, used to rotate an elimination core onto the catalog
/// representative. Returns false when no signed permutation works.
bool match_core_to(PairSplit& s, const MatFac& want) {
    if (!s.core || s.core->size() != want.size()) return false;
    if (s.core->A == want.A && s.core->B == want.B) {
        s.core->label = want.label;
        return true;
    }
    size_t n = want.size(), nv = want.ctx.nvars();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<size_t>> perms;
    do perms.push_back(perm); while (std::next_permutation(perm.begin(), perm.end()));
    auto signed_perms = [&]() {
        std::vector<PolyMat> out;
        for (const auto& pr : perms)
            for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
                PolyMat m(n, n);
                for (size_t i = 0; i < n; ++i)
                    m.at(i, pr[i]) =
                        Poly::constant(Scalar((mask >> i) & 1 ? -1 : 1), nv);
                out.push_back(std::move(m));
            }
        return out;
    }();
    for (const PolyMat& P : signed_perms)
        for (const PolyMat& Q : signed_perms) {
            if (P * s.core->A * Q != want.A) continue;
            // the inverse of a signed permutation is its transpose
            PolyMat Pinv = P.transposed();
            PolyMat Qinv = Q.transposed();
            if (Qinv * s.core->B * Pinv != want.B) continue;
            size_t t = s.blocks.size();
            PolyMat Et = PolyMat::identity(t, nv);
            s.U = PolyMat::direct_sum(P, Et) * s.U;
            s.Uinv = s.Uinv * PolyMat::direct_sum(Pinv, Et);
            s.V = s.V * PolyMat::direct_sum(Q, Et);
            s.Vinv = PolyMat::direct_sum(Qinv, Et) * s.Vinv;
            s.core = want;
            return true;
        }
    return false;
}

/// Diagram certificate with the canonical split columns [E;0] / [0,E];
/// proj_sign adjusts the q-component so the quotient is the catalog pair.
SESCert make_diagram_cert(const MatFac& sub, const MatFac& mid, const MatFac& quot,
                          int proj_sign, const std::string& name,
                          const std::string& core_label,
                          const MatFac* expected_core = nullptr) {
    const RingCtx& ctx = mid.ctx;
    size_t a = sub.size(), b = quot.size(), nv = ctx.nvars();
    if (a + b != mid.size())
        throw std::invalid_argument("make_diagram_cert: sizes do not add up for " + name);
    SESCert c;
    c.name = name;
    c.sub = sub;
    c.mid = mid;
    c.quot = quot;
    PolyMat Ea = PolyMat::identity(a, nv), Eb = PolyMat::identity(b, nv);
    Poly s = Poly::constant(Scalar(proj_sign), nv);
    c.inc_p = PolyMat::vstack(Ea, PolyMat::zero(b, a));
    c.inc_q = c.inc_p;
    c.proj_p = PolyMat::hstack(PolyMat::zero(b, a), Eb);
    c.proj_q = c.proj_p.scaled(s);
    c.retr_p = PolyMat::hstack(Ea, PolyMat::zero(a, b));
    c.retr_q = c.retr_p;
    c.sect_p = PolyMat::vstack(PolyMat::zero(a, b), Eb);
    c.sect_q = c.sect_p.scaled(s);
    c.mid_core_label = core_label;
    if (core_label == mid.label) {
        c.mid_split = identity_split(mid);
        c.free_rank = 0;
    } else {
        c.mid_split = split_constant_units(mid);
        if (expected_core && !match_core_to(c.mid_split, *expected_core))
            throw std::logic_error(name + ": cannot rotate split core onto " + core_label);
        c.free_rank = c.mid_split.free_rank();
    }
    SESVerdict v = verify_ses_cert(c);
    if (!v.ok) throw std::logic_error("shipped certificate fails: " + v.detail);
    return c;
}

void expect_core(const SESCert& c, const Catalog& cat) {
    if (c.mid_core_label.empty()) {
        if (c.mid_split.core)
            throw std::logic_error(c.name + ": expected a fully trivial middle split");
        return;
    }
    if (c.mid_core_label == c.mid.label) return;
    if (!c.mid_split.core)
        throw std::logic_error(c.name + ": split lost its core");
    const CatalogEntry& want = cat.entry(c.mid_core_label);
    if (c.mid_split.core->A != want.mf.A || c.mid_split.core->B != want.mf.B)
        throw std::logic_error(c.name + ": split core does not match entry " +
                               c.mid_core_label);
}

void relabel_from_catalog(SESCert& c, const Catalog& cat) {
    for (MatFac* mf : {&c.sub, &c.quot, &c.mid}) {
        for (const auto& e : cat.entries)
            if (e.mf.size() == mf->size() && e.mf.A == mf->A && e.mf.B == mf->B) {
                mf->label = e.label;
                break;
            }
    }
}

IsoCert make_iso(const Catalog& cat, const std::string& from, const std::string& to,
                 PolyMat U, PolyMat V) {
    const MatFac& src = cat.entry(from).mf;
    const MatFac& dst = cat.entry(to).mf;
    PolyMat Uinv = inverse_scalar_det(U), Vinv = inverse_scalar_det(V);
    if (U * src.A * V != dst.A || Vinv * src.B * Uinv != dst.B)
        throw std::logic_error("isomorphism certificate " + from + " ~ " + to +
                               " fails exactly");
    return IsoCert{from, to, std::move(U), std::move(V), std::move(Uinv), std::move(Vinv)};
}

std::string nstr(int n) { return std::to_string(n); }

void build_a1(Catalog& cat) {
    const RingCtx& ctx = cat.ctx;
    cat.entries.push_back(make_entry(trivial_free(ctx), {}));
    cat.entries.push_back(make_entry(pair_of(ctx, {{"x0"}}, {{"x0"}}, "R/(x0)"), {"p", "m"}));
    auto phi = [&](int n, const std::string& label) {
        return pair_of(ctx, {{"x0", "x1^" + nstr(n)}, {"0", "-x0"}},
                       {{"x0", "x1^" + nstr(n)}, {"0", "-x0"}}, label);
    };
    for (int n = 1; n <= cat.n_max; ++n)
        cat.entries.push_back(make_entry(phi(n, "phi:" + nstr(n)), {"m"}));

    const MatFac& x = cat.entry("R/(x0)").mf;
    for (int n = 0; n <= cat.n_max; ++n) {
        std::string label = "phi:" + nstr(n);
        MatFac mid = phi(n, label);
        CatalogSequence s;
        s.diagram = "phi";
        s.n = n;
        s.cert = make_diagram_cert(x, mid, x, -1, ctx.name() + " phi@" + nstr(n),
                                   n == 0 ? "" : label);
        s.dominates_free = n == 0;
        expect_core(s.cert, cat);
        cat.sequences.push_back(std::move(s));
    }
}

void build_d1(Catalog& cat) {
    const RingCtx& ctx = cat.ctx;
    cat.entries.push_back(make_entry(trivial_free(ctx), {}));
    cat.entries.push_back(
        make_entry(pair_of(ctx, {{"x0"}}, {{"x0*x1"}}, "R/(x0)"), {"p", "m"}));
    cat.entries.push_back(
        make_entry(pair_of(ctx, {{"x0*x1"}}, {{"x0"}}, "R/(x0x1)"), {"p", "m"}));
    cat.entries.push_back(make_entry(pair_of(ctx, {{"x0^2"}}, {{"x1"}}, "R/(x0^2)"), {"m"}));
    cat.entries.push_back(make_entry(pair_of(ctx, {{"x1"}}, {{"x0^2"}}, "R/(x1)"), {"m"}));

    auto phi_plus = [&](int n, const std::string& label) {
        return pair_of(ctx, {{"x0", "x1^" + nstr(n)}, {"0", "-x0"}},
                       {{"x0*x1", "x1^" + nstr(n + 1)}, {"0", "-x0*x1"}}, label);
    };
    auto psi_plus = [&](int n, const std::string& label) {
        return pair_of(ctx, {{"x0*x1", "x1^" + nstr(n)}, {"0", "-x0"}},
                       {{"x0", "x1^" + nstr(n)}, {"0", "-x0*x1"}}, label);
    };
    for (int n = 1; n <= cat.n_max; ++n) {
        cat.entries.push_back(make_entry(phi_plus(n, "phi+:" + nstr(n)), {"m"}));
        cat.entries.push_back(
            make_entry(syzygy(phi_plus(n, "")), {"m"}));
        cat.entries.back().label = "phi-:" + nstr(n);
        cat.entries.back().mf.label = "phi-:" + nstr(n);
        cat.entries.push_back(make_entry(psi_plus(n, "psi+:" + nstr(n)), {"m"}));
        cat.entries.push_back(make_entry(syzygy(psi_plus(n, "")), {"m"}));
        cat.entries.back().label = "psi-:" + nstr(n);
        cat.entries.back().mf.label = "psi-:" + nstr(n);
    }

    const MatFac& x = cat.entry("R/(x0)").mf;
    const MatFac& ox = cat.entry("R/(x0x1)").mf;

    // 0 -> R/(x0x1) -> R -> R/(x0) -> 0, realized on the degenerate psi pair
    {
        CatalogSequence s;
        s.diagram = "psi";
        s.n = 0;
        s.dominates_free = true;
        s.cert = make_diagram_cert(ox, psi_plus(0, "psi:0"), x, -1, ctx.name() + " psi@0", "");
        expect_core(s.cert, cat);
        cat.sequences.push_back(std::move(s));
    }
    // 0 -> R/(x0) -> R/(x0^2) -> R/(x0) -> 0 and its shift with R/(x1) (+) R
    {
        CatalogSequence s;
        s.diagram = "phi";
        s.n = 0;
        s.cert = make_diagram_cert(x, phi_plus(0, "phi:0"), x, -1, ctx.name() + " phi@0",
                                   "R/(x0^2)", &cat.entry("R/(x0^2)").mf);
        expect_core(s.cert, cat);
        CatalogSequence sh;
        sh.diagram = "phi";
        sh.n = 0;
        sh.shifted = true;
        sh.cert = syzygy_shift_cert(s.cert);
        sh.cert.mid_core_label = "R/(x1)";
        if (sh.cert.mid_split.core) sh.cert.mid_split.core->label = "R/(x1)";
        expect_core(sh.cert, cat);
        cat.sequences.push_back(std::move(s));
        cat.sequences.push_back(std::move(sh));
    }
    for (int n = 1; n <= cat.n_max; ++n) {
        CatalogSequence s;
        s.diagram = "phi";
        s.n = n;
        s.cert = make_diagram_cert(x, cat.entry("phi+:" + nstr(n)).mf, x, -1,
                                   ctx.name() + " phi@" + nstr(n), "phi+:" + nstr(n));
        CatalogSequence sh;
        sh.diagram = "phi";
        sh.n = n;
        sh.shifted = true;
        sh.cert = syzygy_shift_cert(s.cert);
        sh.cert.mid_core_label = "phi-:" + nstr(n);
        if (sh.cert.mid_split.core) sh.cert.mid_split.core->label = "phi-:" + nstr(n);
        sh.cert.mid.label = "phi-:" + nstr(n);
        cat.sequences.push_back(std::move(s));
        cat.sequences.push_back(std::move(sh));

        CatalogSequence t;
        t.diagram = "psi";
        t.n = n;
        t.cert = make_diagram_cert(ox, cat.entry("psi+:" + nstr(n)).mf, x, -1,
                                   ctx.name() + " psi@" + nstr(n), "psi+:" + nstr(n));
        CatalogSequence th;
        th.diagram = "psi";
        th.n = n;
        th.shifted = true;
        th.cert = syzygy_shift_cert(t.cert);
        th.cert.mid_core_label = "psi-:" + nstr(n);
        if (th.cert.mid_split.core) th.cert.mid_split.core->label = "psi-:" + nstr(n);
        th.cert.mid.label = "psi-:" + nstr(n);
        cat.sequences.push_back(std::move(t));
        cat.sequences.push_back(std::move(th));
    }
}

void build_a2(Catalog& cat) {
    const RingCtx& ctx = cat.ctx;
    cat.entries.push_back(make_entry(trivial_free(ctx), {}));
    cat.entries.push_back(make_entry(pair_of(ctx, {{"x0"}}, {{"x2"}}, "R/(x0)"), {"p", "m"}));
    cat.entries.push_back(make_entry(pair_of(ctx, {{"x2"}}, {{"x0"}}, "R/(x2)"), {"p", "m"}));
    auto phi_plus = [&](int n, const std::string& label) {
        return pair_of(ctx, {{"x2", "x1^" + nstr(n)}, {"0", "x0"}},
                       {{"x0", "-x1^" + nstr(n)}, {"0", "x2"}}, label);
    };
    for (int n = 1; n <= cat.n_max; ++n) {
        cat.entries.push_back(make_entry(phi_plus(n, "phi+:" + nstr(n)), {"m"}));
        cat.entries.push_back(make_entry(syzygy(phi_plus(n, "")), {"m"}));
        cat.entries.back().label = "phi-:" + nstr(n);
        cat.entries.back().mf.label = "phi-:" + nstr(n);
    }

    const MatFac& x = cat.entry("R/(x0)").mf;
    const MatFac& ox = cat.entry("R/(x2)").mf;
    {
        CatalogSequence s;
        s.diagram = "phi";
        s.n = 0;
        s.dominates_free = true;
        s.cert = make_diagram_cert(ox, phi_plus(0, "phi:0"), x, 1, ctx.name() + " phi@0", "");
        expect_core(s.cert, cat);
        cat.sequences.push_back(std::move(s));
    }
    for (int n = 1; n <= cat.n_max; ++n) {
        CatalogSequence s;
        s.diagram = "phi";
        s.n = n;
        s.cert = make_diagram_cert(ox, cat.entry("phi+:" + nstr(n)).mf, x, 1,
                                   ctx.name() + " phi@" + nstr(n), "phi+:" + nstr(n));
        CatalogSequence sh;
        sh.diagram = "phi";
        sh.n = n;
        sh.shifted = true;
        sh.cert = syzygy_shift_cert(s.cert);
        sh.cert.mid_core_label = "phi-:" + nstr(n);
        if (sh.cert.mid_split.core) sh.cert.mid_split.core->label = "phi-:" + nstr(n);
        sh.cert.mid.label = "phi-:" + nstr(n);
        cat.sequences.push_back(std::move(s));
        cat.sequences.push_back(std::move(sh));
    }
}

void build_d2(Catalog& cat) {
    const RingCtx& ctx = cat.ctx;
    cat.entries.push_back(make_entry(trivial_free(ctx), {}));
    auto alpha_plus = pair_of(ctx, {{"x2", "x0*x1"}, {"x0", "x2"}},
                              {{"-x2", "x0*x1"}, {"x0", "-x2"}}, "alpha+");
    cat.entries.push_back(make_entry(alpha_plus, {"p", "m"}));
    cat.entries.push_back(make_entry(syzygy(alpha_plus), {"p", "m"}));
    cat.entries.back().label = "alpha-";
    cat.entries.back().mf.label = "alpha-";
    auto beta_plus = pair_of(ctx, {{"x0^2", "x2"}, {"x2", "x1"}},
                             {{"x1", "-x2"}, {"-x2", "x0^2"}}, "beta+");
    cat.entries.push_back(make_entry(beta_plus, {"m"}));
    cat.entries.push_back(make_entry(syzygy(beta_plus), {"m"}));
    cat.entries.back().label = "beta-";
    cat.entries.back().mf.label = "beta-";

    auto phi_plus = [&](int n, const std::string& label) {
        std::string xn = "x1^" + nstr(n), xn1 = "x1^" + nstr(n + 1);
        return pair_of(ctx,
                       {{"x2", "x0*x1", "0", "-" + xn1},
                        {"x0", "x2", xn, "0"},
                        {"0", "0", "x2", "x0*x1"},
                        {"0", "0", "x0", "x2"}},
                       {{"-x2", "x0*x1", "0", "-" + xn1},
                        {"x0", "-x2", xn, "0"},
                        {"0", "0", "-x2", "x0*x1"},
                        {"0", "0", "x0", "-x2"}},
                       label);
    };
    auto psi_plus = [&](int n, const std::string& label) {
        std::string xn = "x1^" + nstr(n);
        return pair_of(ctx,
                       {{"x2", "x0*x1", "-" + xn, "0"},
                        {"x0", "x2", "0", xn},
                        {"0", "0", "x2", "x0*x1"},
                        {"0", "0", "x0", "x2"}},
                       {{"-x2", "x0*x1", "-" + xn, "0"},
                        {"x0", "-x2", "0", xn},
                        {"0", "0", "-x2", "x0*x1"},
                        {"0", "0", "x0", "-x2"}},
                       label);
    };
    for (int n = 1; n <= cat.n_max; ++n) {
        cat.entries.push_back(make_entry(phi_plus(n, "phi+:" + nstr(n)), {"m"}));
        cat.entries.push_back(make_entry(syzygy(phi_plus(n, "")), {"m"}));
        cat.entries.back().label = "phi-:" + nstr(n);
        cat.entries.back().mf.label = "phi-:" + nstr(n);
        cat.entries.push_back(make_entry(psi_plus(n, "psi+:" + nstr(n)), {"m"}));
        cat.entries.push_back(make_entry(syzygy(psi_plus(n, "")), {"m"}));
        cat.entries.back().label = "psi-:" + nstr(n);
        cat.entries.back().mf.label = "psi-:" + nstr(n);
    }

    const MatFac& xp = cat.entry("alpha+").mf;
    const MatFac& xm = cat.entry("alpha-").mf;

    // 0 -> Cok(alpha-) -> R^2 -> Cok(alpha+) -> 0 via the cone of the identity
    {
        size_t nv = ctx.nvars();
        PolyMat E2 = PolyMat::identity(2, nv), Z2 = PolyMat::zero(2, 2);
        PolyMat coneA = PolyMat::block2x2(-xm.B, Z2, E2, xm.A);
        PolyMat coneB = PolyMat::block2x2(-xm.A, Z2, E2, xm.B);
        MatFac cone = make_matfac(ctx, coneA, coneB, "cone");
        require_valid(cone);
        CatalogSequence s;
        s.diagram = "cone";
        s.n = 0;
        s.dominates_free = true;
        SESCert c;
        c.name = ctx.name() + " cone";
        c.sub = xm;
        c.mid = cone;
        c.quot = xp;
        c.inc_p = PolyMat::vstack(Z2, E2);
        c.inc_q = c.inc_p;
        c.proj_p = PolyMat::hstack(E2, Z2);
        c.proj_q = -c.proj_p;
        c.retr_p = PolyMat::hstack(Z2, E2);
        c.retr_q = c.retr_p;
        c.sect_p = PolyMat::vstack(E2, Z2);
        c.sect_q = -c.sect_p;
        c.mid_split = split_constant_units(cone);
        c.free_rank = c.mid_split.free_rank();
        c.mid_core_label = "";
        SESVerdict v = verify_ses_cert(c);
        if (!v.ok) throw std::logic_error("cone certificate fails: " + v.detail);
        if (c.free_rank != 2) throw std::logic_error("cone certificate free rank != 2");
        s.cert = std::move(c);
        expect_core(s.cert, cat);
        cat.sequences.push_back(std::move(s));
    }

    // 0 -> Cok(alpha+) -> Cok(beta+) (+) R -> Cok(alpha+) -> 0 (phi at n=0)
    {
        CatalogSequence s;
        s.diagram = "phi";
        s.n = 0;
        s.cert = make_diagram_cert(xp, phi_plus(0, "phi:0"), xp, 1, ctx.name() + " phi@0",
                                   "beta+", &cat.entry("beta+").mf);
        expect_core(s.cert, cat);
        CatalogSequence sh;
        sh.diagram = "phi";
        sh.n = 0;
        sh.shifted = true;
        sh.cert = syzygy_shift_cert(s.cert);
        sh.cert.mid_core_label = "beta-";
        if (sh.cert.mid_split.core) sh.cert.mid_split.core->label = "beta-";
        expect_core(sh.cert, cat);
        cat.sequences.push_back(std::move(s));
        cat.sequences.push_back(std::move(sh));
    }
    for (int n = 1; n <= cat.n_max; ++n) {
        for (const char* dg : {"phi", "psi"}) {
            std::string plus = std::string(dg) + "+:" + nstr(n);
            std::string minus = std::string(dg) + "-:" + nstr(n);
            CatalogSequence s;
            s.diagram = dg;
            s.n = n;
            s.cert = make_diagram_cert(xp, cat.entry(plus).mf, xp, 1,
                                       ctx.name() + " " + dg + "@" + nstr(n), plus);
            CatalogSequence sh;
            sh.diagram = dg;
            sh.n = n;
            sh.shifted = true;
            sh.cert = syzygy_shift_cert(s.cert);
            sh.cert.mid_core_label = minus;
            if (sh.cert.mid_split.core) sh.cert.mid_split.core->label = minus;
            sh.cert.mid.label = minus;
            cat.sequences.push_back(std::move(s));
            cat.sequences.push_back(std::move(sh));
        }
    }

    // isomorphism certificates between the +/- presentations
    auto diag = [&](std::vector<int> signs) {
        PolyMat m(signs.size(), signs.size());
        for (size_t i = 0; i < signs.size(); ++i)
            m.at(i, i) = Poly::constant(Scalar(signs[i]), ctx.nvars());
        return m;
    };
    cat.isos.push_back(make_iso(cat, "alpha+", "alpha-", diag({1, -1}), diag({-1, 1})));
    cat.isos.push_back(make_iso(cat, "beta+", "beta-", mat(ctx, {{"0", "1"}, {"-1", "0"}}),
                                mat(ctx, {{"0", "-1"}, {"1", "0"}})));
    for (int n = 1; n <= cat.n_max; ++n) {
        cat.isos.push_back(make_iso(cat, "phi+:" + nstr(n), "phi-:" + nstr(n),
                                    diag({1, -1, 1, -1}), diag({-1, 1, -1, 1})));
        cat.isos.push_back(make_iso(cat, "psi+:" + nstr(n), "psi-:" + nstr(n),
                                    diag({1, -1, -1, 1}), diag({-1, 1, 1, -1})));
    }
}

CatalogEntry lift_entry(const CatalogEntry& base, const RingCtx& ext) {
    if (base.label == "R") {
        CatalogEntry e = make_entry(trivial_free(ext), {});
        return e;
    }
    MatFac lifted = knorrer(base.mf);
    if (lifted.ctx != ext) throw std::logic_error("lift_entry: context mismatch");
    lifted.label = base.label;
    // entries with no unit entries stay minimal under the doubling
    for (size_t i = 0; i < lifted.size(); ++i)
        for (size_t j = 0; j < lifted.size(); ++j)
            if (!lifted.A.at(i, j).eval_at_zero().is_zero() ||
                !lifted.B.at(i, j).eval_at_zero().is_zero())
                throw std::logic_error("lift_entry: unexpected unit entry in " + base.label);
    CatalogEntry e = make_entry(std::move(lifted), base.declared_locus);
    return e;
}

void lift_catalog(const Catalog& base, Catalog& out) {
    for (const auto& e : base.entries) out.entries.push_back(lift_entry(e, out.ctx));
    for (const auto& s : base.sequences) {
        CatalogSequence t;
        t.diagram = s.diagram;
        t.n = s.n;
        t.shifted = s.shifted;
        t.dominates_free = s.dominates_free;
        t.cert = knorrer_lift_cert(s.cert);
        t.cert.name = out.ctx.name() + " " + s.diagram + "@" + nstr(s.n) +
                      (s.shifted ? " (shifted)" : "");
        t.cert.sub.label = s.cert.sub.label;
        t.cert.mid.label = s.cert.mid.label;
        t.cert.quot.label = s.cert.quot.label;
        if (t.cert.mid_split.core) t.cert.mid_split.core->label = s.cert.mid_core_label;
        out.sequences.push_back(std::move(t));
    }
    size_t nv = out.ctx.nvars();
    for (const auto& iso : base.isos) {
        PolyMat U = PolyMat::direct_sum(iso.U.embedded(nv), iso.Vinv.embedded(nv));
        PolyMat V = PolyMat::direct_sum(iso.V.embedded(nv), iso.Uinv.embedded(nv));
        PolyMat Uinv = PolyMat::direct_sum(iso.Uinv.embedded(nv), iso.V.embedded(nv));
        PolyMat Vinv = PolyMat::direct_sum(iso.Vinv.embedded(nv), iso.U.embedded(nv));
        const MatFac& src = out.entry(iso.from).mf;
        const MatFac& dst = out.entry(iso.to).mf;
        if (U * src.A * V != dst.A || Vinv * src.B * Uinv != dst.B)
            throw std::logic_error("lifted isomorphism certificate fails: " + iso.from);
        out.isos.push_back(IsoCert{iso.from, iso.to, U, V, Uinv, Vinv});
    }
}

CatalogEntry transport_entry(const Transport& tr, const CatalogEntry& e) {
    CatalogEntry out = e;
    out.mf.ctx = tr.target;
    out.mf.A = e.mf.A.substituted(tr.images, tr.target.nvars());
    out.mf.B = e.mf.B.substituted(tr.images, tr.target.nvars());
    require_valid(out.mf);
    return out;
}

SESCert transport_cert(const Transport& tr, const SESCert& c) {
    auto sub = [&](const PolyMat& m) { return m.substituted(tr.images, tr.target.nvars()); };
    SESCert out = c;
    for (MatFac* mf : {&out.sub, &out.mid, &out.quot}) {
        mf->A = sub(mf->A);
        mf->B = sub(mf->B);
        mf->ctx = tr.target;
    }
    out.inc_p = sub(c.inc_p);
    out.inc_q = sub(c.inc_q);
    out.proj_p = sub(c.proj_p);
    out.proj_q = sub(c.proj_q);
    out.retr_p = sub(c.retr_p);
    out.retr_q = sub(c.retr_q);
    out.sect_p = sub(c.sect_p);
    out.sect_q = sub(c.sect_q);
    out.mid_split.U = sub(c.mid_split.U);
    out.mid_split.V = sub(c.mid_split.V);
    out.mid_split.Uinv = sub(c.mid_split.Uinv);
    out.mid_split.Vinv = sub(c.mid_split.Vinv);
    if (out.mid_split.core) {
        out.mid_split.core->A = sub(c.mid_split.core->A);
        out.mid_split.core->B = sub(c.mid_split.core->B);
        out.mid_split.core->ctx = tr.target;
    }
    for (auto& b : out.mid_split.blocks) {
        b.a = b.a.substitute(tr.images, tr.target.nvars());
        b.b = b.b.substitute(tr.images, tr.target.nvars());
    }
    return out;
}

} // namespace

const CatalogEntry& Catalog::entry(const std::string& label) const {
    for (const auto& e : entries)
        if (e.label == label) return e;
    throw std::invalid_argument("catalog has no entry '" + label + "' for " + ctx.name());
}

bool Catalog::has_entry(const std::string& label) const {
    for (const auto& e : entries)
        if (e.label == label) return true;
    return false;
}

Catalog build_catalog(const RingCtx& ctx, int n_max) {
    if (n_max < 1) throw std::invalid_argument("build_catalog: n_max must be >= 1");
    if (ctx.form == Form::X && ctx.d >= 2) {
        RingCtx uv = make_ring(ctx.family, ctx.d, Form::UV);
        Catalog base = build_catalog(uv, n_max);
        Transport tr = uv_to_x_transport(uv);
        if (tr.target != ctx) throw std::logic_error("build_catalog: transport target mismatch");
        Catalog out;
        out.ctx = ctx;
        out.n_max = n_max;
        for (const auto& e : base.entries) out.entries.push_back(transport_entry(tr, e));
        for (const auto& s : base.sequences) {
            CatalogSequence t = s;
            t.cert = transport_cert(tr, s.cert);
            t.cert.name = ctx.name() + ":x " + s.diagram + "@" + nstr(s.n) +
                          (s.shifted ? " (shifted)" : "");
            out.sequences.push_back(std::move(t));
        }
        for (const auto& iso : base.isos) {
            IsoCert t = iso;
            auto sb = [&](const PolyMat& m) { return m.substituted(tr.images, ctx.nvars()); };
            t.U = sb(iso.U);
            t.V = sb(iso.V);
            t.Uinv = sb(iso.Uinv);
            t.Vinv = sb(iso.Vinv);
            out.isos.push_back(std::move(t));
        }
        return out;
    }

    Catalog cat;
    cat.ctx = ctx;
    cat.n_max = n_max;
    if (ctx.d <= 2) {
        if (ctx.family == Family::AInf && ctx.d == 1)
            build_a1(cat);
        else if (ctx.family == Family::DInf && ctx.d == 1)
            build_d1(cat);
        else if (ctx.family == Family::AInf)
            build_a2(cat);
        else
            build_d2(cat);
        for (auto& s : cat.sequences) relabel_from_catalog(s.cert, cat);
        return cat;
    }
    RingCtx lower = make_ring(ctx.family, ctx.d - 2, Form::UV);
    Catalog base = build_catalog(lower, n_max);
    lift_catalog(base, cat);
    return cat;
}

std::vector<CatalogEntry> list_modules(const RingCtx& ctx, int n_max) {
    return build_catalog(ctx, n_max).entries;
}

std::pair<std::string, std::string> x_module_labels(Family family, int d) {
    int base = d % 2 == 1 ? 1 : 2;
    if (family == Family::AInf && base == 1) return {"R/(x0)", "R/(x0)"};
    if (family == Family::DInf && base == 1) return {"R/(x0)", "R/(x0x1)"};
    if (family == Family::AInf) return {"R/(x0)", "R/(x2)"};
    return {"alpha+", "alpha-"};
}

std::pair<CatalogEntry, CatalogEntry> x_module(const RingCtx& ctx) {
    Catalog cat = build_catalog(ctx, 1);
    auto [x, ox] = x_module_labels(ctx.family, ctx.d);
    return {cat.entry(x), cat.entry(ox)};
}

std::vector<SESCert> get_sequences(const RingCtx& ctx, int n_max) {
    Catalog cat = build_catalog(ctx, n_max);
    std::vector<SESCert> out;
    for (auto& s : cat.sequences) out.push_back(s.cert);
    return out;
}

SESCert dominating_sequence(const Catalog& cat, const std::string& label) {
    const CatalogEntry& e = cat.entry(label);
    auto [x, ox] = x_module_labels(cat.ctx.family, cat.ctx.d);
    if (label == x || label == ox)
        throw std::invalid_argument("dominating_sequence: " + label +
                                    " is not locally free on the punctured spectrum");
    if (!e.in_punctured_class())
        throw std::invalid_argument("dominating_sequence: " + label +
                                    " is not locally free on the punctured spectrum");
    if (label == "R") {
        for (const auto& s : cat.sequences)
            if (s.dominates_free) return s.cert;
        throw std::logic_error("dominating_sequence: no free-module certificate shipped");
    }
    for (const auto& s : cat.sequences) {
        if (s.cert.mid_core_label == label) return s.cert;
        if (s.cert.mid.label == label && s.cert.mid_core_label == label) return s.cert;
    }
    throw std::logic_error("dominating_sequence: no certificate covers " + label);
}

std::vector<PrimeSpec> nonfree_locus(const Catalog& cat, const CatalogEntry& entry) {
    std::vector<PrimeSpec> got = nonfree_locus_of(entry.mf);
    std::vector<std::string> names;
    for (const auto& p : got) names.push_back(p.name);
    std::vector<std::string> want = entry.declared_locus;
    std::sort(names.begin(), names.end());
    std::sort(want.begin(), want.end());
    if (names != want)
        throw std::runtime_error("nonfree_locus: computed locus of '" + entry.label +
                                 "' disagrees with the declared one");
    (void)cat;
    return got;
}

std::string quiver_shape_str(QuiverShape s) {
    switch (s) {
        case QuiverShape::AOdd: return "A-odd";
        case QuiverShape::DOdd: return "D-odd";
        case QuiverShape::AEven: return "A-even";
        case QuiverShape::DEven: return "D-even";
    }
    return "?";
}

QuiverDesc ar_quiver(const RingCtx& ctx, int n_max) {
    if (n_max < 2) throw std::invalid_argument("ar_quiver: n_max must be >= 2");
    QuiverDesc q;
    q.truncation = n_max;
    bool odd = ctx.d % 2 == 1;
    auto lbl = [&](const char* dg, int n, char sign) {
        return std::string(dg) + sign + ":" + nstr(n);
    };
    if (ctx.family == Family::AInf && odd) {
        q.shape = QuiverShape::AOdd;
        for (int n = 1; n <= n_max; ++n) q.vertices.push_back("phi:" + nstr(n));
        for (int i = 0; i + 1 < n_max; ++i) {
            q.arrows.push_back({static_cast<size_t>(i), static_cast<size_t>(i + 1)});
            q.arrows.push_back({static_cast<size_t>(i + 1), static_cast<size_t>(i)});
        }
        for (int i = 0; i < n_max; ++i)
            q.dotted.push_back({static_cast<size_t>(i), static_cast<size_t>(i)});
    } else if (ctx.family == Family::DInf && odd) {
        q.shape = QuiverShape::DOdd;
        std::vector<std::string> top{"R/(x0^2)"}, bot{"R/(x1)"};
        for (int n = 1; static_cast<int>(top.size()) < n_max; ++n) {
            top.push_back(lbl("phi", n, '+'));
            bot.push_back(lbl("phi", n, '-'));
            if (static_cast<int>(top.size()) < n_max) {
                top.push_back(lbl("psi", n, '+'));
                bot.push_back(lbl("psi", n, '-'));
            }
        }
        size_t k = top.size();
        q.vertices = top;
        q.vertices.insert(q.vertices.end(), bot.begin(), bot.end());
        for (size_t i = 0; i + 1 < k; ++i) {
            q.arrows.push_back({i, i + 1});              // along the top row
            q.arrows.push_back({k + i, k + i + 1});      // along the bottom row
            q.arrows.push_back({i + 1, k + i});          // crossing down
            q.arrows.push_back({k + i + 1, i});          // crossing up
        }
        for (size_t i = 0; i < k; ++i) q.dotted.push_back({i, k + i});
    } else if (ctx.family == Family::AInf) {
        q.shape = QuiverShape::AEven;
        for (int n = n_max; n >= 1; --n) q.vertices.push_back(lbl("phi", n, '-'));
        for (int n = 1; n <= n_max; ++n) q.vertices.push_back(lbl("phi", n, '+'));
        size_t k = static_cast<size_t>(n_max);
        for (size_t i = 0; i + 1 < k; ++i) {
            q.arrows.push_back({i, i + 1});
            q.arrows.push_back({i + 1, i});
            q.arrows.push_back({k + i, k + i + 1});
            q.arrows.push_back({k + i + 1, k + i});
        }
        for (size_t i = 0; i < 2 * k; ++i) q.dotted.push_back({i, i});
        q.dotted.push_back({k - 1, k});  // the two chains meet at a dotted pair
    } else {
        q.shape = QuiverShape::DEven;
        std::vector<std::string> row{"beta+"};
        for (int n = 1; static_cast<int>(row.size()) < n_max; ++n) {
            row.push_back(lbl("phi", n, '+'));
            if (static_cast<int>(row.size()) < n_max) row.push_back(lbl("psi", n, '+'));
        }
        q.vertices = row;
        for (size_t i = 0; i + 1 < row.size(); ++i) {
            q.arrows.push_back({i, i + 1});
            q.arrows.push_back({i + 1, i});
        }
        for (size_t i = 0; i < row.size(); ++i) q.dotted.push_back({i, i});
    }
    return q;
}

} // namespace mfkit
