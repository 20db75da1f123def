#include "mfkit/ring.hpp"

namespace mfkit {

std::string family_str(Family f) { return f == Family::AInf ? "A-inf" : "D-inf"; }
std::string form_str(Form f) { return f == Form::X ? "x" : "uv"; }

int RingCtx::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("RingCtx: no variable named " + name);
}

std::string RingCtx::name() const { return family_str(family) + ":" + std::to_string(d); }

namespace {

Poly sq(size_t idx, size_t n) {
    return Poly::term(Scalar(1), Monomial::var(idx, n, 2));
}

Poly base_polynomial(Family fam, int base_dim, size_t nvars) {
    size_t n = nvars;
    if (base_dim == 1) {
        // x0^2 resp. x0^2*x1 over (x0, x1)
        if (fam == Family::AInf) return sq(0, n);
        Monomial m(n);
        m.e[0] = 2;
        m.e[1] = 1;
        return Poly::term(Scalar(1), m);
    }
    // base_dim == 2: x0*x2 resp. x0^2*x1 - x2^2 over (x0, x1, x2)
    if (fam == Family::AInf) {
        Monomial m(n);
        m.e[0] = 1;
        m.e[2] = 1;
        return Poly::term(Scalar(1), m);
    }
    Monomial m(n);
    m.e[0] = 2;
    m.e[1] = 1;
    return Poly::term(Scalar(1), m) - sq(2, n);
}

} // namespace

RingCtx make_ring(Family family, int d, Form form) {
    if (d < 1) throw std::invalid_argument("make_ring: d must be >= 1");
    RingCtx ctx;
    ctx.family = family;
    ctx.d = d;
    ctx.form = form;
    const int pair_weight = family == Family::AInf ? 1 : 2;

    if (form == Form::X) {
        ctx.base_dim = std::min(d, 2);
        ctx.n_pairs = 0;
        ctx.canonical_uv = d == 1;  // the d=1 base has no quadratic tail
        for (int i = 0; i <= d; ++i) ctx.vars.push_back("x" + std::to_string(i));
        for (int i = 0; i <= d; ++i) {
            if (family == Family::AInf)
                ctx.weights.push_back(1);
            else
                ctx.weights.push_back(i == 0 ? 1 : 2);
        }
        size_t n = ctx.vars.size();
        if (family == Family::AInf) {
            ctx.f = sq(0, n);
        } else {
            Monomial m(n);
            m.e[0] = 2;
            m.e[1] = 1;
            ctx.f = Poly::term(Scalar(1), m);
        }
        for (int i = 2; i <= d; ++i) ctx.f += sq(i, n);
        return ctx;
    }

    // uv form
    ctx.base_dim = (d % 2 == 1) ? 1 : 2;
    ctx.n_pairs = (d - ctx.base_dim) / 2;
    ctx.canonical_uv = true;
    for (int i = 0; i <= ctx.base_dim; ++i) ctx.vars.push_back("x" + std::to_string(i));
    for (int j = 1; j <= ctx.n_pairs; ++j) {
        ctx.vars.push_back("u" + std::to_string(j));
        ctx.vars.push_back("v" + std::to_string(j));
    }
    for (int i = 0; i <= ctx.base_dim; ++i) {
        if (family == Family::AInf)
            ctx.weights.push_back(1);
        else
            ctx.weights.push_back(i == 0 ? 1 : 2);
    }
    for (int j = 0; j < 2 * ctx.n_pairs; ++j) ctx.weights.push_back(pair_weight);

    size_t n = ctx.vars.size();
    ctx.f = base_polynomial(family, ctx.base_dim, n);
    for (int j = 0; j < ctx.n_pairs; ++j) {
        size_t u = ctx.base_dim + 1 + 2 * j, v = u + 1;
        Monomial m(n);
        m.e[u] = 1;
        m.e[v] = 1;
        ctx.f += Poly::term(Scalar(1), m);
    }
    return ctx;
}

RingCtx knorrer_extend(const RingCtx& ctx) {
    RingCtx out = ctx;
    out.d = ctx.d + 2;
    out.form = Form::UV;
    out.n_pairs = ctx.n_pairs + 1;
    int j = out.n_pairs;
    out.vars.push_back("u" + std::to_string(j));
    out.vars.push_back("v" + std::to_string(j));
    const int pair_weight = ctx.family == Family::AInf ? 1 : 2;
    out.weights.push_back(pair_weight);
    out.weights.push_back(pair_weight);
    size_t n = out.vars.size();
    Monomial m(n);
    m.e[n - 2] = 1;
    m.e[n - 1] = 1;
    out.f = embed_poly(ctx.f, n) + Poly::term(Scalar(1), m);
    return out;
}

Poly embed_poly(const Poly& p, size_t target_nvars) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        if (m.nvars() > target_nvars)
            throw std::invalid_argument("embed_poly: shrinking variable set");
        Monomial mm(target_nvars);
        std::copy(m.e.begin(), m.e.end(), mm.e.begin());
        r.add_term(mm, c);
    }
    return r;
}

WDegree weighted_degree(const Poly& p, const RingCtx& ctx) {
    if (p.is_zero()) return {WDegree::Zero, 0};
    bool first = true;
    long deg = 0;
    for (const auto& [m, c] : p.terms()) {
        long dm = m.weighted_degree(ctx.weights);
        if (first) {
            deg = dm;
            first = false;
        } else if (dm != deg) {
            return {WDegree::Inhomogeneous, 0};
        }
    }
    return {WDegree::Homogeneous, deg};
}

Poly nf(const Poly& p, const RingCtx& ctx) {
    if (!p.is_zero() && p.nvars() != ctx.nvars())
        throw std::invalid_argument("nf: variable count mismatch");
    if (p.is_laurent()) throw std::invalid_argument("nf: Laurent input");
    const Monomial lt = ctx.f.leading_monomial(ctx.weights);
    const Scalar lc = ctx.f.coeff(lt);
    Poly r = p;
    while (true) {
        const Monomial* pick = nullptr;
        for (const auto& [m, c] : r.terms()) {
            if (!lt.divides(m)) continue;
            if (!pick || weighted_less(*pick, m, ctx.weights)) pick = &m;
        }
        if (!pick) return r;
        Monomial q = *pick / lt;
        Scalar c = r.coeff(*pick) / lc;
        r -= Poly::term(c, q) * ctx.f;
    }
}

Transport uv_to_x_transport(const RingCtx& uv_ctx) {
    if (!uv_ctx.canonical_uv)
        throw std::invalid_argument("uv_to_x_transport: context is not a canonical uv tower");
    RingCtx x = make_ring(uv_ctx.family, uv_ctx.d, Form::X);
    size_t n = x.nvars();
    std::vector<Poly> images(uv_ctx.nvars());
    const Scalar I = Scalar::imag_unit();

    auto xv = [&](int i) { return Poly::variable(static_cast<size_t>(i), n); };

    if (uv_ctx.base_dim == 1) {
        images[0] = xv(0);
        images[1] = xv(1);
    } else if (uv_ctx.family == Family::AInf) {
        // x0*x2 -> x0^2 + x2^2
        images[0] = xv(0) + xv(2) * I;
        images[1] = xv(1);
        images[2] = xv(0) - xv(2) * I;
    } else {
        // x0^2*x1 - x2^2 -> x0^2*x1 + x2^2
        images[0] = xv(0);
        images[1] = xv(1);
        images[2] = xv(2) * I;
    }
    for (int j = 0; j < uv_ctx.n_pairs; ++j) {
        size_t u = uv_ctx.base_dim + 1 + 2 * j;
        int a = uv_ctx.base_dim + 1 + 2 * j;  // x-form slot of the pair
        images[u] = xv(a) + xv(a + 1) * I;
        images[u + 1] = xv(a) - xv(a + 1) * I;
    }
    Poly fx = uv_ctx.f.substitute(images, n);
    if (fx != x.f)
        throw std::logic_error("uv_to_x_transport: presentation change does not hit f");
    return Transport{std::move(x), std::move(images)};
}

} // namespace mfkit
