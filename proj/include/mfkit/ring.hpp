#ifndef MFKIT_RING_HPP
#define MFKIT_RING_HPP

#include "mfkit/poly.hpp"

#include <string>
#include <vector>

namespace mfkit {

enum class Family { AInf, DInf };
enum class Form { X, UV };

std::string family_str(Family f);
std::string form_str(Form f);

/// Hypersurface context k[x...]/(f) for one of the two families.
///
/// x form is the flat presentation x0^2 (+ x1-free) + x2^2 + ... + xd^2,
/// resp. x0^2*x1 + x2^2 + ... + xd^2.  uv form is the tower presentation:
/// the 1- or 2-dimensional base polynomial plus hyperbolic pairs u_j*v_j,
/// which is the shape the doubling operator produces and the shape the
/// catalog matrices are written in.
struct RingCtx {
    Family family = Family::AInf;
    int d = 1;
    Form form = Form::X;
    bool canonical_uv = false;   // true when this equals make_ring(family,d,UV)
    int base_dim = 1;            // 1 or 2 (uv towers); equals min(d,2) for x form
    int n_pairs = 0;             // hyperbolic pairs appended to the base
    std::vector<std::string> vars;
    std::vector<int> weights;
    Poly f;

    size_t nvars() const { return vars.size(); }
    long f_degree() const { return family == Family::AInf ? 2 : 4; }
    int var_index(const std::string& name) const;

    bool operator==(const RingCtx& o) const {
        return family == o.family && d == o.d && form == o.form && vars == o.vars &&
               f == o.f;
    }
    bool operator!=(const RingCtx& o) const { return !(*this == o); }

    std::string name() const;   // e.g. "A-inf:3"
};

RingCtx make_ring(Family family, int d, Form form);

/// Appends one fresh hyperbolic pair: ctx for f + u*v over two new variables.
RingCtx knorrer_extend(const RingCtx& ctx);

/// Embeds a polynomial of a smaller variable set into ctx (new exponents 0).
Poly embed_poly(const Poly& p, size_t target_nvars);

struct WDegree {
    enum Kind { Zero, Homogeneous, Inhomogeneous } kind = Zero;
    long value = 0;
    bool operator==(const WDegree& o) const { return kind == o.kind && value == o.value; }
};

/// Common weighted degree of a quasi-homogeneous polynomial, or the
/// Inhomogeneous tag; zero polynomial gets the Zero tag.
WDegree weighted_degree(const Poly& p, const RingCtx& ctx);

/// Remainder of division by f under the weighted-graded-lex order: the
/// canonical residue-ring representative.  Rejects Laurent input.
Poly nf(const Poly& p, const RingCtx& ctx);

/// Change of variables between presentations of the same ring: the x-form
/// companion of a canonical uv context, with the substitution images
/// sending each uv variable to its x-form expression.
struct Transport {
    RingCtx target;
    std::vector<Poly> images;  // indexed by source variable
    Poly apply(const Poly& p) const { return p.substitute(images, target.nvars()); }
};
Transport uv_to_x_transport(const RingCtx& uv_ctx);

} // namespace mfkit

#endif
