#ifndef MFKIT_MATFAC_HPP
#define MFKIT_MATFAC_HPP

#include "mfkit/matrix.hpp"

#include <optional>
#include <string>

namespace mfkit {

/// Matrix factorization of f: square pair (A, B) with A*B = B*A = f*E as
/// exact polynomial identities. Size 0 is allowed (a fully split pair).
/// The attached module is Cok(A mod f).
struct MatFac {
    RingCtx ctx;
    PolyMat A, B;
    std::string label;

    size_t size() const { return A.rows(); }
};

MatFac make_matfac(RingCtx ctx, PolyMat A, PolyMat B, std::string label = "");

/// (f, 1): cokernel R, the rank-one free module.
MatFac trivial_free(const RingCtx& ctx);
/// (1, f): cokernel 0.
MatFac trivial_unit(const RingCtx& ctx);

struct ValidationResult {
    bool ok = true;
    char side = ' ';      // 'A' for A*B, 'B' for B*A
    size_t i = 0, j = 0;  // first offending entry
    Poly residual;        // offending entry minus f*delta_ij
};

ValidationResult validate(const MatFac& mf);
void require_valid(const MatFac& mf);

MatFac syzygy(const MatFac& mf);
MatFac direct_sum(const MatFac& a, const MatFac& b);

/// (A, B) over f  ->  ([[A, uE],[vE, -B]], [[B, uE],[vE, -A]]) over f + u*v.
MatFac knorrer(const MatFac& mf);

/// Chain map (p, q): (A,B) -> (A',B') with p*A = A'*q and q*B = B'*p mod f.
struct MFMorphism {
    MatFac source, target;
    PolyMat p, q;
};

bool morphism_ok(const MFMorphism& m);
MFMorphism identity_morphism(const MatFac& mf);
/// Composite "after": compose(g, f) applies f first.
MFMorphism compose(const MFMorphism& g, const MFMorphism& f);
MFMorphism knorrer_lift_morphism(const MFMorphism& m);

/// 1x1 factor split off a pair: (a, b) with a*b = f and one side a unit.
/// Unit-side-a blocks contribute nothing to the cokernel; unit-side-b
/// blocks contribute a free summand R.
struct TrivialBlock {
    Poly a, b;
    bool frees_summand = false;  // true when b is the unit
};

/// Certified pair equivalence onto a block-diagonal target:
///   U*A*V = diag(core.A, a_1..a_t),  Vinv*B*Uinv = diag(core.B, b_1..b_t),
/// with U*Uinv = V*Vinv = E. Shipped instances hold exactly over the
/// polynomial ring, which is what lets them pass through the doubling functor.
struct PairSplit {
    PolyMat U, V, Uinv, Vinv;
    std::optional<MatFac> core;  // absent: fully trivial pair
    std::vector<TrivialBlock> blocks;

    size_t core_size() const { return core ? core->size() : 0; }
    int free_rank() const;
    PolyMat target_A(const RingCtx& ctx) const;
    PolyMat target_B(const RingCtx& ctx) const;
};

PairSplit identity_split(const MatFac& mf);

struct SplitVerdict {
    bool ok = true;
    std::string detail;
};
/// exact = true checks the identities over the polynomial ring; otherwise
/// modulo f. Unimodularity is checked via constant terms either way.
SplitVerdict verify_pair_split(const MatFac& mf, const PairSplit& split, bool exact);

/// Splits off every exactly-constant unit pivot (transvections only, exact
/// over the polynomial ring). Catalog and certificate data never need more.
PairSplit split_constant_units(const MatFac& mf);

/// Pushes a pair split through the doubling functor: each 1x1 block becomes
/// a unit block plus a free block of the extended polynomial.
PairSplit knorrer_lift_split(const PairSplit& split, const MatFac& mid,
                             const MatFac& lifted_mid);

struct MinimizeResult {
    MatFac reduced;
    int removed = 0;       // unit-side-a blocks, per the reduction contract
    int removed_free = 0;  // unit-side-b blocks = free rank stripped from Cok
    PairSplit split;
};

/// Splits off trivial blocks until both matrices have all entries in the
/// maximal ideal. Throws if a non-constant unit resists exact reduction.
MinimizeResult minimize(const MatFac& mf);

/// True iff nf(U*A*V) = A' entrywise and det U, det V are units of the local
/// ring (nonzero constant term). A passing certificate certifies Cok A = Cok A'.
bool check_equivalence(const MatFac& m, const MatFac& m_prime, const PolyMat& U,
                       const PolyMat& V);

/// Inverse of a unit (nonzero constant term) in R = S/(f), computed as a
/// truncated geometric series and verified exactly; throws when the series
/// fails to stabilize below the degree cap.
Poly inverse_in_quotient(const Poly& u, const RingCtx& ctx);

} // namespace mfkit

#endif
