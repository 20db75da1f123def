#ifndef MFKIT_LOCUS_HPP
#define MFKIT_LOCUS_HPP

#include "mfkit/matfac.hpp"

#include <optional>

namespace mfkit {

/// Variable-generated prime of a catalog ring: "p" (everything but x1),
/// "m" (all variables), and additionally "q" = (x1) in dimension one of the
/// second family, where it is prime.
struct PrimeSpec {
    std::string name;
    std::vector<size_t> vars;  // generating variable indices

    bool operator==(const PrimeSpec& o) const { return name == o.name && vars == o.vars; }
};

std::vector<PrimeSpec> named_primes(const RingCtx& ctx);
PrimeSpec named_prime(const RingCtx& ctx, const std::string& name);

/// Monomial generators of the kernel of R -> R_prime, shipped per
/// (family, prime).  Nontrivial only at d = 1 of the second family:
/// at p the localization kills x0^2 (x1 becomes invertible), at q it kills x1.
std::vector<Monomial> local_kill_monomials(const RingCtx& ctx, const PrimeSpec& prime);

/// Canonical representative of e in R_prime: normal form, then reduction by
/// the local kill ideal. Zero iff e maps to zero in the localization.
Poly local_reduce(const Poly& e, const RingCtx& ctx, const PrimeSpec& prime);

/// True iff substituting the prime's generators to 0 in nf(e) is nonzero,
/// i.e. e is invertible in the localization.
bool is_unit_at(const Poly& e, const PrimeSpec& prime, const RingCtx& ctx);

/// Minimized-at-prime presentation: all entries vanish under the prime's
/// substitution and the matrix is nonzero, certifying a nonfree localization.
struct NonfreeCert {
    PrimeSpec prime;
    PolyMat matrix;
};

struct NonfreeOutcome {
    bool nonfree = false;
    std::optional<NonfreeCert> cert;  // present iff nonfree
};

/// Unit-pivot elimination over the localized ring with cleared denominators.
NonfreeOutcome verify_nonfree(const MatFac& mf, const PrimeSpec& prime);

/// Denominator-cleared certificate that Cok(A) localizes to a free module:
/// U*A*V = D over the localization, D diagonal 0/1, denominators confined to
/// powers of the clearing variable. Free rank = number of zero diagonal entries.
struct LocalFreeCert {
    std::optional<PrimeSpec> prime;  // absent: prime-avoidance case certificate
    size_t clearing_var = 0;
    int clearing_exp = 0;
    PolyMat U, V;                    // Laurent entries allowed
    std::vector<int> D;              // 0/1 diagonal
};

struct CertVerdict {
    bool ok = false;
    bool clearing_insufficient = false;
    std::string detail;
};

CertVerdict verify_local_free_cert(const MatFac& mf, const LocalFreeCert& cert);

/// Derives a certificate by Laurent elimination on monomial pivots that are
/// units at the prime. Returns nothing when the module is not free there or
/// when a pivot is not monomial (the catalog never needs one).
std::optional<LocalFreeCert> derive_local_free_cert(const MatFac& mf, const PrimeSpec& prime);

/// Nonfree locus of the cokernel among the ring's named primes; each free
/// verdict is cross-checked against a verified freeness certificate.
/// Inconsistency between the two routes is a hard error.
std::vector<PrimeSpec> nonfree_locus_of(const MatFac& mf);

/// Primes of the doubled ring corresponding to primes of the base ring:
/// each gains the two fresh variables; name tags are preserved.
std::vector<PrimeSpec> transport_locus(const std::vector<PrimeSpec>& locus,
                                       const RingCtx& from, const RingCtx& to);

} // namespace mfkit

#endif
