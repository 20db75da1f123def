#ifndef MFKIT_KGROUP_HPP
#define MFKIT_KGROUP_HPP

#include "mfkit/catalog.hpp"

#include <gmpxx.h>
#include <map>

namespace mfkit {

using ZMat = std::vector<std::vector<mpz_class>>;

/// Smith normal form U*M*V = D with unimodular U, V and d1 | d2 | ...;
/// classification fields describe the cokernel of M : Z^cols -> Z^rows.
/// All postconditions are re-verified on every call.
struct SNFResult {
    ZMat U, V, D;
    std::vector<mpz_class> diagonal;  // nonzero invariant factors
    long coker_free_rank = 0;
    std::vector<mpz_class> torsion;   // invariant factors > 1
};

SNFResult snf(const ZMat& M);

/// Integer relation matrix over labeled generators; rows are relations.
/// Every row derives from a verified sequence certificate or a verified
/// isomorphism certificate.
struct AbPresentation {
    std::vector<std::string> generators;
    ZMat relations;
};

AbPresentation harvest_relations(const Catalog& cat);
AbPresentation harvest_relations(const RingCtx& ctx, int n_max);

struct K0Class {
    long free_rank = 0;
    std::vector<mpz_class> torsion;
    std::string route;  // which argument shape the source result uses

    std::string pretty() const;
    bool operator==(const K0Class& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

enum class K0Variant { CM, Stable };

/// Grothendieck group presented by the harvested relations; the stable
/// variant adds [R] = 0 and drops the free generator. The classification is
/// required to be stable under n_max -> n_max + 1 (hard error otherwise).
K0Class present_k0(const RingCtx& ctx, K0Variant variant, int n_max);

/// Lengths of the localized cokernel at each minimal prime of the base
/// (d <= 2) rings; the total-quotient-ring rank data of the source argument.
std::map<std::string, long> multirank(const CatalogEntry& entry);

} // namespace mfkit

#endif
