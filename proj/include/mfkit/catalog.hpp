#ifndef MFKIT_CATALOG_HPP
#define MFKIT_CATALOG_HPP

#include "mfkit/homology.hpp"
#include "mfkit/locus.hpp"

#include <map>

namespace mfkit {

struct CatalogEntry {
    std::string label;
    MatFac mf;
    std::vector<std::string> declared_locus;  // names of nonfree primes
    std::vector<long> row_shifts, col_shifts;

    bool in_punctured_class() const {  // locally free on the punctured spectrum
        for (const auto& n : declared_locus)
            if (n != "m") return false;
        return true;
    }
};

/// Pair-level isomorphism certificate between two labeled entries:
/// U*A*V = A' and Vinv*B*Uinv = B', exactly over the polynomial ring.
struct IsoCert {
    std::string from, to;
    PolyMat U, V, Uinv, Vinv;
};

struct CatalogSequence {
    SESCert cert;
    std::string diagram;  // "phi", "psi", "cone"
    int n = 0;            // parameter; 0 for the degenerate members
    bool shifted = false;
    bool dominates_free = false;  // the 0 -> X -> R^n -> X' -> 0 sequence
};

struct Catalog {
    RingCtx ctx;
    int n_max = 0;
    std::vector<CatalogEntry> entries;
    std::vector<CatalogSequence> sequences;
    std::vector<IsoCert> isos;

    const CatalogEntry& entry(const std::string& label) const;
    bool has_entry(const std::string& label) const;
};

/// Full catalog for a canonical context (uv towers at any d, x form at any d
/// via the change of presentation). Every factorization validates; each
/// sequence certificate verifies.
Catalog build_catalog(const RingCtx& ctx, int n_max);

std::vector<CatalogEntry> list_modules(const RingCtx& ctx, int n_max);

/// The module X with M(R) = {X, Omega X}, as catalog entries (X, Omega X).
std::pair<CatalogEntry, CatalogEntry> x_module(const RingCtx& ctx);
std::pair<std::string, std::string> x_module_labels(Family family, int d);

std::vector<SESCert> get_sequences(const RingCtx& ctx, int n_max);

/// Certificate 0 -> L -> M (+) R^n -> N -> 0 with L, N in {X, Omega X}
/// dominating the given entry; errors when the entry is X or Omega X.
SESCert dominating_sequence(const Catalog& cat, const std::string& label);

/// Nonfree locus of a catalog entry with the declared locus cross-checked;
/// disagreement is a hard error.
std::vector<PrimeSpec> nonfree_locus(const Catalog& cat, const CatalogEntry& entry);

enum class QuiverShape { AOdd, DOdd, AEven, DEven };

struct QuiverDesc {
    QuiverShape shape = QuiverShape::AOdd;
    std::vector<std::string> vertices;
    std::vector<std::pair<size_t, size_t>> arrows;        // solid, directed
    std::vector<std::pair<size_t, size_t>> dotted;        // ties (may be self)
    int truncation = 0;
};

std::string quiver_shape_str(QuiverShape s);

/// Stable translation-quiver shape of the punctured-spectrum-free modules,
/// truncated; vertex labels come from the catalog, arrows carry no maps.
QuiverDesc ar_quiver(const RingCtx& ctx, int n_max);

} // namespace mfkit

#endif
