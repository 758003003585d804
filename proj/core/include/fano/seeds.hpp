// Built-in minimal Fano polytopes (the growth seeds), the 104-entry weight
// table for Fano tetrahedra, and the seed verification routines.

#ifndef FANO_SEEDS_HPP
#define FANO_SEEDS_HPP

#include "fano/polytope.hpp"
#include "fano/props.hpp"

#include <string>
#include <vector>

namespace fano {

enum class Mode { Canonical, Terminal };

inline const char *mode_name(Mode m)
{
    return m == Mode::Canonical ? "canonical" : "terminal";
}

struct SeedSet {
    int dim = 3;
    Mode mode = Mode::Canonical;
    std::vector<Polytope> polytopes;
    std::vector<std::string> names;
    // Indices into the canonical seed list of the same dimension (the
    // terminal set is a filtered view of the canonical one).
    std::vector<int> canonical_ids;
};

// Throws unsupported_dimension for dim outside {2,3}.
SeedSet builtin_seeds(int dim, Mode mode);

// True iff removing any vertex from the lattice-point set of P destroys the
// canonical (resp. terminal) Fano property.  Throws not_fano when P itself
// is not canonical (resp. terminal).
bool verify_minimal(const Polytope &p, Mode mode);

struct CorollaryReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks every seed has at most 2*dim vertices and that seeds attaining
// 2*dim vertices are centrally symmetric.
CorollaryReport verify_decomposition_corollaries(const SeedSet &seeds);

struct WeightTable {
    // (weights ascending, sum of weights); 104 entries with ascending sums.
    std::vector<std::pair<std::vector<Coord>, Coord>> entries;
};

const WeightTable &weight_table();

// Stable hash over the embedded seed and weight constants; pinned by a test
// so silent data edits are caught.
std::uint64_t seed_data_checksum();

} // namespace fano

#endif
