// Fano/singularity predicates, anticanonical degrees, Picard ranks and the
// weight-system calculus for Fano simplices.

#ifndef FANO_PROPS_HPP
#define FANO_PROPS_HPP

#include "fano/polytope.hpp"
#include "fano/rational.hpp"

#include <optional>
#include <vector>

namespace fano {

// Normalized weights of a Fano simplex: ascending, gcd 1, together with the
// index of the sublattice generated by the vertices.
struct WeightSystem {
    std::vector<Coord> weights;
    Coord index = 1;

    friend bool operator==(const WeightSystem &, const WeightSystem &) = default;
    friend auto operator<=>(const WeightSystem &, const WeightSystem &) = default;
};

// True iff the interior lattice points of P are exactly {0}.
bool is_canonical_fano(const Polytope &p);

// True iff additionally the only boundary lattice points are the vertices.
bool is_terminal_fano(const Polytope &p);

// Gorenstein test: every facet at lattice distance 1.
bool is_reflexive(const Polytope &p);

bool is_simplicial(const Polytope &p);

// Simplicial and every facet's vertices form a lattice basis.
bool is_smooth(const Polytope &p);

// (-K_X)^n = normalized volume of the dual polytope.
Rational degree(const Polytope &p);

// n_vertices - dim for simplicial polytopes, absent otherwise.
std::optional<int> picard_rank(const Polytope &p);

// The unique normalized positive relation among the vertices of a Fano
// simplex, plus the sublattice index.  Throws not_simplex / origin_not_interior.
WeightSystem weights_of_simplex(const Polytope &s);

// The index-1 Fano simplex with the given weights (unique up to GL(n,Z)):
// primitive vertices satisfying the weight relation and generating the
// lattice.  weights.size() = dim + 1.  Throws no_primitive_solution if the
// weights force a non-primitive vertex.
Polytope simplex_from_weights(const std::vector<Coord> &weights);

struct FanoProfile {
    bool is_fano = false;
    bool is_canonical = false;
    bool is_terminal = false;
    bool is_reflexive = false;
    bool is_simplicial = false;
    bool is_smooth = false;
    Rational degree;
    std::optional<int> picard_rank;
    int n_vertices = 0;
    int n_lattice_points = 0;
    int n_interior_points = 0;
    Coord volume = 0;
};

// Computes every profile field with a single lattice-point scan and checks
// the implication chain (smooth => terminal => canonical, etc).
FanoProfile compute_profile(const Polytope &p);

} // namespace fano

#endif
