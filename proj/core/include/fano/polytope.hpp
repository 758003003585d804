// Exact convex geometry for full-dimensional lattice polytopes in dimension
// 2 and 3: hulls, facets, point location, lattice-point enumeration, duals,
// normalized volumes and unimodular images.

#ifndef FANO_POLYTOPE_HPP
#define FANO_POLYTOPE_HPP

#include "fano/base.hpp"
#include "fano/matrix.hpp"
#include "fano/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fano {

// Supporting halfspace {x : normal.x >= -level} with primitive inner normal.
// vmask bit i is set iff vertices[i] saturates the facet.
struct Facet {
    Point normal;
    Coord level = 0;
    std::uint64_t vmask = 0;
};

struct Polytope {
    int dim = 3;
    std::vector<Point> vertices; // lexicographically sorted, extreme points only
    std::vector<Facet> facets;   // sorted by (normal, level)

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_facets() const { return static_cast<int>(facets.size()); }
};

enum class Location { Interior, Boundary, Outside };

// Hull of a finite point set; keeps extreme points only and produces the
// complete facet list.  Throws degenerate_hull if the points span an affine
// subspace of dimension < dim.
Polytope convex_hull(std::vector<Point> points, int dim);

// conv(P union {v}) computed incrementally from P's facet description.
// Requires the origin strictly interior to P.  Returns nullopt when v is
// already contained in P.
std::optional<Polytope> add_point(const Polytope &p, const Point &v);

Location locate(const Polytope &p, const Point &x);

// Exact location of the rational point x/den (den > 0).
Location locate_rational(const Polytope &p, const Point &x, Coord den);

struct LatticePoints {
    std::vector<Point> interior;
    std::vector<Point> boundary; // includes the vertices
};

LatticePoints lattice_points(const Polytope &p);

// n! * Euclidean volume, always a non-negative integer for lattice polytopes.
Coord normalized_volume(const Polytope &p);

// Vertices of the dual polytope {y : y.x >= -1 for all x in P} as rational
// points (facet normals divided by their levels).  Requires the origin
// strictly interior.
struct RationalPolytope {
    int dim = 3;
    std::vector<std::pair<Point, Coord>> vertices; // (numerator, denominator)
};

RationalPolytope dual(const Polytope &p);

// n! * Euclidean volume of the dual, as an exact rational.
Rational dual_normalized_volume(const Polytope &p);

// Whether the dual is itself a lattice polytope (all facet levels 1).
bool dual_is_lattice(const Polytope &p);

Polytope apply_map(const Polytope &p, const UnimodularMap &u);

// Extreme-ray test used by invariants: no lattice point strictly between the
// origin and v.
inline bool is_primitive_point(const Point &v)
{
    return content(v) == 1;
}

} // namespace fano

#endif
