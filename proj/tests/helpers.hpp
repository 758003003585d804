// Shared test utilities: deterministic RNG, random unimodular maps, common
// fixture polytopes.

#ifndef FANO_TESTS_HELPERS_HPP
#define FANO_TESTS_HELPERS_HPP

#include "fano/matrix.hpp"
#include "fano/polytope.hpp"

#include <random>
#include <vector>

namespace fano::testing {

inline Polytope octahedron()
{
    return convex_hull({{{1, 0, 0}},
                        {{-1, 0, 0}},
                        {{0, 1, 0}},
                        {{0, -1, 0}},
                        {{0, 0, 1}},
                        {{0, 0, -1}}},
                       3);
}

inline Polytope cube()
{
    std::vector<Point> pts;
    for (Coord x : {-1, 1})
        for (Coord y : {-1, 1})
            for (Coord z : {-1, 1})
                pts.push_back({{x, y, z}});
    return convex_hull(pts, 3);
}

inline Polytope p3_simplex()
{
    return convex_hull({{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}, {{-1, -1, -1}}},
                       3);
}

// Table-2 style tetrahedron for the given bottom row (1,1,1,k) etc.
inline Polytope tet_from_columns(std::vector<std::array<Coord, 3>> cols)
{
    std::vector<Point> pts;
    for (const auto &c : cols)
        pts.push_back({{c[0], c[1], c[2]}});
    return convex_hull(pts, 3);
}

// Rejection-sampled GL(dim,Z) element with entries in [-5,5].
inline UnimodularMap random_unimodular(std::mt19937_64 &rng, int dim)
{
    std::uniform_int_distribution<Coord> d(-5, 5);
    while (true) {
        std::array<std::array<Coord, 3>, 3> m{};
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        d(rng);
        if (dim == 2)
            m[2][2] = 1;
        try {
            return UnimodularMap::from_rows(dim, m);
        } catch (const not_unimodular &) {
        }
    }
}

inline std::vector<Point> random_points(std::mt19937_64 &rng, int dim, int n,
                                        Coord box)
{
    std::uniform_int_distribution<Coord> d(-box, box);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        Point p;
        for (int c = 0; c < dim; ++c)
            p[c] = d(rng);
        pts.push_back(p);
    }
    return pts;
}

} // namespace fano::testing

#endif
