#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fano/props.hpp"
#include "fano/normal_form.hpp"
#include "fano/seeds.hpp"
#include "helpers.hpp"

using namespace fano;
using namespace fano::testing;

namespace {

Polytope tet_1113()
{
    return tet_from_columns({{-1, -1, -3}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

Polytope tet_1112()
{
    return tet_from_columns({{-1, -1, -2}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

Polytope tet_2235()
{
    return tet_from_columns({{-1, -3, -4}, {1, 0, 0}, {0, 2, 1}, {0, 0, 1}});
}

Polytope tet_1146()
{
    return tet_from_columns({{-1, -4, -6}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

} // namespace

TEST_CASE("canonical predicate")
{
    CHECK(is_canonical_fano(octahedron()));
    CHECK(is_canonical_fano(cube()));
    Polytope stretched = convex_hull({{{2, 0, 0}},
                                      {{-2, 0, 0}},
                                      {{0, 1, 0}},
                                      {{0, -1, 0}},
                                      {{0, 0, 1}},
                                      {{0, 0, -1}}},
                                     3);
    CHECK_FALSE(is_canonical_fano(stretched)); // (1,0,0) is interior
}

TEST_CASE("terminal predicate")
{
    CHECK(is_terminal_fano(octahedron()));
    CHECK_FALSE(is_terminal_fano(tet_1113())); // boundary point (0,0,-1)
    CHECK_FALSE(is_terminal_fano(cube()));     // edge midpoints
}

TEST_CASE("reflexive predicate")
{
    CHECK(is_reflexive(octahedron()));
    CHECK(is_reflexive(cube()));
    CHECK_FALSE(is_reflexive(tet_2235()));
}

TEST_CASE("simplicial predicate")
{
    CHECK(is_simplicial(octahedron()));
    CHECK_FALSE(is_simplicial(cube()));
    CHECK(is_simplicial(tet_1113()));
}

TEST_CASE("smooth predicate")
{
    CHECK(is_smooth(octahedron())); // (P^1)^3
    CHECK(is_smooth(p3_simplex())); // P^3
    CHECK_FALSE(is_smooth(tet_1112()));
}

TEST_CASE("degrees")
{
    CHECK(degree(tet_1113()) == Rational{72});
    CHECK(degree(tet_1146()) == Rational{72});
    CHECK(degree(p3_simplex()) == Rational{64});
}

TEST_CASE("picard ranks")
{
    CHECK(picard_rank(octahedron()) == 3);
    CHECK(picard_rank(p3_simplex()) == 1);
    CHECK_FALSE(picard_rank(cube()).has_value());
}

TEST_CASE("weights of simplices")
{
    WeightSystem w = weights_of_simplex(p3_simplex());
    CHECK(w.weights == std::vector<Coord>{1, 1, 1, 1});
    CHECK(w.index == 1);

    // The second (1,1,1,1) entry generates an index-two sublattice.
    Polytope idx2 =
            tet_from_columns({{-2, -2, -1}, {2, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    WeightSystem w2 = weights_of_simplex(idx2);
    CHECK(w2.weights == std::vector<Coord>{1, 1, 1, 1});
    CHECK(w2.index == 2);

    // The third one has index five.
    Polytope idx5 =
            tet_from_columns({{-5, -3, -2}, {5, 2, 1}, {0, 1, 0}, {0, 0, 1}});
    WeightSystem w5 = weights_of_simplex(idx5);
    CHECK(w5.weights == std::vector<Coord>{1, 1, 1, 1});
    CHECK(w5.index == 5);

    Polytope t3457 =
            tet_from_columns({{-4, -3, -5}, {3, 1, 2}, {0, 1, 0}, {0, 0, 1}});
    WeightSystem w7 = weights_of_simplex(t3457);
    CHECK(w7.weights == std::vector<Coord>{3, 4, 5, 7});
    CHECK(w7.index == 1);

    CHECK_THROWS_AS(weights_of_simplex(octahedron()), not_simplex);
}

TEST_CASE("simplex_from_weights")
{
    Polytope s = simplex_from_weights({1, 1, 1, 1});
    CHECK(is_equivalent(s, p3_simplex()));

    Polytope s1124 = simplex_from_weights({1, 1, 2, 4});
    Polytope table =
            tet_from_columns({{-1, -2, -4}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(is_equivalent(s1124, table));

    // Dimension 2: weights (1,1,2).
    Polytope tri = simplex_from_weights({1, 1, 2});
    Polytope expected =
            convex_hull({{{1, 0, 0}}, {{0, 1, 0}}, {{-2, -1, 0}}}, 2);
    CHECK(is_equivalent(tri, expected));

    CHECK_THROWS(simplex_from_weights({2, 2, 4, 4})); // gcd 2
}

TEST_CASE("roundtrip simplex_from_weights then weights_of_simplex")
{
    std::mt19937_64 rng{99};
    for (const auto &[w, sum] : weight_table().entries) {
        (void)sum;
        Polytope s = simplex_from_weights(w);
        WeightSystem back = weights_of_simplex(s);
        CHECK(back.weights == w);
        CHECK(back.index == 1);
        // For index-1 simplices the construction inverts the weights up to
        // GL(3,Z): the normal form survives a random unimodular image.
        Polytope img = apply_map(s, random_unimodular(rng, 3));
        CHECK(normal_form(simplex_from_weights(weights_of_simplex(img).weights))
                      .key == normal_form(img).key);
    }
}

TEST_CASE("degree invariance under unimodular maps")
{
    std::mt19937_64 rng{100};
    for (Polytope p : {octahedron(), tet_1113(), p3_simplex()}) {
        Rational d = degree(p);
        for (int i = 0; i < 25; ++i)
            CHECK(degree(apply_map(p, random_unimodular(rng, 3))) == d);
    }
}

TEST_CASE("profile implication chain")
{
    for (Polytope p : {octahedron(), cube(), p3_simplex(), tet_1113(),
                       tet_1112(), tet_2235()}) {
        FanoProfile f = compute_profile(p);
        CHECK(f.is_canonical);
        if (f.is_smooth) {
            CHECK(f.is_terminal);
            CHECK(f.is_reflexive);
            CHECK(f.is_simplicial);
        }
        if (f.is_terminal)
            CHECK(f.is_canonical);
        CHECK(f.n_interior_points == 1);
        CHECK(f.picard_rank.has_value() == f.is_simplicial);
        if (f.picard_rank)
            CHECK(*f.picard_rank == f.n_vertices - 3);
    }
}

TEST_CASE("canonical Fano vertices are primitive")
{
    for (Polytope p : {octahedron(), cube(), p3_simplex(), tet_1113(),
                       tet_2235()})
        for (const Point &v : p.vertices)
            CHECK(is_primitive_point(v));
}
