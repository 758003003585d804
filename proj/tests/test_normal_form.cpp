#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fano/normal_form.hpp"
#include "fano/seeds.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <set>

using namespace fano;
using namespace fano::testing;

namespace {

// Brute-force equivalence oracle for tiny polytopes: try every vertex
// bijection, solve for the linear map over the rationals, accept integral
// maps with |det| = 1 that match the whole bijection.
bool equivalent_bruteforce(const Polytope &p, const Polytope &q)
{
    if (p.dim != q.dim || p.n_vertices() != q.n_vertices())
        return false;
    const int n = p.dim;
    const auto &pv = p.vertices;
    const auto &qv = q.vertices;
    const int V = p.n_vertices();

    // A basis among p's vertices.
    int b[3] = {-1, -1, -1};
    for (int i = 0; i < V && b[2] < 0; ++i) {
        Point x = pv[static_cast<std::size_t>(i)];
        if (b[0] < 0) {
            if (!is_zero(x))
                b[0] = i;
        } else if (b[1] < 0) {
            if (n == 2) {
                if (det2(pv[static_cast<std::size_t>(b[0])], x) != 0)
                    b[1] = i;
            } else if (!is_zero(cross(pv[static_cast<std::size_t>(b[0])], x))) {
                b[1] = i;
            }
        } else if (n == 3 &&
                   det3(pv[static_cast<std::size_t>(b[0])],
                        pv[static_cast<std::size_t>(b[1])], x) != 0) {
            b[2] = i;
        }
    }
    if (n == 2)
        b[2] = -2; // sentinel: only two basis vectors needed

    std::vector<int> perm(static_cast<std::size_t>(V));
    for (int i = 0; i < V; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    do {
        // Solve U * pv[b[k]] = qv[perm[b[k]]] for U via the adjugate.
        Point p0 = pv[static_cast<std::size_t>(b[0])];
        Point p1 = pv[static_cast<std::size_t>(b[1])];
        Point p2 = n == 3 ? pv[static_cast<std::size_t>(b[2])]
                          : Point{{0, 0, 1}};
        Point q0 = qv[static_cast<std::size_t>(perm[static_cast<std::size_t>(b[0])])];
        Point q1 = qv[static_cast<std::size_t>(perm[static_cast<std::size_t>(b[1])])];
        Point q2 = n == 3
                           ? qv[static_cast<std::size_t>(
                                     perm[static_cast<std::size_t>(b[2])])]
                           : Point{{0, 0, 1}};
        Coord D = det3(p0, p1, p2);
        if (D == 0)
            continue;
        // adj([p0 p1 p2]) rows are cross products of the columns.
        Point r0 = cross(p1, p2), r1 = cross(p2, p0), r2 = cross(p0, p1);
        // M = [q0 q1 q2] * adj; U = M / D must be integral.
        std::array<std::array<Coord, 3>, 3> m{};
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = 0; j < 3 && ok; ++j) {
                Coord s = q0[i] * r0[j] + q1[i] * r1[j] + q2[i] * r2[j];
                if (s % D != 0)
                    ok = false;
                else
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                            s / D;
            }
        if (!ok)
            continue;
        UnimodularMap u;
        try {
            u = UnimodularMap::from_rows(n, m);
        } catch (const not_unimodular &) {
            continue;
        }
        bool all = true;
        for (int i = 0; i < V && all; ++i)
            if (!(u.apply(pv[static_cast<std::size_t>(i)]) ==
                  qv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]))
                all = false;
        if (all)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace

TEST_CASE("normal form is invariant under random unimodular maps")
{
    std::mt19937_64 rng{314159};
    for (int dim : {2, 3}) {
        SeedSet seeds = builtin_seeds(dim, Mode::Canonical);
        for (const Polytope &p : seeds.polytopes) {
            std::string key = normal_form(p).key;
            for (int i = 0; i < 100; ++i) {
                UnimodularMap u = random_unimodular(rng, dim);
                CHECK(normal_form(apply_map(p, u)).key == key);
            }
        }
    }
}

TEST_CASE("the sixteen tetrahedra have pairwise distinct normal forms")
{
    SeedSet seeds = builtin_seeds(3, Mode::Canonical);
    std::set<std::string> tet_keys, nonsimplex_keys;
    for (std::size_t i = 0; i < seeds.polytopes.size(); ++i) {
        const Polytope &p = seeds.polytopes[i];
        if (p.n_vertices() == 4)
            tet_keys.insert(normal_form(p).key);
        else
            nonsimplex_keys.insert(normal_form(p).key);
    }
    CHECK(tet_keys.size() == 16);
    CHECK(nonsimplex_keys.size() == 10);
    for (const std::string &k : nonsimplex_keys)
        CHECK(tet_keys.count(k) == 0);
}

TEST_CASE("is_equivalent on transformed copies and distinct seeds")
{
    std::mt19937_64 rng{2718};
    SeedSet seeds = builtin_seeds(3, Mode::Canonical);
    for (const Polytope &p : seeds.polytopes)
        for (int i = 0; i < 10; ++i)
            CHECK(is_equivalent(p, apply_map(p, random_unimodular(rng, 3))));
    for (std::size_t i = 0; i < seeds.polytopes.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.polytopes.size(); ++j)
            CHECK_FALSE(is_equivalent(seeds.polytopes[i], seeds.polytopes[j]));

    CHECK_FALSE(is_equivalent(octahedron(), cube()));
    Polytope t1123 =
            tet_from_columns({{-1, -2, -3}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    Polytope t1124 =
            tet_from_columns({{-1, -2, -4}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK_FALSE(is_equivalent(t1123, t1124));
}

TEST_CASE("normal form agrees with the brute-force bijection oracle")
{
    std::mt19937_64 rng{1618};
    SeedSet seeds = builtin_seeds(3, Mode::Canonical);
    std::vector<Polytope> small;
    for (const Polytope &p : seeds.polytopes)
        if (p.n_vertices() <= 6)
            small.push_back(p);
    small.push_back(octahedron());
    small.push_back(p3_simplex());

    // Transformed copies must be recognized both ways.
    int trials = 0;
    for (const Polytope &p : small) {
        for (int i = 0; i < 8; ++i) {
            Polytope q = apply_map(p, random_unimodular(rng, 3));
            CHECK(equivalent_bruteforce(p, q));
            CHECK(is_equivalent(p, q));
            ++trials;
        }
    }
    CHECK(trials >= 100);

    // Distinct classes must be rejected both ways.
    for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = i + 1; j < small.size(); ++j) {
            bool bf = equivalent_bruteforce(small[i], small[j]);
            CHECK(bf == is_equivalent(small[i], small[j]));
        }
}

TEST_CASE("normal form is stable and serialization round-trips")
{
    for (int dim : {2, 3}) {
        SeedSet seeds = builtin_seeds(dim, Mode::Canonical);
        for (const Polytope &p : seeds.polytopes) {
            NormalForm a = normal_form(p);
            NormalForm b = normal_form(p);
            CHECK(a.key == b.key);
            MatZ m = nf_parse(a.key, dim);
            CHECK(m == a.matrix);
            Polytope rep = polytope_from_nf(m, dim);
            CHECK(normal_form(rep).key == a.key);
        }
    }
}

TEST_CASE("fingerprint is a function of the equivalence class")
{
    std::mt19937_64 rng{555};
    for (Polytope p : {octahedron(), cube(), p3_simplex()}) {
        Fingerprint f = fingerprint(p);
        for (int i = 0; i < 10; ++i)
            CHECK(fingerprint(apply_map(p, random_unimodular(rng, 3))) == f);
    }
    CHECK_FALSE(fingerprint(octahedron()) == fingerprint(cube()));
}
