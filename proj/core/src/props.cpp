#include "fano/props.hpp"

#include "fano/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace fano {

bool is_canonical_fano(const Polytope &p)
{
    LatticePoints pts = lattice_points(p);
    return pts.interior.size() == 1 && is_zero(pts.interior.front());
}

bool is_terminal_fano(const Polytope &p)
{
    LatticePoints pts = lattice_points(p);
    if (pts.interior.size() != 1 || !is_zero(pts.interior.front()))
        return false;
    return pts.boundary == p.vertices; // both sorted
}

bool is_reflexive(const Polytope &p)
{
    for (const Facet &f : p.facets)
        if (f.level != 1)
            return false;
    return true;
}

bool is_simplicial(const Polytope &p)
{
    for (const Facet &f : p.facets)
        if (__builtin_popcountll(f.vmask) != p.dim)
            return false;
    return true;
}

namespace {

Coord facet_vertex_det(const Polytope &p, const Facet &f)
{
    Point v[3];
    int k = 0;
    for (std::size_t i = 0; i < p.vertices.size() && k < 3; ++i)
        if (f.vmask & (std::uint64_t{1} << i))
            v[k++] = p.vertices[i];
    if (p.dim == 2)
        return det2(v[0], v[1]);
    return det3(v[0], v[1], v[2]);
}

} // namespace

bool is_smooth(const Polytope &p)
{
    if (!is_simplicial(p))
        return false;
    for (const Facet &f : p.facets) {
        Coord d = facet_vertex_det(p, f);
        if (d != 1 && d != -1)
            return false;
    }
    return true;
}

Rational degree(const Polytope &p)
{
    return dual_normalized_volume(p);
}

std::optional<int> picard_rank(const Polytope &p)
{
    if (!is_simplicial(p))
        return std::nullopt;
    return p.n_vertices() - p.dim;
}

WeightSystem weights_of_simplex(const Polytope &s)
{
    const int n = s.dim;
    if (s.n_vertices() != n + 1)
        throw not_simplex{};
    if (locate(s, Point{}) != Location::Interior)
        throw origin_not_interior{};

    // Kernel of the n x (n+1) vertex matrix via cofactors.
    std::vector<Coord> lam(static_cast<std::size_t>(n) + 1);
    const auto &v = s.vertices;
    if (n == 2) {
        lam[0] = det2(v[1], v[2]);
        lam[1] = checked_neg(det2(v[0], v[2]));
        lam[2] = det2(v[0], v[1]);
    } else {
        lam[0] = checked_neg(det3(v[1], v[2], v[3]));
        lam[1] = det3(v[0], v[2], v[3]);
        lam[2] = checked_neg(det3(v[0], v[1], v[3]));
        lam[3] = det3(v[0], v[1], v[2]);
    }
    if (lam[0] < 0)
        for (Coord &x : lam)
            x = checked_neg(x);
    Coord g = 0;
    for (Coord x : lam) {
        assert(x > 0); // origin strictly interior forces positive weights
        g = gcd_nonneg(g, x);
    }
    for (Coord &x : lam)
        x /= g;

    WeightSystem w;
    w.weights = lam;
    std::sort(w.weights.begin(), w.weights.end());
    w.index = sublattice_index(s.vertices, n);
    assert(w.index >= 1);
    return w;
}

Polytope simplex_from_weights(const std::vector<Coord> &weights)
{
    const int n = static_cast<int>(weights.size()) - 1;
    if (n != 2 && n != 3)
        throw unsupported_dimension(n);
    Coord g = 0;
    for (Coord w : weights) {
        if (w <= 0)
            throw error("weights must be positive");
        g = gcd_nonneg(g, w);
    }
    if (g != 1)
        throw error("weights must have gcd 1");

    // U * weights = (1,0,...,0)^T for unimodular U; the images of the
    // standard basis under the last n rows of U generate Z^n and satisfy the
    // weight relation.
    MatZ col(n + 1, 1);
    for (int i = 0; i <= n; ++i)
        col.at(i, 0) = weights[static_cast<std::size_t>(i)];
    HnfResult hr = hermite_normal_form(col);
    assert(hr.h.at(0, 0) == 1);

    std::vector<Point> verts;
    for (int j = 0; j <= n; ++j) {
        Point p;
        for (int i = 0; i < n; ++i)
            p[i] = hr.u.at(i + 1, j);
        if (content(p) != 1)
            throw no_primitive_solution{};
        verts.push_back(p);
    }
    // Weight relation holds by construction; the hull is a Fano simplex.
    for (int i = 0; i < n; ++i) {
        Coord s = 0;
        for (int j = 0; j <= n; ++j)
            s = checked_add(s, checked_mul(weights[static_cast<std::size_t>(j)],
                                           verts[static_cast<std::size_t>(j)][i]));
        assert(s == 0);
        (void)s;
    }
    Polytope p = convex_hull(verts, n);
    assert(p.n_vertices() == n + 1);
    assert(locate(p, Point{}) == Location::Interior);
    assert(sublattice_index(p.vertices, n) == 1);
    return p;
}

FanoProfile compute_profile(const Polytope &p)
{
    FanoProfile fp;
    LatticePoints pts = lattice_points(p);
    fp.n_vertices = p.n_vertices();
    fp.n_lattice_points =
            static_cast<int>(pts.interior.size() + pts.boundary.size());
    fp.n_interior_points = static_cast<int>(pts.interior.size());
    fp.volume = normalized_volume(p);
    fp.is_fano = fp.n_interior_points == 1 && is_zero(pts.interior.front());
    fp.is_canonical = fp.is_fano;
    fp.is_terminal = fp.is_canonical && pts.boundary == p.vertices;
    fp.is_reflexive = fp.is_canonical && is_reflexive(p);
    fp.is_simplicial = is_simplicial(p);
    fp.is_smooth = fp.is_canonical && is_smooth(p);
    if (fp.is_canonical)
        fp.degree = degree(p);
    fp.picard_rank = picard_rank(p);

    assert(!fp.is_smooth || fp.is_terminal);
    assert(!fp.is_terminal || fp.is_canonical);
    assert(!fp.is_smooth || (fp.is_reflexive && fp.is_simplicial));
    assert(!fp.is_canonical || fp.n_interior_points == 1);
    assert(fp.picard_rank.has_value() == fp.is_simplicial);
    return fp;
}

} // namespace fano
