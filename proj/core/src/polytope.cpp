#include "fano/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace fano {

namespace {

void sort_unique(std::vector<Point> &pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

int affine_rank(const std::vector<Point> &pts, Point basis[3])
{
    int rank = 0;
    const Point &p0 = pts.front();
    for (std::size_t i = 1; i < pts.size() && rank < 3; ++i) {
        Point d = sub(pts[i], p0);
        if (rank == 0) {
            if (!is_zero(d))
                basis[rank++] = d;
        } else if (rank == 1) {
            if (!is_zero(cross(basis[0], d)))
                basis[rank++] = d;
        } else if (det3(basis[0], basis[1], d) != 0) {
            basis[rank++] = d;
        }
    }
    return rank;
}

void sort_facets(std::vector<Facet> &facets)
{
    std::sort(facets.begin(), facets.end(), [](const Facet &a, const Facet &b) {
        if (a.normal != b.normal)
            return a.normal < b.normal;
        return a.level < b.level;
    });
}

void fill_vmasks(Polytope &p)
{
    assert(p.vertices.size() <= 64);
    for (Facet &f : p.facets) {
        f.vmask = 0;
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            if (checked_add(dot(f.normal, p.vertices[i]), f.level) == 0)
                f.vmask |= std::uint64_t{1} << i;
    }
}

// Vertex test given the full facet list: the saturated normals span R^dim.
bool saturated_rank_full(const std::vector<Facet> &facets, const Point &x,
                         int dim)
{
    Point n1{}, n2{};
    int rank = 0;
    for (const Facet &f : facets) {
        if (checked_add(dot(f.normal, x), f.level) != 0)
            continue;
        if (rank == 0) {
            n1 = f.normal;
            rank = 1;
        } else if (rank == 1) {
            if (dim == 2)
                return det2(n1, f.normal) != 0;
            if (!is_zero(cross(n1, f.normal))) {
                n2 = f.normal;
                rank = 2;
            }
        } else if (det3(n1, n2, f.normal) != 0) {
            return true;
        }
    }
    return false;
}

Polytope hull_2d(std::vector<Point> pts)
{
    // Monotone chain; pts are sorted and unique, affine rank 2.
    auto turn = [](const Point &a, const Point &b, const Point &c) {
        return det2(sub(b, a), sub(c, a));
    };
    std::vector<Point> lower, upper;
    for (const Point &p : pts) {
        while (lower.size() >= 2 &&
               turn(lower[lower.size() - 2], lower.back(), p) <= 0)
            lower.pop_back();
        lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 &&
               turn(upper[upper.size() - 2], upper.back(), *it) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    std::vector<Point> ring = lower; // counterclockwise
    ring.insert(ring.end(), upper.begin(), upper.end());

    Polytope p;
    p.dim = 2;
    p.vertices = ring;
    std::sort(p.vertices.begin(), p.vertices.end());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point &a = ring[i];
        const Point &b = ring[(i + 1) % ring.size()];
        Point d = sub(b, a);
        Point n{{checked_neg(d[1]), d[0], 0}};
        n = primitive(n);
        Facet f;
        f.normal = n;
        f.level = checked_neg(dot(n, a));
        p.facets.push_back(f);
    }
    sort_facets(p.facets);
    fill_vmasks(p);
    return p;
}

Polytope hull_3d(const std::vector<Point> &pts)
{
    // Brute-force facet enumeration; the point sets here are tiny.
    const int m = static_cast<int>(pts.size());
    std::map<std::pair<Point, Coord>, bool> planes;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                Point n = cross(sub(pts[static_cast<std::size_t>(j)],
                                    pts[static_cast<std::size_t>(i)]),
                                sub(pts[static_cast<std::size_t>(k)],
                                    pts[static_cast<std::size_t>(i)]));
                if (is_zero(n))
                    continue;
                n = primitive(n);
                Coord c = dot(n, pts[static_cast<std::size_t>(i)]);
                if (planes.count({n, c}) || planes.count({neg(n), -c}))
                    continue;
                bool lo = false, hi = false;
                for (int t = 0; t < m && !(lo && hi); ++t) {
                    Coord s = checked_sub(
                            dot(n, pts[static_cast<std::size_t>(t)]), c);
                    if (s > 0)
                        hi = true;
                    else if (s < 0)
                        lo = true;
                }
                if (lo && hi)
                    continue; // not supporting
                if (lo) {
                    n = neg(n);
                    c = checked_neg(c);
                }
                planes[{n, c}] = true;
            }

    Polytope p;
    p.dim = 3;
    for (const auto &[key, ok] : planes) {
        (void)ok;
        Facet f;
        f.normal = key.first;
        f.level = checked_neg(key.second);
        p.facets.push_back(f);
    }
    for (const Point &x : pts)
        if (saturated_rank_full(p.facets, x, 3))
            p.vertices.push_back(x);
    std::sort(p.vertices.begin(), p.vertices.end());
    sort_facets(p.facets);
    fill_vmasks(p);
    return p;
}

void check_polytope(const Polytope &p)
{
    assert(p.n_vertices() >= p.dim + 1);
    for (const Facet &f : p.facets) {
        assert(content(f.normal) == 1);
        assert(__builtin_popcountll(f.vmask) >= p.dim);
    }
    (void)p;
}

} // namespace

Polytope convex_hull(std::vector<Point> points, int dim)
{
    if (dim != 2 && dim != 3)
        throw unsupported_dimension(dim);
    if (points.empty())
        throw error("convex_hull of an empty set");
    if (dim == 2)
        for (const Point &p : points)
            if (p[2] != 0)
                throw error("nonzero z coordinate in dimension 2");
    sort_unique(points);
    Point basis[3];
    int rank = affine_rank(points, basis);
    if (rank < dim)
        throw degenerate_hull(rank);
    Polytope p = dim == 2 ? hull_2d(std::move(points)) : hull_3d(points);
    check_polytope(p);
    return p;
}

std::optional<Polytope> add_point(const Polytope &p, const Point &v)
{
    const int nf = p.n_facets();
    std::vector<Coord> val(static_cast<std::size_t>(nf));
    bool outside = false;
    for (int i = 0; i < nf; ++i) {
        val[static_cast<std::size_t>(i)] = checked_add(
                dot(p.facets[static_cast<std::size_t>(i)].normal, v),
                p.facets[static_cast<std::size_t>(i)].level);
        if (val[static_cast<std::size_t>(i)] < 0)
            outside = true;
    }
    if (!outside)
        return std::nullopt;

    if (p.dim == 2) {
        std::vector<Point> pts = p.vertices;
        pts.push_back(v);
        return convex_hull(std::move(pts), 2);
    }

    // Supporting planes that survive: kept facets plus tangent planes.
    std::map<std::pair<Point, Coord>, std::uint64_t> planes;
    for (int i = 0; i < nf; ++i) {
        const Facet &f = p.facets[static_cast<std::size_t>(i)];
        if (val[static_cast<std::size_t>(i)] >= 0)
            planes[{f.normal, f.level}] = 0;
    }
    // New planes through v and each horizon edge.
    for (int i = 0; i < nf; ++i) {
        if (val[static_cast<std::size_t>(i)] >= 0)
            continue;
        const Facet &fv = p.facets[static_cast<std::size_t>(i)];
        for (int j = 0; j < nf; ++j) {
            if (val[static_cast<std::size_t>(j)] < 0)
                continue;
            std::uint64_t shared =
                    fv.vmask & p.facets[static_cast<std::size_t>(j)].vmask;
            if (__builtin_popcountll(shared) != 2)
                continue;
            int a = __builtin_ctzll(shared);
            shared &= shared - 1;
            int b = __builtin_ctzll(shared);
            const Point &pa = p.vertices[static_cast<std::size_t>(a)];
            const Point &pb = p.vertices[static_cast<std::size_t>(b)];
            Point n = cross(sub(pb, pa), sub(v, pa));
            if (is_zero(n))
                continue; // v on the edge line; the tangent plane covers it
            n = primitive(n);
            Coord c = dot(n, pa);
            if (c > 0) {
                n = neg(n);
                c = checked_neg(c);
            }
            assert(c < 0); // origin is strictly interior
            planes[{n, checked_neg(c)}] = 0;
        }
    }

    Polytope q;
    q.dim = 3;
    for (const auto &[key, unused] : planes) {
        (void)unused;
        Facet f;
        f.normal = key.first;
        f.level = key.second;
        q.facets.push_back(f);
    }
    for (const Point &x : p.vertices)
        if (saturated_rank_full(q.facets, x, 3))
            q.vertices.push_back(x);
    assert(saturated_rank_full(q.facets, v, 3));
    q.vertices.push_back(v);
    std::sort(q.vertices.begin(), q.vertices.end());
    sort_facets(q.facets);
    fill_vmasks(q);
    check_polytope(q);
    return q;
}

Location locate(const Polytope &p, const Point &x)
{
    return locate_rational(p, x, 1);
}

Location locate_rational(const Polytope &p, const Point &x, Coord den)
{
    assert(den > 0);
    bool on_boundary = false;
    for (const Facet &f : p.facets) {
        Coord s = checked_add(dot(f.normal, x),
                              checked_mul(f.level, den));
        if (s < 0)
            return Location::Outside;
        if (s == 0)
            on_boundary = true;
    }
    return on_boundary ? Location::Boundary : Location::Interior;
}

LatticePoints lattice_points(const Polytope &p)
{
    Point lo = p.vertices.front(), hi = p.vertices.front();
    for (const Point &v : p.vertices)
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }

    LatticePoints out;
    auto ceil_div = [](Coord a, Coord b) { // b > 0
        Coord q = a / b;
        if (a % b != 0 && a > 0)
            ++q;
        return q;
    };
    auto floor_div = [](Coord a, Coord b) { // b > 0
        Coord q = a / b;
        if (a % b != 0 && a < 0)
            --q;
        return q;
    };

    for (Coord z = lo[2]; z <= hi[2]; ++z) {
        for (Coord y = lo[1]; y <= hi[1]; ++y) {
            Coord xlo = lo[0], xhi = hi[0];
            bool empty = false;
            for (const Facet &f : p.facets) {
                Coord rest = checked_add(
                        checked_add(checked_mul(f.normal[1], y),
                                    checked_mul(f.normal[2], z)),
                        f.level);
                Coord a = f.normal[0];
                if (a == 0) {
                    if (rest < 0) {
                        empty = true;
                        break;
                    }
                } else if (a > 0) {
                    xlo = std::max(xlo, ceil_div(checked_neg(rest), a));
                } else {
                    xhi = std::min(xhi, floor_div(rest, checked_neg(a)));
                }
            }
            if (empty)
                continue;
            for (Coord x = xlo; x <= xhi; ++x) {
                Point pt{{x, y, z}};
                switch (locate(p, pt)) {
                case Location::Interior:
                    out.interior.push_back(pt);
                    break;
                case Location::Boundary:
                    out.boundary.push_back(pt);
                    break;
                case Location::Outside:
                    break;
                }
            }
        }
    }
    std::sort(out.interior.begin(), out.interior.end());
    std::sort(out.boundary.begin(), out.boundary.end());
    return out;
}

namespace {

// Ring of a facet's vertices, ordered around the facet polygon.
std::vector<Point> facet_ring(const Polytope &p, const Facet &f)
{
    std::vector<Point> ring;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        if (f.vmask & (std::uint64_t{1} << i))
            ring.push_back(p.vertices[i]);
    assert(ring.size() >= 3);
    const Point a = ring.front();
    const Point n = f.normal;
    std::sort(ring.begin() + 1, ring.end(),
              [&](const Point &x, const Point &y) {
                  return det3(sub(x, a), sub(y, a), n) > 0;
              });
    return ring;
}

} // namespace

Coord normalized_volume(const Polytope &p)
{
    const Point q = p.vertices.front();
    Coord vol = 0;
    if (p.dim == 2) {
        for (const Facet &f : p.facets) {
            std::vector<Point> ends;
            for (std::size_t i = 0; i < p.vertices.size(); ++i)
                if (f.vmask & (std::uint64_t{1} << i))
                    ends.push_back(p.vertices[i]);
            assert(ends.size() == 2);
            Coord d = det2(sub(ends[0], q), sub(ends[1], q));
            vol = checked_add(vol, d < 0 ? checked_neg(d) : d);
        }
        return vol;
    }
    for (const Facet &f : p.facets) {
        std::vector<Point> ring = facet_ring(p, f);
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            Coord d = det3(sub(ring[0], q), sub(ring[i], q),
                           sub(ring[i + 1], q));
            vol = checked_add(vol, d < 0 ? checked_neg(d) : d);
        }
    }
    return vol;
}

RationalPolytope dual(const Polytope &p)
{
    if (locate(p, Point{}) != Location::Interior)
        throw origin_not_interior{};
    RationalPolytope d;
    d.dim = p.dim;
    for (const Facet &f : p.facets)
        d.vertices.emplace_back(f.normal, f.level);
    return d;
}

bool dual_is_lattice(const Polytope &p)
{
    if (locate(p, Point{}) != Location::Interior)
        throw origin_not_interior{};
    for (const Facet &f : p.facets)
        if (f.level != 1)
            return false;
    return true;
}

Rational dual_normalized_volume(const Polytope &p)
{
    if (locate(p, Point{}) != Location::Interior)
        throw origin_not_interior{};

    if (p.dim == 2) {
        // Dual vertices in facet order around the origin.
        std::vector<std::pair<Point, Coord>> ring;
        for (const Facet &f : p.facets)
            ring.emplace_back(f.normal, f.level);
        std::sort(ring.begin(), ring.end(),
                  [](const auto &a, const auto &b) {
                      auto half = [](const Point &v) {
                          return v[1] > 0 || (v[1] == 0 && v[0] > 0) ? 0 : 1;
                      };
                      int ha = half(a.first), hb = half(b.first);
                      if (ha != hb)
                          return ha < hb;
                      return det2(a.first, b.first) > 0;
                  });
        Rational area2{0};
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const auto &[na, la] = ring[i];
            const auto &[nb, lb] = ring[(i + 1) % ring.size()];
            Coord d = det2(na, nb);
            area2 = area2 + Rational{d < 0 ? checked_neg(d) : d,
                                     checked_mul(la, lb)};
        }
        return area2;
    }

    // Triangulate each dual facet (one per vertex u of P) from one of its
    // vertices; all tetra determinants share a sign within a fan, so absolute
    // values sum exactly.
    Rational vol{0};
    for (std::size_t ui = 0; ui < p.vertices.size(); ++ui) {
        const Point &u = p.vertices[ui];
        std::vector<std::pair<Point, Coord>> ring;
        for (const Facet &f : p.facets)
            if (f.vmask & (std::uint64_t{1} << ui))
                ring.emplace_back(f.normal, f.level);
        assert(ring.size() >= 3);
        const auto &[n0, l0] = ring.front();
        // Order around u: compare directions of (ni/li - n0/l0) in the plane
        // {y : y.u = -1} whose normal direction is u.
        std::sort(ring.begin() + 1, ring.end(),
                  [&](const auto &x, const auto &y) {
                      Point dx = sub(scale(l0, x.first), scale(x.second, n0));
                      Point dy = sub(scale(l0, y.first), scale(y.second, n0));
                      return det3(dx, dy, u) > 0;
                  });
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            Coord d = det3(n0, ring[i].first, ring[i + 1].first);
            Coord den = checked_mul(checked_mul(l0, ring[i].second),
                                    ring[i + 1].second);
            vol = vol + Rational{d < 0 ? checked_neg(d) : d, den};
        }
    }
    return vol;
}

Polytope apply_map(const Polytope &p, const UnimodularMap &u)
{
    Coord d = u.det();
    if (d != 1 && d != -1)
        throw not_unimodular{};
    std::vector<Point> pts;
    pts.reserve(p.vertices.size());
    for (const Point &v : p.vertices)
        pts.push_back(u.apply(v));
    return convex_hull(std::move(pts), p.dim);
}

} // namespace fano
