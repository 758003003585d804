#include "fano/normal_form.hpp"

#include "fano/props.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace fano {

namespace {

// Search for the lexicographically maximal arrangement of the pairing matrix
// under independent row and column permutations.  Rows are emitted greedily
// depth by depth; every column order consistent with some maximal arrangement
// is collected.
struct CanonSearch {
    int nrows, ncols;
    const std::vector<std::vector<Coord>> &pm;

    std::vector<std::vector<Coord>> best; // emitted rows of the best prefix
    std::set<std::vector<int>> sigmas;    // column orders achieving the best

    // order: current column permutation; block[i] = block id of order[i],
    // non-decreasing.  Columns within a block are still interchangeable.
    struct State {
        std::vector<int> order;
        std::vector<int> block;
        std::uint64_t used = 0;
    };

    explicit CanonSearch(const std::vector<std::vector<Coord>> &m)
            : nrows{static_cast<int>(m.size())},
              ncols{static_cast<int>(m[0].size())}, pm{m}
    {
    }

    std::vector<Coord> profile(const State &s, int row) const
    {
        std::vector<Coord> prof(static_cast<std::size_t>(ncols));
        int i = 0;
        while (i < ncols) {
            int j = i;
            while (j < ncols && s.block[static_cast<std::size_t>(j)] ==
                                        s.block[static_cast<std::size_t>(i)])
                ++j;
            for (int k = i; k < j; ++k)
                prof[static_cast<std::size_t>(k)] =
                        pm[static_cast<std::size_t>(row)]
                          [static_cast<std::size_t>(
                                  s.order[static_cast<std::size_t>(k)])];
            std::sort(prof.begin() + i, prof.begin() + j,
                      std::greater<Coord>());
            i = j;
        }
        return prof;
    }

    State refine(const State &s, int row) const
    {
        State t;
        t.used = s.used | (std::uint64_t{1} << row);
        t.order.reserve(static_cast<std::size_t>(ncols));
        t.block.reserve(static_cast<std::size_t>(ncols));
        int i = 0;
        int next_block = 0;
        while (i < ncols) {
            int j = i;
            while (j < ncols && s.block[static_cast<std::size_t>(j)] ==
                                        s.block[static_cast<std::size_t>(i)])
                ++j;
            std::vector<int> cols(s.order.begin() + i, s.order.begin() + j);
            std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) {
                return pm[static_cast<std::size_t>(row)]
                         [static_cast<std::size_t>(a)] >
                       pm[static_cast<std::size_t>(row)]
                         [static_cast<std::size_t>(b)];
            });
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (k > 0 && pm[static_cast<std::size_t>(row)]
                               [static_cast<std::size_t>(cols[k])] !=
                                     pm[static_cast<std::size_t>(row)]
                                       [static_cast<std::size_t>(cols[k - 1])])
                    ++next_block;
                t.order.push_back(cols[k]);
                t.block.push_back(next_block);
            }
            ++next_block;
            i = j;
        }
        return t;
    }

    void dfs(const State &s, int depth)
    {
        if (depth == nrows) {
            // Identical pairing columns would mean identical vertices, so
            // every block is a singleton here and the order is complete.
            sigmas.insert(s.order);
            return;
        }

        std::vector<Coord> maxprof;
        std::vector<int> argmax;
        for (int r = 0; r < nrows; ++r) {
            if (s.used & (std::uint64_t{1} << r))
                continue;
            std::vector<Coord> prof = profile(s, r);
            if (argmax.empty() || prof > maxprof) {
                maxprof = std::move(prof);
                argmax.assign(1, r);
            } else if (prof == maxprof) {
                argmax.push_back(r);
            }
        }

        if (static_cast<int>(best.size()) > depth) {
            if (maxprof < best[static_cast<std::size_t>(depth)])
                return;
            if (maxprof > best[static_cast<std::size_t>(depth)]) {
                best.resize(static_cast<std::size_t>(depth));
                best.push_back(maxprof);
                sigmas.clear();
            }
        } else {
            assert(static_cast<int>(best.size()) == depth);
            best.push_back(maxprof);
        }

        // Rows identical as full vectors refine identically; explore one.
        std::vector<int> expand;
        for (int r : argmax) {
            bool dup = false;
            for (int t : expand)
                if (pm[static_cast<std::size_t>(r)] ==
                    pm[static_cast<std::size_t>(t)])
                    dup = true;
            if (!dup)
                expand.push_back(r);
        }
        for (int r : expand)
            dfs(refine(s, r), depth + 1);
    }
};

std::vector<std::vector<Coord>> pairing_matrix(const Polytope &p)
{
    std::vector<std::vector<Coord>> pm;
    pm.reserve(p.facets.size());
    for (const Facet &f : p.facets) {
        std::vector<Coord> row;
        row.reserve(p.vertices.size());
        for (const Point &v : p.vertices)
            row.push_back(checked_add(dot(f.normal, v), f.level));
        pm.push_back(std::move(row));
    }
    return pm;
}

} // namespace

NormalForm normal_form(const Polytope &p)
{
    if (locate(p, Point{}) != Location::Interior)
        throw origin_not_interior{};
    assert(p.n_vertices() <= 64 && p.n_facets() <= 64);

    std::vector<std::vector<Coord>> pm = pairing_matrix(p);
    CanonSearch search{pm};
    CanonSearch::State init;
    init.order.resize(p.vertices.size());
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        init.order[i] = static_cast<int>(i);
    init.block.assign(p.vertices.size(), 0);
    search.dfs(init, 0);
    assert(!search.sigmas.empty());

    MatZ bestH;
    for (const std::vector<int> &sigma : search.sigmas) {
        MatZ m(p.dim, static_cast<int>(p.vertices.size()));
        for (int j = 0; j < m.cols; ++j)
            for (int i = 0; i < p.dim; ++i)
                m.at(i, j) = p.vertices[static_cast<std::size_t>(
                        sigma[static_cast<std::size_t>(j)])][i];
        MatZ h = hermite_normal_form(m).h;
        if (bestH.rows == 0 || h.a > bestH.a)
            bestH = std::move(h);
    }

    NormalForm nf;
    nf.matrix = std::move(bestH);
    nf.key = nf_serialize(nf.matrix);
    return nf;
}

Fingerprint fingerprint(const Polytope &p)
{
    Fingerprint fp;
    fp.n_vertices = p.n_vertices();
    LatticePoints pts = lattice_points(p);
    fp.n_lattice_points =
            static_cast<int>(pts.interior.size() + pts.boundary.size());
    fp.volume = normalized_volume(p);
    for (const Facet &f : p.facets)
        fp.levels.push_back(f.level);
    std::sort(fp.levels.begin(), fp.levels.end());
    return fp;
}

bool is_equivalent(const Polytope &p, const Polytope &q)
{
    if (p.dim != q.dim)
        return false;
    if (fingerprint(p) != fingerprint(q))
        return false;
    return normal_form(p).key == normal_form(q).key;
}

std::string nf_serialize(const MatZ &m)
{
    std::string s;
    s.reserve(static_cast<std::size_t>(m.rows) * m.cols * 3);
    for (int i = 0; i < m.rows; ++i) {
        if (i)
            s += ';';
        for (int j = 0; j < m.cols; ++j) {
            if (j)
                s += ' ';
            s += std::to_string(m.at(i, j));
        }
    }
    return s;
}

MatZ nf_parse(const std::string &key, int dim)
{
    std::vector<std::vector<Coord>> rows;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        std::size_t end = key.find(';', pos);
        if (end == std::string::npos)
            end = key.size();
        std::vector<Coord> row;
        std::size_t p = pos;
        while (p < end) {
            std::size_t sp = key.find(' ', p);
            if (sp == std::string::npos || sp > end)
                sp = end;
            row.push_back(std::stoll(key.substr(p, sp - p)));
            p = sp + 1;
        }
        rows.push_back(std::move(row));
        pos = end + 1;
        if (end == key.size())
            break;
    }
    if (static_cast<int>(rows.size()) != dim)
        throw error("normal form key has wrong row count");
    MatZ m(dim, static_cast<int>(rows[0].size()));
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) !=
            m.cols)
            throw error("ragged normal form key");
        for (int j = 0; j < m.cols; ++j)
            m.at(i, j) = rows[static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(j)];
    }
    return m;
}

Polytope polytope_from_nf(const MatZ &m, int dim)
{
    std::vector<Point> pts;
    for (int j = 0; j < m.cols; ++j) {
        Point p;
        for (int i = 0; i < dim; ++i)
            p[i] = m.at(i, j);
        pts.push_back(p);
    }
    return convex_hull(std::move(pts), dim);
}

} // namespace fano
