#include "fano/matrix.hpp"

#include <cassert>
#include <cstdlib>

namespace fano {

namespace {

void add_row_multiple(MatZ &m, int dst, int src, Coord q)
{
    if (q == 0)
        return;
    for (int c = 0; c < m.cols; ++c)
        m.at(dst, c) = checked_sub(m.at(dst, c), checked_mul(q, m.at(src, c)));
}

void swap_rows(MatZ &m, int i, int j)
{
    if (i == j)
        return;
    for (int c = 0; c < m.cols; ++c)
        std::swap(m.at(i, c), m.at(j, c));
}

void negate_row(MatZ &m, int i)
{
    for (int c = 0; c < m.cols; ++c)
        m.at(i, c) = checked_neg(m.at(i, c));
}

// Floor division, exact for all arguments.
Coord floor_div(Coord a, Coord b)
{
    assert(b > 0);
    Coord q = a / b;
    if (a % b != 0 && a < 0)
        --q;
    return q;
}

} // namespace

HnfResult hermite_normal_form(const MatZ &a)
{
    HnfResult r{a, MatZ::identity(a.rows)};
    MatZ &h = r.h;
    MatZ &u = r.u;

    int pivot_row = 0;
    for (int col = 0; col < h.cols && pivot_row < h.rows; ++col) {
        // Euclidean elimination below the pivot.
        while (true) {
            int best = -1;
            for (int i = pivot_row; i < h.rows; ++i) {
                Coord v = h.at(i, col);
                if (v == 0)
                    continue;
                if (best < 0 ||
                    std::abs(v) < std::abs(h.at(best, col)))
                    best = i;
            }
            if (best < 0)
                break; // column is zero from pivot_row down
            swap_rows(h, pivot_row, best);
            swap_rows(u, pivot_row, best);
            bool cleared = true;
            for (int i = pivot_row + 1; i < h.rows; ++i) {
                if (h.at(i, col) == 0)
                    continue;
                Coord q = h.at(i, col) / h.at(pivot_row, col);
                add_row_multiple(h, i, pivot_row, q);
                add_row_multiple(u, i, pivot_row, q);
                if (h.at(i, col) != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (h.at(pivot_row, col) == 0)
            continue;
        if (h.at(pivot_row, col) < 0) {
            negate_row(h, pivot_row);
            negate_row(u, pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for (int i = 0; i < pivot_row; ++i) {
            Coord q = floor_div(h.at(i, col), h.at(pivot_row, col));
            add_row_multiple(h, i, pivot_row, q);
            add_row_multiple(u, i, pivot_row, q);
        }
        ++pivot_row;
    }
    return r;
}

Coord sublattice_index(const std::vector<Point> &pts, int dim)
{
    MatZ m(static_cast<int>(pts.size()), dim);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < dim; ++j)
            m.at(i, j) = pts[static_cast<std::size_t>(i)][j];
    MatZ h = hermite_normal_form(m).h;
    Coord index = 1;
    int row = 0;
    for (int col = 0; col < dim; ++col) {
        if (row < h.rows && h.at(row, col) != 0) {
            index = checked_mul(index, h.at(row, col));
            ++row;
        } else {
            return 0; // rank deficient
        }
    }
    return index;
}

UnimodularMap UnimodularMap::identity(int dim)
{
    UnimodularMap u;
    u.dim = dim;
    return u;
}

UnimodularMap UnimodularMap::from_rows(
        int dim, const std::array<std::array<Coord, 3>, 3> &rows)
{
    UnimodularMap u;
    u.dim = dim;
    u.m = rows;
    if (dim == 2) {
        u.m[0][2] = u.m[1][2] = u.m[2][0] = u.m[2][1] = 0;
        u.m[2][2] = 1;
    }
    Coord d = u.det();
    if (d != 1 && d != -1)
        throw not_unimodular{};
    return u;
}

Coord UnimodularMap::det() const
{
    Point r0{{m[0][0], m[0][1], m[0][2]}};
    Point r1{{m[1][0], m[1][1], m[1][2]}};
    Point r2{{m[2][0], m[2][1], m[2][2]}};
    return det3(r0, r1, r2);
}

Point UnimodularMap::apply(const Point &p) const
{
    Point r;
    for (int i = 0; i < 3; ++i) {
        Coord s = 0;
        for (int j = 0; j < 3; ++j)
            s = checked_add(s, checked_mul(m[static_cast<std::size_t>(i)]
                                            [static_cast<std::size_t>(j)],
                                           p[j]));
        r[i] = s;
    }
    return r;
}

UnimodularMap UnimodularMap::inverse() const
{
    Coord d = det();
    assert(d == 1 || d == -1);
    // Adjugate divided by the determinant.
    UnimodularMap r;
    r.dim = dim;
    auto cof = [&](int i, int j) {
        int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        auto e = [&](int a, int b) {
            return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        };
        return checked_sub(checked_mul(e(i1, j1), e(i2, j2)),
                           checked_mul(e(i1, j2), e(i2, j1)));
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    d * cof(j, i);
    return r;
}

UnimodularMap UnimodularMap::compose(const UnimodularMap &rhs) const
{
    UnimodularMap r;
    r.dim = dim;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Coord s = 0;
            for (int k = 0; k < 3; ++k)
                s = checked_add(
                        s, checked_mul(m[static_cast<std::size_t>(i)]
                                        [static_cast<std::size_t>(k)],
                                       rhs.m[static_cast<std::size_t>(k)]
                                            [static_cast<std::size_t>(j)]));
            r.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
    return r;
}

} // namespace fano
