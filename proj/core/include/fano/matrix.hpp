// Small dense integer matrices, Hermite normal form, sublattice indices and
// unimodular maps.  Everything here is exact; row operations are tracked in
// a unimodular transform.

#ifndef FANO_MATRIX_HPP
#define FANO_MATRIX_HPP

#include "fano/base.hpp"

#include <vector>

namespace fano {

struct MatZ {
    int rows = 0;
    int cols = 0;
    std::vector<Coord> a; // row-major

    MatZ() = default;
    MatZ(int r, int c) : rows{r}, cols{c}, a(static_cast<std::size_t>(r) * c, 0)
    {
    }

    Coord &at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    Coord at(int r, int c) const
    {
        return a[static_cast<std::size_t>(r) * cols + c];
    }

    static MatZ identity(int n)
    {
        MatZ m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const MatZ &, const MatZ &) = default;
};

struct HnfResult {
    MatZ h; // H = U * A, the row-style Hermite normal form
    MatZ u; // unimodular
};

// Row-style HNF: pivots positive, zero below each pivot, entries above a
// pivot reduced into [0, pivot).  Unique for fixed A.
HnfResult hermite_normal_form(const MatZ &a);

// Index of the sublattice of Z^dim spanned by the given points; 0 if they do
// not span.
Coord sublattice_index(const std::vector<Point> &pts, int dim);

// An element of GL(n,Z) acting on column vectors.
struct UnimodularMap {
    int dim = 3;
    std::array<std::array<Coord, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static UnimodularMap identity(int dim);

    // Throws not_unimodular unless det = +-1.
    static UnimodularMap from_rows(int dim,
                                   const std::array<std::array<Coord, 3>, 3> &rows);

    Coord det() const;
    Point apply(const Point &p) const;
    UnimodularMap inverse() const;
    UnimodularMap compose(const UnimodularMap &rhs) const; // this * rhs
};

} // namespace fano

#endif
