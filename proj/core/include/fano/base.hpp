// Shared vocabulary: error types, checked 64-bit arithmetic, lattice points.
//
// All lattice coordinates are signed 64-bit integers and every arithmetic
// operation either returns the exact result or throws overflow_error.  The
// classification only ever needs tiny coordinates, so an overflow is a bug,
// not a capacity limit.

#ifndef FANO_BASE_HPP
#define FANO_BASE_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fano {

using Coord = std::int64_t;
using Wide = __int128;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct overflow_error : error {
    overflow_error() : error("integer overflow in exact arithmetic") {}
};

struct degenerate_hull : error {
    int affine_dim;
    explicit degenerate_hull(int adim)
            : error("input spans an affine subspace of dimension " +
                    std::to_string(adim)),
              affine_dim{adim}
    {
    }
};

struct origin_not_interior : error {
    origin_not_interior() : error("origin is not strictly interior") {}
};

struct not_unimodular : error {
    not_unimodular() : error("matrix determinant is not +-1") {}
};

struct not_simplex : error {
    not_simplex() : error("polytope is not a simplex") {}
};

struct no_primitive_solution : error {
    no_primitive_solution()
            : error("weights admit no primitive generating vertex set")
    {
    }
};

struct unsupported_dimension : error {
    explicit unsupported_dimension(int d)
            : error("unsupported dimension " + std::to_string(d))
    {
    }
};

struct not_fano : error {
    explicit not_fano(const std::string &what) : error(what) {}
};

struct checkpoint_corrupt : error {
    explicit checkpoint_corrupt(const std::string &what) : error(what) {}
};

struct malformed_record : error {
    std::size_t line_no;
    malformed_record(std::size_t line, const std::string &what)
            : error("line " + std::to_string(line) + ": " + what),
              line_no{line}
    {
    }
};

inline Coord checked_add(Coord a, Coord b)
{
    Coord r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error{};
    return r;
}

inline Coord checked_sub(Coord a, Coord b)
{
    Coord r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow_error{};
    return r;
}

inline Coord checked_mul(Coord a, Coord b)
{
    Coord r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error{};
    return r;
}

inline Coord checked_neg(Coord a)
{
    if (a == INT64_MIN)
        throw overflow_error{};
    return -a;
}

// Narrow a 128-bit intermediate back to 64 bits.
inline Coord narrow(Wide v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw overflow_error{};
    return static_cast<Coord>(v);
}

inline Coord gcd_nonneg(Coord a, Coord b)
{
    if (a == INT64_MIN || b == INT64_MIN)
        throw overflow_error{};
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// A lattice point in N (dimension 2 or 3; the z slot is zero in dimension 2).
struct Point {
    std::array<Coord, 3> c{0, 0, 0};

    Coord &operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    Coord operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    friend bool operator==(const Point &a, const Point &b) = default;
    friend auto operator<=>(const Point &a, const Point &b) = default;
};

inline Point add(const Point &a, const Point &b)
{
    return {{checked_add(a.c[0], b.c[0]), checked_add(a.c[1], b.c[1]),
             checked_add(a.c[2], b.c[2])}};
}

inline Point sub(const Point &a, const Point &b)
{
    return {{checked_sub(a.c[0], b.c[0]), checked_sub(a.c[1], b.c[1]),
             checked_sub(a.c[2], b.c[2])}};
}

inline Point neg(const Point &a)
{
    return {{checked_neg(a.c[0]), checked_neg(a.c[1]), checked_neg(a.c[2])}};
}

inline Point scale(Coord k, const Point &a)
{
    return {{checked_mul(k, a.c[0]), checked_mul(k, a.c[1]),
             checked_mul(k, a.c[2])}};
}

inline Coord dot(const Point &a, const Point &b)
{
    return checked_add(checked_add(checked_mul(a.c[0], b.c[0]),
                                   checked_mul(a.c[1], b.c[1])),
                       checked_mul(a.c[2], b.c[2]));
}

inline Point cross(const Point &a, const Point &b)
{
    return {{checked_sub(checked_mul(a.c[1], b.c[2]),
                         checked_mul(a.c[2], b.c[1])),
             checked_sub(checked_mul(a.c[2], b.c[0]),
                         checked_mul(a.c[0], b.c[2])),
             checked_sub(checked_mul(a.c[0], b.c[1]),
                         checked_mul(a.c[1], b.c[0]))}};
}

// det(a b c) for column vectors a, b, c.
inline Coord det3(const Point &a, const Point &b, const Point &c)
{
    return dot(a, cross(b, c));
}

// 2D cross product / det(a b); the z slots must be zero.
inline Coord det2(const Point &a, const Point &b)
{
    return checked_sub(checked_mul(a.c[0], b.c[1]),
                       checked_mul(a.c[1], b.c[0]));
}

inline bool is_zero(const Point &a)
{
    return a.c[0] == 0 && a.c[1] == 0 && a.c[2] == 0;
}

inline Coord content(const Point &a)
{
    return gcd_nonneg(gcd_nonneg(a.c[0], a.c[1]), a.c[2]);
}

// Divide out the gcd; the zero vector is left unchanged.
inline Point primitive(const Point &a)
{
    Coord g = content(a);
    if (g <= 1)
        return a;
    return {{a.c[0] / g, a.c[1] / g, a.c[2] / g}};
}

struct PointHash {
    std::size_t operator()(const Point &p) const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Coord v : p.c) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// FNV-1a over bytes; used for stable checkpoint/rule-table hashes.
inline std::uint64_t fnv1a(const void *data, std::size_t n,
                           std::uint64_t seed = 0xcbf29ce484222325ULL)
{
    const auto *p = static_cast<const unsigned char *>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string &s,
                           std::uint64_t seed = 0xcbf29ce484222325ULL)
{
    return fnv1a(s.data(), s.size(), seed);
}

} // namespace fano

#endif
