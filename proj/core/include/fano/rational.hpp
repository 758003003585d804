// Exact rationals on 64-bit numerator/denominator, always in lowest terms
// with a positive denominator.

#ifndef FANO_RATIONAL_HPP
#define FANO_RATIONAL_HPP

#include "fano/base.hpp"

#include <compare>
#include <string>

namespace fano {

struct Rational {
    Coord num = 0;
    Coord den = 1;

    Rational() = default;
    Rational(Coord n, Coord d = 1)
    {
        if (d == 0)
            throw error("rational with zero denominator");
        if (d < 0) {
            n = checked_neg(n);
            d = checked_neg(d);
        }
        Coord g = gcd_nonneg(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num = n;
        den = d;
    }

    friend Rational operator+(const Rational &a, const Rational &b)
    {
        return {checked_add(checked_mul(a.num, b.den),
                            checked_mul(b.num, a.den)),
                checked_mul(a.den, b.den)};
    }

    friend Rational operator-(const Rational &a, const Rational &b)
    {
        return {checked_sub(checked_mul(a.num, b.den),
                            checked_mul(b.num, a.den)),
                checked_mul(a.den, b.den)};
    }

    friend Rational operator*(const Rational &a, const Rational &b)
    {
        return {checked_mul(a.num, b.num), checked_mul(a.den, b.den)};
    }

    friend Rational operator/(const Rational &a, const Rational &b)
    {
        if (b.num == 0)
            throw error("rational division by zero");
        return {checked_mul(a.num, b.den), checked_mul(a.den, b.num)};
    }

    friend bool operator==(const Rational &a, const Rational &b) = default;

    friend std::strong_ordering operator<=>(const Rational &a,
                                            const Rational &b)
    {
        Wide lhs = static_cast<Wide>(a.num) * b.den;
        Wide rhs = static_cast<Wide>(b.num) * a.den;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    bool is_integer() const { return den == 1; }

    std::string str() const
    {
        if (den == 1)
            return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "n" or "n/d"; throws fano::error on junk.
Rational parse_rational(const std::string &s);

} // namespace fano

#endif
