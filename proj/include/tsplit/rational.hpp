#ifndef TSPLIT_RATIONAL_HPP
#define TSPLIT_RATIONAL_HPP

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace tsplit {

// Exact arithmetic: error values and real partition parts are never floats.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_floor(const Rational& q)
{
    BigInt n = numerator(q), d = denominator(q);  // d > 0 canonical
    BigInt f = n / d;
    if (f * d > n)
        --f;
    return f;
}

inline BigInt rational_ceil(const Rational& q)
{
    BigInt n = numerator(q), d = denominator(q);
    BigInt c = n / d;
    if (c * d < n)
        ++c;
    return c;
}

inline std::int64_t to_int64(const BigInt& v) { return static_cast<std::int64_t>(v); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

}  // namespace tsplit

#endif
