#pragma once
// ============================================================================
// Exact arithmetic support: arbitrary-precision integers, exact rationals,
// and a logarithm that stays accurate for huge integers.
// ============================================================================

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace farey {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ln(x) for a positive integer of any size.  Write x = m * 2^e with
// 2^63 <= m < 2^64 (top 64 bits), then ln x = ln(m) + e*ln2.  The truncation
// to 64 bits contributes a relative error below 2^-63, the double conversion
// below 2^-53, so the result is correct to about 2^-52 relative.
inline double log_of_integer(const BigInt& x) {
    if (x <= 0)
        throw std::domain_error("log_of_integer: argument must be positive");
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 62)
        return std::log(static_cast<double>(x.convert_to<std::int64_t>()));
    const BigInt top = x >> (bits - 64);
    const double m = top.convert_to<double>();
    return std::log(m) + static_cast<double>(bits - 64) * std::numbers::ln2;
}

inline double log_of_integer(std::int64_t x) {
    if (x <= 0)
        throw std::domain_error("log_of_integer: argument must be positive");
    return std::log(static_cast<double>(x));
}

// Exact p^n for small bases, used for activities and closed forms.
inline Rational rational_pow(const Rational& base, int n) {
    Rational r = 1;
    Rational b = base;
    int e = n < 0 ? -n : n;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    if (n < 0) r = Rational(1) / r;
    return r;
}

inline BigInt integer_pow(std::int64_t base, int n) {
    BigInt r = 1;
    BigInt b = base;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

} // namespace farey
