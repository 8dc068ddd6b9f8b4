#pragma once

// Exact arithmetic used throughout: arbitrary-precision integers for
// cardinalities and ranks, reduced rationals for probabilities and
// partial sums, and a 50-digit decimal type for asymptotic checks.

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace guesslab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Decimal50 = boost::multiprecision::cpp_dec_float_50;

inline BigInt pow2(std::size_t n) { return BigInt(1) << n; }

// C(n, k) by incremental exact multiply/divide.
inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result *= BigInt(n - k + i);
        result /= BigInt(i);
    }
    return result;
}

// Canonical "p/q" form of a reduced rational.
inline std::string fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// 17 significant digits: enough for a double to round-trip.
inline std::string float17_string(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline std::string float17_string(const Rational& r) {
    return float17_string(r.convert_to<double>());
}

}  // namespace guesslab
