#pragma once

// Exact rational arithmetic used wherever results must be bit-for-bit
// reproducible and free of rounding: dual certificates, QUBO/Ising
// coefficients, oracle objective values. boost::rational keeps values
// normalized (gcd-reduced, positive denominator), which bounds growth for the
// magnitudes appearing here (integer problem data, penalty weights, and
// denominators that are small powers of two).

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace daqc {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Nearest rational with denominator 2^bits. Used to turn a floating-point
// multiplier into an exact value before certifying bounds with it.
inline Rational rational_from_double(double x, int bits = 20) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    const long long den = 1LL << bits;
    const double scaled = x * static_cast<double>(den);
    if (std::abs(scaled) > 9.0e18) throw std::invalid_argument("rational_from_double: out of range");
    return Rational(static_cast<long long>(std::llround(scaled)), den);
}

}  // namespace daqc
