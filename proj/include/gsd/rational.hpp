#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gsd {

// Exact arithmetic over Q. Coefficients stay rational through every
// computation; nothing in this library ever rounds.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p" or "p/q" with q > 0 and gcd(|p|, q) = 1.
inline std::string ratio_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

} // namespace gsd
