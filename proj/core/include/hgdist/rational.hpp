#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace hgdist {

// Exact arithmetic backbone. Doubles are dyadic, so Rational(x) is lossless
// for any finite double; the reverse conversion rounds.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Rational rat(std::int64_t num, std::int64_t den) { return Rational(num, den); }

// 2^-e as an exact rational, for thresholds like 2^{-3k^2} that underflow doubles.
inline Rational pow2_inv(unsigned e) {
    BigInt d = BigInt(1) << e;
    return Rational(BigInt(1), d);
}

inline std::string rat_str(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace hgdist
