#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace nie {

/// Arbitrary-precision integer for code cardinalities, which overflow 64 bits
/// already at moderate lengths (|C| = q^{en - sum T_i}).
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational arithmetic for Singleton bounds; never floating point.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt b = base;
  return boost::multiprecision::pow(b, static_cast<unsigned>(exp));
}

inline std::string big_str(const BigInt& v) { return v.str(); }

/// Floor of a non-negative rational.
inline BigInt rational_floor(const Rational& r) {
  return boost::multiprecision::numerator(r) /
         boost::multiprecision::denominator(r);
}

}  // namespace nie
