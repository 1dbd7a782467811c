#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hadamard {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction with positive denominator; cpp_rational normalizes on
/// every operation.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return Rational(num, den);
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// p^e for a possibly negative exponent.
inline Rational rational_pow(std::int64_t base, std::int64_t exponent) {
  BigInt b = base;
  BigInt magnitude = boost::multiprecision::pow(b, static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(magnitude);
  return Rational(BigInt(1), magnitude);
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

}  // namespace hadamard
