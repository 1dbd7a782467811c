#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>

namespace hadamard {

using Complex = std::complex<double>;

/// A root of unity e^{2 pi i num/den}, stored as a reduced fraction of a
/// full turn with 0 <= num < den.
class Turn {
 public:
  constexpr Turn() = default;

  Turn(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("turn denominator must be nonzero");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }

  Turn operator+(const Turn& o) const {
    const std::int64_t l = std::lcm(den_, o.den_);
    return Turn(num_ * (l / den_) + o.num_ * (l / o.den_), l);
  }
  Turn operator-() const { return Turn(-num_, den_); }
  Turn operator-(const Turn& o) const { return *this + (-o); }
  /// Integer multiple: the k-th power of the root of unity.
  Turn operator*(std::int64_t k) const { return Turn((num_ % den_) * (k % den_), den_); }

  bool is_zero() const noexcept { return num_ == 0; }

  /// Numeric value; multiples of a quarter turn are returned exactly.
  Complex value() const {
    if ((4 * num_) % den_ == 0) {
      switch ((4 * num_) / den_) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    return {std::cos(angle), std::sin(angle)};
  }

  /// "num/den", or "0" for the identity.
  std::string to_string() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Turn&, const Turn&) = default;
  /// Orders by angle in [0, 1) turn.
  friend std::strong_ordering operator<=>(const Turn& a, const Turn& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A unimodular scalar, either an exact root of unity or a floating value.
using Phase = std::variant<Turn, Complex>;

inline Complex phase_value(const Phase& p) {
  return std::visit([](const auto& v) -> Complex {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Turn>) {
      return v.value();
    } else {
      return v;
    }
  }, p);
}

inline bool is_exact(const Phase& p) noexcept { return std::holds_alternative<Turn>(p); }

/// Float phase from a decimal fraction of a turn.
inline Complex phase_from_turns(double turns) {
  const double angle = 2.0 * std::numbers::pi * turns;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace hadamard
