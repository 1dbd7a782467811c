#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hadamard {

/// Base class for failures caused by the mathematical input (as opposed to
/// programming errors, which use the std exception types directly).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force enumeration would exceed the configured element cap.
class CapExceeded : public DomainError {
 public:
  CapExceeded(std::size_t requested, std::size_t cap)
      : DomainError("enumeration of " + std::to_string(requested) +
                    " elements exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Input matrix fails the Hadamard check.
class NotHadamard : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The singular spectrum has no clear gap at the rank cut, so the integer
/// rank cannot be certified.
class AmbiguousRank : public DomainError {
 public:
  AmbiguousRank(std::string what, std::vector<double> spectrum, double gap_ratio)
      : DomainError(std::move(what)), spectrum_(std::move(spectrum)), gap_ratio_(gap_ratio) {}

  const std::vector<double>& spectrum() const noexcept { return spectrum_; }
  double gap_ratio() const noexcept { return gap_ratio_; }

 private:
  std::vector<double> spectrum_;
  double gap_ratio_;
};

/// Two independent computations that must agree did not.
class InconsistencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed textual input; `position` is a 0-based character offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hadamard
