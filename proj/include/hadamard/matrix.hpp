#pragma once

#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hadamard/phase.hpp"

namespace hadamard {

/// Rectangular array of phases in one of two representations: exact roots
/// of unity (turns) or floating complex values. Row-major.
class PhaseArray {
 public:
  PhaseArray() = default;

  PhaseArray(std::size_t rows, std::size_t cols, std::vector<Turn> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_size(std::get<0>(entries_).size());
  }

  PhaseArray(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_size(std::get<1>(entries_).size());
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_exact() const noexcept { return entries_.index() == 0; }

  Complex operator()(std::size_t i, std::size_t j) const {
    if (is_exact()) return std::get<0>(entries_)[i * cols_ + j].value();
    return std::get<1>(entries_)[i * cols_ + j];
  }

  Phase phase(std::size_t i, std::size_t j) const {
    if (is_exact()) return std::get<0>(entries_)[i * cols_ + j];
    return std::get<1>(entries_)[i * cols_ + j];
  }

  const Turn& turn(std::size_t i, std::size_t j) const { return turns()[i * cols_ + j]; }

  const std::vector<Turn>& turns() const {
    if (!is_exact()) throw std::logic_error("phase array is not in exact representation");
    return std::get<0>(entries_);
  }

  const std::vector<Complex>& complex_entries() const {
    if (is_exact()) throw std::logic_error("phase array is not in floating representation");
    return std::get<1>(entries_);
  }

  /// One-way conversion to the floating representation.
  PhaseArray to_complex() const {
    if (!is_exact()) return *this;
    std::vector<Complex> out;
    out.reserve(rows_ * cols_);
    for (const auto& t : std::get<0>(entries_)) out.push_back(t.value());
    return PhaseArray(rows_, cols_, std::move(out));
  }

  Eigen::MatrixXcd to_eigen() const {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j);
    }
    return m;
  }

  /// lcm of the turn denominators (exact representation only).
  std::int64_t common_order() const {
    std::int64_t q = 1;
    for (const auto& t : turns()) q = std::lcm(q, t.den());
    return q;
  }

 private:
  void check_size(std::size_t n) const {
    if (n != rows_ * cols_) throw std::invalid_argument("entry count does not match dimensions");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::variant<std::vector<Turn>, std::vector<Complex>> entries_;
};

/// Square phase matrix with a provenance tag naming its construction.
/// Hadamard validity is not enforced here; see verify_hadamard.
class HadamardMatrix {
 public:
  HadamardMatrix() = default;

  HadamardMatrix(PhaseArray entries, std::string provenance)
      : entries_(std::move(entries)), provenance_(std::move(provenance)) {
    if (entries_.rows() != entries_.cols()) throw std::invalid_argument("Hadamard matrix must be square");
  }

  static HadamardMatrix from_turns(std::size_t n, std::vector<Turn> entries, std::string provenance) {
    return HadamardMatrix(PhaseArray(n, n, std::move(entries)), std::move(provenance));
  }

  static HadamardMatrix from_complex(std::size_t n, std::vector<Complex> entries, std::string provenance) {
    return HadamardMatrix(PhaseArray(n, n, std::move(entries)), std::move(provenance));
  }

  std::size_t size() const noexcept { return entries_.rows(); }
  bool is_exact() const noexcept { return entries_.is_exact(); }
  Complex operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  Phase phase(std::size_t i, std::size_t j) const { return entries_.phase(i, j); }
  const Turn& turn(std::size_t i, std::size_t j) const { return entries_.turn(i, j); }
  const PhaseArray& entries() const noexcept { return entries_; }
  const std::string& provenance() const noexcept { return provenance_; }

  HadamardMatrix to_complex() const { return HadamardMatrix(entries_.to_complex(), provenance_); }
  Eigen::MatrixXcd to_eigen() const { return entries_.to_eigen(); }
  std::int64_t common_order() const { return entries_.common_order(); }

 private:
  PhaseArray entries_;
  std::string provenance_;
};

/// M x N matrix of unimodular deformation parameters L_{aj}.
struct DeformationParameters {
  PhaseArray values;

  std::size_t rows() const noexcept { return values.rows(); }
  std::size_t cols() const noexcept { return values.cols(); }
};

}  // namespace hadamard
