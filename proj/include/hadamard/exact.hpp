#pragma once

// Exact rational nullity of the tangent system of a Butson matrix (all
// entries q-th roots of unity). Each complex equation is expanded in the
// power basis of Q(zeta_q), i.e. modulo the cyclotomic polynomial Phi_q; a
// rational solution must annihilate every coordinate.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hadamard/construct.hpp"
#include "hadamard/cyclotomic.hpp"
#include "hadamard/defect.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/rational.hpp"

namespace hadamard {

inline constexpr std::size_t kDefaultCyclotomicCap = 64;

class ExactSystem {
 public:
  ExactSystem(std::size_t n, std::int64_t q, std::vector<std::vector<IntPoly>> pair_weights)
      : n_(n), q_(q), degree_(cyclotomic_degree(q)), weights_(std::move(pair_weights)) {}

  std::size_t n() const noexcept { return n_; }
  std::int64_t root_order() const noexcept { return q_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t pair_count() const noexcept { return weights_.size(); }
  std::size_t unknowns() const noexcept { return n_ * n_; }
  std::size_t integer_rows() const noexcept { return pair_count() * degree_; }

  /// (i, j) of pair p; pairs are the ordered i != j in lexicographic order.
  std::pair<std::size_t, std::size_t> pair(std::size_t p) const {
    const std::size_t i = p / (n_ - 1);
    const std::size_t r = p % (n_ - 1);
    return {i, r < i ? r : r + 1};
  }

  /// Coefficient of unknown A_{ab} (index a*N+b) in the equation of pair p,
  /// as a power-basis vector of length phi(q).
  IntPoly coefficient(std::size_t p, std::size_t unknown) const {
    const auto [i, j] = pair(p);
    const std::size_t a = unknown / n_;
    const std::size_t b = unknown % n_;
    IntPoly out(degree_, 0);
    if (a == i) out = weights_[p][b];
    if (a == j) {
      for (std::size_t t = 0; t < degree_; ++t) out[t] -= weights_[p][b][t];
    }
    return out;
  }

  /// Dense integer matrix, row p*phi(q) + t holding coordinate t of pair p.
  std::vector<std::vector<BigInt>> integer_matrix() const {
    std::vector<std::vector<BigInt>> rows(integer_rows(), std::vector<BigInt>(unknowns()));
    for (std::size_t p = 0; p < pair_count(); ++p) {
      const auto [i, j] = pair(p);
      for (std::size_t b = 0; b < n_; ++b) {
        for (std::size_t t = 0; t < degree_; ++t) {
          rows[p * degree_ + t][i * n_ + b] += weights_[p][b][t];
          rows[p * degree_ + t][j * n_ + b] -= weights_[p][b][t];
        }
      }
    }
    return rows;
  }

  /// Complex weights with x = e^{2 pi i/q} substituted, one row per pair.
  Eigen::MatrixXcd evaluate() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(pair_count()), static_cast<Eigen::Index>(unknowns()));
    std::vector<Complex> powers(degree_);
    for (std::size_t t = 0; t < degree_; ++t) powers[t] = Turn(static_cast<std::int64_t>(t), q_).value();
    for (std::size_t p = 0; p < pair_count(); ++p) {
      for (std::size_t u = 0; u < unknowns(); ++u) {
        const IntPoly c = coefficient(p, u);
        Complex s = 0.0;
        for (std::size_t t = 0; t < degree_; ++t) s += static_cast<double>(c[t]) * powers[t];
        out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(u)) = s;
      }
    }
    return out;
  }

 private:
  std::size_t n_;
  std::int64_t q_;
  std::size_t degree_;
  /// weights_[p][b] = H_ib conj(H_jb) reduced mod Phi_q; weight of A_ib, minus that of A_jb.
  std::vector<std::vector<IntPoly>> weights_;
};

/// Expands sum_k H_ik conj(H_jk)(A_ik - A_jk) = 0 for every ordered pair i != j
/// over Z[x]/Phi_q with q the lcm of the entry denominators.
inline ExactSystem build_exact_system(const HadamardMatrix& h, std::size_t degree_cap = kDefaultCyclotomicCap) {
  if (!h.is_exact()) throw DomainError("exact system requires an exact-phase matrix");
  const std::int64_t q = h.common_order();
  const std::size_t deg = cyclotomic_degree(q);
  if (deg > degree_cap) throw CapExceeded(deg, degree_cap);
  const std::size_t n = h.size();
  std::vector<std::vector<IntPoly>> weights;
  weights.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<IntPoly> row;
      row.reserve(n);
      for (std::size_t b = 0; b < n; ++b) {
        const Turn d = h.turn(i, b) - h.turn(j, b);
        row.push_back(reduced_power(q, d.num() * (q / d.den())));
      }
      weights.push_back(std::move(row));
    }
  }
  return ExactSystem(n, q, std::move(weights));
}

/// Rank over Q by fraction-free (Bareiss) elimination. The matrix is consumed.
inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  // Zero rows carry no information; dropping them first keeps the work proportional to the real system.
  m.erase(std::remove_if(m.begin(), m.end(), [](const std::vector<BigInt>& r) {
            return std::all_of(r.begin(), r.end(), [](const BigInt& v) { return v == 0; });
          }), m.end());
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const BigInt& p = m[rank][c];
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      const BigInt f = m[r][c];
      for (std::size_t k = c + 1; k < cols; ++k) {
        m[r][k] = (p * m[r][k] - f * m[rank][k]) / prev;
      }
      m[r][c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Dimension of the space of rational solutions.
inline std::size_t rational_nullity(const ExactSystem& s) {
  return s.unknowns() - bareiss_rank(s.integer_matrix());
}

enum class ConjectureStatus { kSupported, kRefutedAtInstance };

inline const char* to_string(ConjectureStatus s) {
  return s == ConjectureStatus::kSupported ? "SUPPORTED" : "REFUTED-at-this-instance";
}

struct ConjectureVerdict {
  std::int64_t root_order = 1;
  std::size_t degree = 1;
  std::size_t rational_nullity = 0;
  std::int64_t numeric_defect = 0;
  ConjectureStatus status = ConjectureStatus::kSupported;
};

/// Compares the rational nullity with the certified numeric defect. Rational
/// solutions are real solutions, so rational > numeric signals a bug.
inline ConjectureVerdict conjecture_check(const HadamardMatrix& h, const DefectOptions& opts = {},
                                          std::size_t degree_cap = kDefaultCyclotomicCap) {
  const ExactSystem s = build_exact_system(h, degree_cap);
  ConjectureVerdict v;
  v.root_order = s.root_order();
  v.degree = s.degree();
  v.rational_nullity = rational_nullity(s);
  v.numeric_defect = undephased_defect(h, opts).undephased;
  if (static_cast<std::int64_t>(v.rational_nullity) > v.numeric_defect) {
    throw InconsistencyError("rational nullity " + std::to_string(v.rational_nullity) + " exceeds numeric defect " +
                             std::to_string(v.numeric_defect) + " for " + h.provenance());
  }
  v.status = static_cast<std::int64_t>(v.rational_nullity) == v.numeric_defect ? ConjectureStatus::kSupported
                                                                                : ConjectureStatus::kRefutedAtInstance;
  return v;
}

}  // namespace hadamard
