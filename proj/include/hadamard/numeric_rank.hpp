#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hadamard/errors.hpp"

namespace hadamard {

struct RankInfo {
  Eigen::Index rank = 0;
  /// sigma_rank / sigma_{rank+1} (1-based); infinite when nothing sits below the cut.
  double gap_ratio = std::numeric_limits<double>::infinity();
  /// Descending.
  Eigen::VectorXd singular_values;
};

namespace detail {

inline void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
}

inline void require_rel_tol(double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("relative tolerance must lie in (0, 1)");
}

inline RankInfo rank_from_spectrum(Eigen::VectorXd sv, double rel_tol) {
  RankInfo info;
  info.singular_values = std::move(sv);
  const Eigen::Index count = info.singular_values.size();
  const double smax = count > 0 ? info.singular_values(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < count && info.singular_values(rank) > rel_tol * smax) ++rank;
  info.rank = rank;
  if (rank > 0 && rank < count && info.singular_values(rank) > 0.0) {
    info.gap_ratio = info.singular_values(rank - 1) / info.singular_values(rank);
  }
  return info;
}

}  // namespace detail

/// Numerical rank: #{sigma_i > rel_tol * sigma_max}.
inline RankInfo numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9) {
  detail::require_rel_tol(rel_tol);
  detail::require_finite(m);
  if (m.rows() == 0 || m.cols() == 0) return detail::rank_from_spectrum(Eigen::VectorXd(), rel_tol);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  if (svd.info() != Eigen::Success) throw DomainError("singular value decomposition failed");
  return detail::rank_from_spectrum(svd.singularValues(), rel_tol);
}

struct NullspaceInfo {
  RankInfo rank;
  /// Orthonormal columns spanning the numerical nullspace.
  Eigen::MatrixXd basis;
};

inline NullspaceInfo numeric_nullspace(const Eigen::MatrixXd& m, double rel_tol = 1e-9) {
  detail::require_rel_tol(rel_tol);
  detail::require_finite(m);
  NullspaceInfo out;
  if (m.rows() == 0) {
    out.rank = detail::rank_from_spectrum(Eigen::VectorXd(), rel_tol);
    out.basis = Eigen::MatrixXd::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw DomainError("singular value decomposition failed");
  out.rank = detail::rank_from_spectrum(svd.singularValues(), rel_tol);
  out.basis = svd.matrixV().rightCols(m.cols() - out.rank.rank);
  return out;
}

}  // namespace hadamard
