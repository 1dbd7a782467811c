#pragma once

// Undephased and dephased defects as certified numerical coranks of the
// tangent system, plus nullspace bases and the Fourier P-parametrization check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hadamard/construct.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/group.hpp"
#include "hadamard/numeric_rank.hpp"
#include "hadamard/tangent.hpp"

namespace hadamard {

struct DefectOptions {
  /// sigma_i counts toward the rank iff sigma_i > rel_tol * sigma_max.
  double rel_tol = 1e-9;
  /// Minimum sigma_rank / sigma_{rank+1} for a certified rank.
  double gap_threshold = 1e6;
};

struct DefectReport {
  std::size_t n = 0;
  std::int64_t undephased = 0;
  /// d - 2N + 1.
  std::int64_t dephased = 0;
  std::vector<double> singular_values;
  double gap_ratio = std::numeric_limits<double>::infinity();
  double rel_tol = 0.0;
  double gap_threshold = 0.0;
  bool certified = false;
};

namespace detail {

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline std::string ambiguity_message(const std::string& what, const RankInfo& info) {
  std::ostringstream os;
  os << "ambiguous rank for " << what << ": rank " << info.rank << " with gap ratio " << info.gap_ratio;
  return os.str();
}

inline void require_certified(const RankInfo& info, const DefectOptions& opts, const std::string& what) {
  if (info.gap_ratio < opts.gap_threshold) {
    throw AmbiguousRank(ambiguity_message(what, info), to_std(info.singular_values), info.gap_ratio);
  }
}

}  // namespace detail

/// Corank of a tangent system (relative to its unknown count) with certification.
inline DefectReport defect_of_system(const TangentSystem& sys, const DefectOptions& opts = {}) {
  const RankInfo info = numeric_rank(sys.coefficients, opts.rel_tol);
  DefectReport rep;
  rep.n = sys.n;
  rep.undephased = static_cast<std::int64_t>(sys.unknowns() - info.rank);
  rep.dephased = rep.undephased - 2 * static_cast<std::int64_t>(sys.n) + 1;
  rep.singular_values = detail::to_std(info.singular_values);
  rep.gap_ratio = info.gap_ratio;
  rep.rel_tol = opts.rel_tol;
  rep.gap_threshold = opts.gap_threshold;
  rep.certified = info.gap_ratio >= opts.gap_threshold;
  return rep;
}

/// Like undephased_defect but reports an uncertified rank through the flag
/// instead of throwing.
inline DefectReport assess_defect(const HadamardMatrix& h, const DefectOptions& opts = {}) {
  return defect_of_system(tangent_system(h), opts);
}

/// d(H) = N^2 - rank of the tangent system. Throws AmbiguousRank when the
/// spectral gap at the cut is below the certification threshold.
inline DefectReport undephased_defect(const HadamardMatrix& h, const DefectOptions& opts = {}) {
  DefectReport rep = assess_defect(h, opts);
  if (!rep.certified) {
    throw AmbiguousRank("ambiguous rank for " + h.provenance() + ": gap ratio " + std::to_string(rep.gap_ratio),
                        rep.singular_values, rep.gap_ratio);
  }
  return rep;
}

/// d'(H), computed as d(H) - 2N + 1 and as the nullity of the system with the
/// first row and column of A forced to zero; the two must agree.
inline std::int64_t dephased_defect(const HadamardMatrix& h, const DefectOptions& opts = {}) {
  const TangentSystem sys = tangent_system(h);
  const RankInfo full = numeric_rank(sys.coefficients, opts.rel_tol);
  detail::require_certified(full, opts, h.provenance());
  const TangentSystem restricted = dephased_restriction(sys);
  const RankInfo part = numeric_rank(restricted.coefficients, opts.rel_tol);
  detail::require_certified(part, opts, h.provenance() + " (dephased)");
  const auto n = static_cast<std::int64_t>(h.size());
  const std::int64_t via_relation = (n * n - full.rank) - 2 * n + 1;
  const std::int64_t via_restriction = restricted.unknowns() - part.rank;
  if (via_relation != via_restriction) {
    throw InconsistencyError("dephased defect paths disagree for " + h.provenance() + ": " +
                             std::to_string(via_relation) + " vs " + std::to_string(via_restriction));
  }
  return via_relation;
}

/// True certifies isolation among dephased matrices; false is inconclusive.
inline bool isolation_flag(const HadamardMatrix& h, const DefectOptions& opts = {}) {
  return dephased_defect(h, opts) == 0;
}

/// Orthonormal basis of the numerical tangent space, each element an N x N
/// real matrix; each satisfies the tangent equations to 10 * rel_tol * sigma_max.
inline std::vector<Eigen::MatrixXd> tangent_basis(const HadamardMatrix& h, const DefectOptions& opts = {}) {
  const TangentSystem sys = tangent_system(h);
  const NullspaceInfo ns = numeric_nullspace(sys.coefficients, opts.rel_tol);
  detail::require_certified(ns.rank, opts, h.provenance());
  const auto n = static_cast<Eigen::Index>(h.size());
  const double smax = ns.rank.singular_values.size() > 0 ? ns.rank.singular_values(0) : 0.0;
  const double bound = 10.0 * opts.rel_tol * smax;
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(ns.basis.cols()));
  for (Eigen::Index c = 0; c < ns.basis.cols(); ++c) {
    const Eigen::VectorXd v = ns.basis.col(c);
    const double residual = sys.coefficients.rows() > 0 ? (sys.coefficients * v).cwiseAbs().maxCoeff() : 0.0;
    if (residual > bound) {
      throw InconsistencyError("tangent basis element " + std::to_string(c) + " has residual " +
                               std::to_string(residual));
    }
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = v(i * n + j);
    out.push_back(std::move(a));
  }
  return out;
}

struct FourierPReport {
  std::size_t tangent_dimension = 0;
  std::size_t p_space_dimension = 0;
  BigInt formula_dimension = 0;
  /// Tangent basis mapped by A -> P = A F.
  double max_translation_residual = 0.0;   // |P_ij - P_{i+j,j}|
  double max_conjugation_residual = 0.0;   // |P_ij - conj(P_{i,-j})|
  /// P-space basis mapped by P -> A = P F^* / |G|.
  double max_realness_residual = 0.0;      // |Im A|
  double max_equation_residual = 0.0;
  std::size_t mapped_rank = 0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Normalization of the P-correspondence: P = A F and A = P F^* / |G|.
inline Eigen::MatrixXcd p_from_tangent(const Eigen::MatrixXd& a, const Eigen::MatrixXcd& f) {
  return a.cast<Complex>() * f;
}

inline Eigen::MatrixXcd tangent_from_p(const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& f) {
  return p * f.adjoint() / static_cast<double>(f.rows());
}

/// Real basis of the P-space: one element per real class, two per complex class.
inline std::vector<Eigen::MatrixXcd> p_space_basis(const FiniteAbelianGroup& group) {
  const PSpaceClasses cls = p_space_classes(group);
  const auto n = static_cast<Eigen::Index>(cls.order);
  std::vector<Eigen::MatrixXcd> out;
  for (std::size_t c = 0; c < cls.class_count(); ++c) {
    const int variants = cls.real_class[c] ? 1 : 2;
    for (int v = 0; v < variants; ++v) {
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
      const Complex value = v == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
      for (Eigen::Index e = 0; e < n * n; ++e) {
        if (cls.class_of[static_cast<std::size_t>(e)] != c) continue;
        p(e / n, e % n) = cls.conjugated[static_cast<std::size_t>(e)] ? std::conj(value) : value;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// Checks both directions of the correspondence between the tangent space of
/// F_G and the P-space. Throws InconsistencyError when a residual exceeds
/// `tol` or the dimensions disagree.
inline FourierPReport fourier_P_check(const FiniteAbelianGroup& group, const DefectOptions& opts = {},
                                      double tol = 1e-8) {
  const HadamardMatrix fg = fourier_matrix(group);
  const Eigen::MatrixXcd f = fg.to_eigen();
  const auto n = f.rows();
  const auto elems = group.elements();
  std::vector<Eigen::Index> neg(static_cast<std::size_t>(n));
  std::vector<std::vector<Eigen::Index>> sum(static_cast<std::size_t>(n), std::vector<Eigen::Index>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i) {
    neg[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(group.index_of(group.negate(elems[static_cast<std::size_t>(i)])));
    for (Eigen::Index j = 0; j < n; ++j)
      sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<Eigen::Index>(group.index_of(group.add(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)])));
  }

  FourierPReport rep;
  rep.tolerance = tol;
  rep.formula_dimension = fourier_defect(group);

  const auto basis = tangent_basis(fg, opts);
  rep.tangent_dimension = basis.size();
  for (const auto& a : basis) {
    const Eigen::MatrixXcd p = p_from_tangent(a, f);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex pij = p(i, j);
        rep.max_translation_residual = std::max(rep.max_translation_residual,
            std::abs(pij - p(sum[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], j)));
        rep.max_conjugation_residual = std::max(rep.max_conjugation_residual,
            std::abs(pij - std::conj(p(i, neg[static_cast<std::size_t>(j)]))));
      }
    }
  }

  const auto pbasis = p_space_basis(group);
  rep.p_space_dimension = pbasis.size();
  Eigen::MatrixXd stacked(n * n, static_cast<Eigen::Index>(pbasis.size()));
  for (std::size_t c = 0; c < pbasis.size(); ++c) {
    const Eigen::MatrixXcd a = tangent_from_p(pbasis[c], f);
    rep.max_realness_residual = std::max(rep.max_realness_residual, a.imag().cwiseAbs().maxCoeff());
    const Eigen::MatrixXd ar = a.real();
    rep.max_equation_residual = std::max(rep.max_equation_residual, tangent_residual(fg, ar));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) stacked(i * n + j, static_cast<Eigen::Index>(c)) = ar(i, j);
  }
  rep.mapped_rank = static_cast<std::size_t>(numeric_rank(stacked, opts.rel_tol).rank);

  const bool residuals_ok = rep.max_translation_residual <= tol && rep.max_conjugation_residual <= tol &&
                            rep.max_realness_residual <= tol && rep.max_equation_residual <= tol;
  const bool dims_ok = rep.tangent_dimension == rep.p_space_dimension &&
                       BigInt(rep.tangent_dimension) == rep.formula_dimension &&
                       rep.mapped_rank == rep.p_space_dimension;
  rep.passed = residuals_ok && dims_ok;
  if (!rep.passed) {
    std::ostringstream os;
    os << "P-correspondence check failed for " << group.to_string() << ": dims tangent=" << rep.tangent_dimension
       << " p-space=" << rep.p_space_dimension << " formula=" << rep.formula_dimension
       << " mapped-rank=" << rep.mapped_rank << "; residuals " << rep.max_translation_residual << ", "
       << rep.max_conjugation_residual << ", " << rep.max_realness_residual << ", " << rep.max_equation_residual;
    throw InconsistencyError(os.str());
  }
  return rep;
}

}  // namespace hadamard
