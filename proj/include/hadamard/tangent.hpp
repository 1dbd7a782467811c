#pragma once

// Real linear systems whose solution space is the enveloping tangent space
// at a complex Hadamard matrix H. Unknowns are the real entries A_{ab} of an
// N x N matrix in row-major order; A solves the system iff
//   sum_k H_ik conj(H_jk) (A_ik - A_jk) = 0   for all i != j.

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hadamard/construct.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/matrix.hpp"

namespace hadamard {

struct TangentSystem {
  /// One row per equation, N^2 columns (or (N-1)^2 when dephased).
  Eigen::MatrixXd coefficients;
  std::size_t n = 0;
  std::string provenance;
  bool dephased = false;

  Eigen::Index unknowns() const noexcept { return coefficients.cols(); }
};

namespace detail {

inline void require_hadamard(const HadamardMatrix& h) {
  const auto rep = verify_hadamard(h);
  if (!rep.passed) {
    throw NotHadamard("input is not a complex Hadamard matrix (max inner product " +
                      std::to_string(rep.max_inner_product) + ", modulus error " +
                      std::to_string(rep.max_modulus_error) + ")");
  }
}

/// Rows for ordered pairs (i,j), i != j, in lexicographic order: the real part
/// of the (i,j) equation for i < j, the imaginary part for i > j.
/// `coeff(i, j, b)` is the complex weight of A_ib (and minus that of A_jb).
template <class Coeff>
Eigen::MatrixXd assemble_pairs(std::size_t n, Coeff&& coeff) {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(nn * (nn - 1 > 0 ? nn - 1 : 0), nn * nn);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j < nn; ++j) {
      if (i == j) continue;
      for (Eigen::Index b = 0; b < nn; ++b) {
        const Complex c = coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(b));
        const double v = i < j ? c.real() : c.imag();
        y(row, i * nn + b) += v;
        y(row, j * nn + b) -= v;
      }
      ++row;
    }
  }
  return y;
}

}  // namespace detail

/// Row index of the ordered pair (i,j), i != j, in a generic tangent system.
inline Eigen::Index pair_row(std::size_t n, std::size_t i, std::size_t j) {
  return static_cast<Eigen::Index>(i * (n - 1) + (j < i ? j : j - 1));
}

/// Generic assembly from the entries of H. Requires H to be Hadamard.
inline TangentSystem tangent_system(const HadamardMatrix& h) {
  detail::require_hadamard(h);
  const Eigen::MatrixXcd m = h.to_eigen();
  TangentSystem sys;
  sys.n = h.size();
  sys.provenance = h.provenance();
  sys.coefficients = detail::assemble_pairs(sys.n, [&](std::size_t i, std::size_t j, std::size_t b) {
    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j), bb = static_cast<Eigen::Index>(b);
    return m(ii, bb) * std::conj(m(jj, bb));
  });
  return sys;
}

/// Restriction to unknowns A_ab with a, b >= 1 (first row and column forced to zero).
inline TangentSystem dephased_restriction(const TangentSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.n);
  const Eigen::Index kept = n > 0 ? (n - 1) * (n - 1) : 0;
  TangentSystem out;
  out.n = sys.n;
  out.provenance = sys.provenance;
  out.dephased = true;
  out.coefficients.resize(sys.coefficients.rows(), kept);
  Eigen::Index col = 0;
  for (Eigen::Index a = 1; a < n; ++a)
    for (Eigen::Index b = 1; b < n; ++b) out.coefficients.col(col++) = sys.coefficients.col(a * n + b);
  return out;
}

/// Assembly from the eigenvalue vector Q of a circulant Hadamard matrix:
/// the weight of A_ik in pair (i,j) is (1/N) sum_{l,r} w^{k(l-r) - il + jr} Q_l conj(Q_r).
inline TangentSystem circulant_tangent_system(const std::vector<Phase>& q) {
  const HadamardMatrix h = circulant_from_eigenvalues(q);
  if (!verify_hadamard(h).passed) throw NotHadamard("eigenvalue vector does not give a Hadamard circulant");
  const std::size_t n = q.size();
  std::vector<Complex> qv(n);
  for (std::size_t l = 0; l < n; ++l) qv[l] = phase_value(q[l]);
  const auto w = [n](std::int64_t e) { return Turn(e, static_cast<std::int64_t>(n)).value(); };
  TangentSystem sys;
  sys.n = n;
  sys.provenance = h.provenance();
  sys.coefficients = detail::assemble_pairs(n, [&](std::size_t i, std::size_t j, std::size_t k) {
    Complex s = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t r = 0; r < n; ++r) {
        const auto e = static_cast<std::int64_t>(k * l) - static_cast<std::int64_t>(k * r) -
                       static_cast<std::int64_t>(i * l) + static_cast<std::int64_t>(j * r);
        s += w(e) * qv[l] * std::conj(qv[r]);
      }
    }
    return s / static_cast<double>(n);
  });
  return sys;
}

/// Assembly for a real +-1 Hadamard matrix through its design array:
/// sum_k eps_ijk (A_ik - A_jk) = 0, one row per pair i < j.
inline TangentSystem real_design_system(const HadamardMatrix& h) {
  const DesignArray eps = design_array(h);
  detail::require_hadamard(h);
  const auto n = static_cast<Eigen::Index>(h.size());
  TangentSystem sys;
  sys.n = h.size();
  sys.provenance = h.provenance();
  sys.coefficients = Eigen::MatrixXd::Zero(n * (n - 1) / 2, n * n);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const double e = eps(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k));
        sys.coefficients(row, i * n + k) += e;
        sys.coefficients(row, j * n + k) -= e;
      }
      ++row;
    }
  }
  return sys;
}

/// Max over equations of |sum_k H_ik conj(H_jk)(A_ik - A_jk)|, evaluated directly.
inline double tangent_residual(const HadamardMatrix& h, const Eigen::MatrixXd& a) {
  const Eigen::MatrixXcd m = h.to_eigen();
  const auto n = m.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      Complex s = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) s += m(i, k) * std::conj(m(j, k)) * (a(i, k) - a(j, k));
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

}  // namespace hadamard
