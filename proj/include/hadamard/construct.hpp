#pragma once

// Constructions of complex Hadamard matrices, validity checks and the
// equivalence operations (permutations and unimodular scalings).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hadamard/cyclotomic.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/group.hpp"
#include "hadamard/matrix.hpp"
#include "hadamard/phase.hpp"

namespace hadamard {

inline constexpr double kDefaultHadamardTolerance = 1e-10;

namespace detail {

inline std::string phase_label(const Phase& p) {
  if (const auto* t = std::get_if<Turn>(&p)) return t->to_string();
  const Complex c = std::get<Complex>(p);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::arg(c) / (2.0 * std::numbers::pi));
  return buf;
}

inline bool is_unimodular(const Complex& c, double tol = kDefaultHadamardTolerance) {
  return std::abs(std::abs(c) - 1.0) <= tol;
}

inline void require_unimodular(const Phase& p, const char* what) {
  if (!is_exact(p) && !is_unimodular(std::get<Complex>(p))) {
    throw std::invalid_argument(std::string(what) + " must be unimodular");
  }
}

}  // namespace detail

/// F_G = F_{N_1} (x) ... (x) F_{N_r}, exact; entry (i,j) is sum_k i_k j_k / N_k turns.
inline HadamardMatrix fourier_matrix(const FiniteAbelianGroup& group) {
  const auto n = group.checked_size();
  const auto& orders = group.cycle_orders();
  std::vector<Turn> entries;
  entries.reserve(n * n);
  const auto elems = group.elements();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Turn t;
      for (std::size_t k = 0; k < orders.size(); ++k) t = t + Turn(elems[i][k] * elems[j][k], orders[k]);
      entries.push_back(t);
    }
  }
  return HadamardMatrix::from_turns(n, std::move(entries), "fourier:" + group.to_string());
}

/// (H (x) K)_{ia,jb} = H_{ij} K_{ab} with row ia = i*M + a.
inline HadamardMatrix tensor_product(const HadamardMatrix& h, const HadamardMatrix& k) {
  const std::size_t n = h.size();
  const std::size_t m = k.size();
  const std::size_t nm = n * m;
  const std::string prov = "tensor:(" + h.provenance() + "," + k.provenance() + ")";
  if (h.is_exact() && k.is_exact()) {
    std::vector<Turn> out(nm * nm);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t b = 0; b < m; ++b) out[(i * m + a) * nm + j * m + b] = h.turn(i, j) + k.turn(a, b);
    return HadamardMatrix::from_turns(nm, std::move(out), prov);
  }
  std::vector<Complex> out(nm * nm);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t b = 0; b < m; ++b) out[(i * m + a) * nm + j * m + b] = h(i, j) * k(a, b);
  return HadamardMatrix::from_complex(nm, std::move(out), prov);
}

inline std::string to_inline_string(const DeformationParameters& l) {
  std::string s = "[";
  for (std::size_t a = 0; a < l.rows(); ++a) {
    s += a ? ",[" : "[";
    for (std::size_t j = 0; j < l.cols(); ++j) s += (j ? "," : "") + detail::phase_label(l.values.phase(a, j));
    s += "]";
  }
  return s + "]";
}

/// H (x)_L K with entries H_{ij} L_{aj} K_{ab}; L is M x N for H N x N, K M x M.
inline HadamardMatrix deformed_tensor(const HadamardMatrix& h, const DeformationParameters& l, const HadamardMatrix& k) {
  const std::size_t n = h.size();
  const std::size_t m = k.size();
  if (l.rows() != m || l.cols() != n) {
    throw std::invalid_argument("deformation parameters must be " + std::to_string(m) + "x" + std::to_string(n));
  }
  if (!l.values.is_exact()) {
    for (const auto& c : l.values.complex_entries()) {
      if (!detail::is_unimodular(c)) throw std::invalid_argument("deformation parameters must be unimodular");
    }
  }
  const std::size_t nm = n * m;
  const std::string prov = "deformed:(" + h.provenance() + "," + to_inline_string(l) + "," + k.provenance() + ")";
  if (h.is_exact() && k.is_exact() && l.values.is_exact()) {
    std::vector<Turn> out(nm * nm);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t b = 0; b < m; ++b)
            out[(i * m + a) * nm + j * m + b] = h.turn(i, j) + l.values.turn(a, j) + k.turn(a, b);
    return HadamardMatrix::from_turns(nm, std::move(out), prov);
  }
  std::vector<Complex> out(nm * nm);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t b = 0; b < m; ++b) out[(i * m + a) * nm + j * m + b] = h(i, j) * l.values(a, j) * k(a, b);
  return HadamardMatrix::from_complex(nm, std::move(out), prov);
}

/// L_{aj} = w^{aj}, w = e^{2 pi i/NM}, as an M x N exact array.
inline DeformationParameters recombination_parameters(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw std::invalid_argument("N and M must be >= 1");
  std::vector<Turn> out;
  out.reserve(static_cast<std::size_t>(n * m));
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t j = 0; j < n; ++j) out.emplace_back(a * j, n * m);
  return {PhaseArray(static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(out))};
}

/// Flat (all-ones) M x N parameters.
inline DeformationParameters flat_parameters(std::size_t m, std::size_t n) {
  return {PhaseArray(m, n, std::vector<Turn>(m * n))};
}

/// The Haagerup family H_6^q.
inline HadamardMatrix haagerup_matrix(const Phase& q) {
  detail::require_unimodular(q, "q");
  const std::string prov = "haagerup:" + detail::phase_label(q);
  // Each entry is sign * base, base in {1, i, -i, q, conj q}.
  enum Base { kOne, kI, kMinusI, kQ, kQbar };
  struct Cell { int sign; Base base; };
  static constexpr Cell layout[6][6] = {
      {{1, kOne}, {1, kOne}, {1, kOne}, {1, kOne}, {1, kOne}, {1, kOne}},
      {{1, kOne}, {-1, kOne}, {1, kI}, {1, kI}, {1, kMinusI}, {1, kMinusI}},
      {{1, kOne}, {1, kI}, {-1, kOne}, {1, kMinusI}, {1, kQ}, {-1, kQ}},
      {{1, kOne}, {1, kI}, {1, kMinusI}, {-1, kOne}, {-1, kQ}, {1, kQ}},
      {{1, kOne}, {1, kMinusI}, {1, kQbar}, {-1, kQbar}, {1, kI}, {-1, kOne}},
      {{1, kOne}, {1, kMinusI}, {-1, kQbar}, {1, kQbar}, {-1, kOne}, {1, kI}},
  };
  if (const auto* t = std::get_if<Turn>(&q)) {
    std::vector<Turn> out;
    for (const auto& row : layout) {
      for (const auto& c : row) {
        Turn v;
        switch (c.base) {
          case kOne: v = Turn(0, 1); break;
          case kI: v = Turn(1, 4); break;
          case kMinusI: v = Turn(3, 4); break;
          case kQ: v = *t; break;
          case kQbar: v = -*t; break;
        }
        out.push_back(c.sign < 0 ? v + Turn(1, 2) : v);
      }
    }
    return HadamardMatrix::from_turns(6, std::move(out), prov);
  }
  const Complex qv = std::get<Complex>(q);
  std::vector<Complex> out;
  for (const auto& row : layout) {
    for (const auto& c : row) {
      Complex v;
      switch (c.base) {
        case kOne: v = 1.0; break;
        case kI: v = {0.0, 1.0}; break;
        case kMinusI: v = {0.0, -1.0}; break;
        case kQ: v = qv; break;
        case kQbar: v = std::conj(qv); break;
      }
      out.push_back(static_cast<double>(c.sign) * v);
    }
  }
  return HadamardMatrix::from_complex(6, std::move(out), prov);
}

/// Tao's isolated matrix T_6 over the cube roots of unity.
inline HadamardMatrix tao_matrix() {
  static constexpr int powers[6][6] = {
      {0, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 2, 2}, {0, 1, 0, 2, 2, 1},
      {0, 1, 2, 0, 1, 2}, {0, 2, 2, 1, 0, 1}, {0, 2, 1, 2, 1, 0},
  };
  std::vector<Turn> out;
  for (const auto& row : powers)
    for (int p : row) out.emplace_back(p, 3);
  return HadamardMatrix::from_turns(6, std::move(out), "tao");
}

/// Circulant H_{ij} = C_{j-i} with C = F_N Q / sqrt(N). Always floating;
/// Hadamard validity is not guaranteed and must be checked by the caller.
inline HadamardMatrix circulant_from_eigenvalues(const std::vector<Phase>& q) {
  const std::size_t n = q.size();
  if (n == 0) throw std::invalid_argument("eigenvalue vector must be nonempty");
  std::string prov = "circulant:";
  for (std::size_t l = 0; l < n; ++l) {
    detail::require_unimodular(q[l], "eigenvalues");
    prov += (l ? "," : "") + detail::phase_label(q[l]);
  }
  std::vector<Complex> c(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t m = 0; m < n; ++m) {
    Complex sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      sum += Turn(static_cast<std::int64_t>(m * l), static_cast<std::int64_t>(n)).value() * phase_value(q[l]);
    }
    c[m] = sum * scale;
  }
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = c[(j + n - i) % n];
  return HadamardMatrix::from_complex(n, std::move(out), prov);
}

struct ValidationReport {
  bool exact = false;
  double max_modulus_error = 0.0;   // max |1 - |H_ij||
  double max_inner_product = 0.0;   // max_{i != j} |<H_i, H_j>| / N
  double tolerance = 0.0;
  bool passed = false;
};

/// Rows pairwise orthogonal and entries unimodular. Exact matrices are checked
/// exactly in Z[x]/Phi_q (the tolerance is ignored); the float diagnostics are
/// still filled in.
inline ValidationReport verify_hadamard(const HadamardMatrix& h, double tol = kDefaultHadamardTolerance) {
  if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
  ValidationReport rep;
  rep.exact = h.is_exact();
  rep.tolerance = rep.exact ? 0.0 : tol;
  const std::size_t n = h.size();
  const Eigen::MatrixXcd m = h.to_eigen();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rep.max_modulus_error = std::max(rep.max_modulus_error, std::abs(1.0 - std::abs(m(i, j))));
  const Eigen::MatrixXcd gram = m * m.adjoint();
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j)
      if (i != j) rep.max_inner_product = std::max(rep.max_inner_product, std::abs(gram(i, j)) / static_cast<double>(n));

  if (!rep.exact) {
    rep.passed = rep.max_modulus_error <= tol && rep.max_inner_product <= tol;
    return rep;
  }
  const std::int64_t q = h.common_order();
  const std::size_t deg = cyclotomic_degree(q);
  bool orthogonal = true;
  std::vector<std::int64_t> acc(deg);
  for (std::size_t i = 0; i < n && orthogonal; ++i) {
    for (std::size_t j = i + 1; j < n && orthogonal; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < n; ++k) {
        const Turn d = h.turn(i, k) - h.turn(j, k);
        const auto& pw = reduced_power(q, d.num() * (q / d.den()));
        for (std::size_t t = 0; t < deg; ++t) acc[t] += pw[t];
      }
      orthogonal = std::all_of(acc.begin(), acc.end(), [](std::int64_t v) { return v == 0; });
    }
  }
  rep.passed = orthogonal;
  return rep;
}

/// Equivalent matrix with first row and column all ones: column j is scaled by
/// conj(H_0j), then row i by the conjugate of the new (i,0) entry.
inline HadamardMatrix dephase(const HadamardMatrix& h) {
  const std::size_t n = h.size();
  const std::string prov = h.provenance();
  if (h.is_exact()) {
    std::vector<Turn> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = h.turn(i, j) - h.turn(0, j);
    for (std::size_t i = 0; i < n; ++i) {
      const Turn r = out[i * n];
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = out[i * n + j] - r;
    }
    return HadamardMatrix::from_turns(n, std::move(out), prov);
  }
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = h(i, j) * std::conj(h(0, j));
  for (std::size_t i = 0; i < n; ++i) {
    const Complex r = std::conj(out[i * n]);
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] *= r;
  }
  return HadamardMatrix::from_complex(n, std::move(out), prov);
}

/// Row/column permutations and phases; H'_{ij} = r_i c_j H_{row_perm(i), col_perm(j)}. Empty
/// vectors stand for the identity permutation and unit phases.
struct Equivalence {
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::vector<Phase> row_phases;
  std::vector<Phase> col_phases;
};

namespace detail {

inline std::vector<std::size_t> identity_if_empty(const std::vector<std::size_t>& perm, std::size_t n, const char* what) {
  if (perm.empty()) {
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return id;
  }
  if (perm.size() != n) throw std::invalid_argument(std::string(what) + " has wrong length");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument(std::string(what) + " is not a permutation");
    seen[p] = true;
  }
  return perm;
}

inline std::vector<Phase> ones_if_empty(const std::vector<Phase>& v, std::size_t n, const char* what) {
  if (v.empty()) return std::vector<Phase>(n, Turn());
  if (v.size() != n) throw std::invalid_argument(std::string(what) + " has wrong length");
  for (const auto& p : v) require_unimodular(p, what);
  return v;
}

}  // namespace detail

inline HadamardMatrix apply_equivalence(const HadamardMatrix& h, const Equivalence& eq) {
  const std::size_t n = h.size();
  const auto rows = detail::identity_if_empty(eq.row_perm, n, "row permutation");
  const auto cols = detail::identity_if_empty(eq.col_perm, n, "column permutation");
  const auto rp = detail::ones_if_empty(eq.row_phases, n, "row phases");
  const auto cp = detail::ones_if_empty(eq.col_phases, n, "column phases");
  const bool exact = h.is_exact() && std::all_of(rp.begin(), rp.end(), is_exact) &&
                     std::all_of(cp.begin(), cp.end(), is_exact);
  const std::string prov = h.provenance() + "~";
  if (exact) {
    std::vector<Turn> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out[i * n + j] = std::get<Turn>(rp[i]) + std::get<Turn>(cp[j]) + h.turn(rows[i], cols[j]);
    return HadamardMatrix::from_turns(n, std::move(out), prov);
  }
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = phase_value(rp[i]) * phase_value(cp[j]) * h(rows[i], cols[j]);
  return HadamardMatrix::from_complex(n, std::move(out), prov);
}

inline HadamardMatrix apply_equivalence(const HadamardMatrix& h, const std::vector<std::size_t>& row_perm,
                                        const std::vector<std::size_t>& col_perm,
                                        const std::vector<Phase>& row_phases,
                                        const std::vector<Phase>& col_phases) {
  return apply_equivalence(h, Equivalence{row_perm, col_perm, row_phases, col_phases});
}

/// Random permutations and exact phases k/phase_denominator.
template <class Rng>
Equivalence random_equivalence(std::size_t n, Rng& rng, std::int64_t phase_denominator = 24) {
  Equivalence eq;
  eq.row_perm.resize(n);
  eq.col_perm.resize(n);
  std::iota(eq.row_perm.begin(), eq.row_perm.end(), std::size_t{0});
  std::iota(eq.col_perm.begin(), eq.col_perm.end(), std::size_t{0});
  std::shuffle(eq.row_perm.begin(), eq.row_perm.end(), rng);
  std::shuffle(eq.col_perm.begin(), eq.col_perm.end(), rng);
  std::uniform_int_distribution<std::int64_t> dist(0, phase_denominator - 1);
  for (std::size_t i = 0; i < n; ++i) {
    eq.row_phases.emplace_back(Turn(dist(rng), phase_denominator));
    eq.col_phases.emplace_back(Turn(dist(rng), phase_denominator));
  }
  return eq;
}

/// M_{ia}^{jb} = sum_k H_ik conj(H_jk) conj(H_ak) H_bk at row i*N+a, column j*N+b.
inline Eigen::MatrixXcd profile_matrix(const HadamardMatrix& h) {
  const auto n = static_cast<Eigen::Index>(h.size());
  const Eigen::MatrixXcd m = h.to_eigen();
  Eigen::MatrixXcd out(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::VectorXcd u = m.row(i).transpose().cwiseProduct(m.row(j).adjoint());
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          Complex s = 0.0;
          for (Eigen::Index k = 0; k < n; ++k) s += u(k) * std::conj(m(a, k)) * m(b, k);
          out(i * n + a, j * n + b) = s;
        }
      }
    }
  }
  return out;
}

/// Sign array eps_{ijk} = H_ik H_jk of a real +-1 matrix.
class DesignArray {
 public:
  DesignArray(std::size_t n, std::vector<signed char> values) : n_(n), values_(std::move(values)) {}
  std::size_t size() const noexcept { return n_; }
  int operator()(std::size_t i, std::size_t j, std::size_t k) const { return values_[(i * n_ + j) * n_ + k]; }

 private:
  std::size_t n_;
  std::vector<signed char> values_;
};

/// Signs of a real Hadamard matrix; throws DomainError on a non-real entry.
inline std::vector<signed char> real_signs(const HadamardMatrix& h) {
  const std::size_t n = h.size();
  std::vector<signed char> s(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (h.is_exact()) {
        const Turn& t = h.turn(i, j);
        if (t.num() != 0 && !(t.num() == 1 && t.den() == 2)) throw DomainError("non-real entry in design array input");
        s[i * n + j] = t.num() == 0 ? 1 : -1;
      } else {
        const Complex c = h(i, j);
        if (std::abs(c - 1.0) <= kDefaultHadamardTolerance) {
          s[i * n + j] = 1;
        } else if (std::abs(c + 1.0) <= kDefaultHadamardTolerance) {
          s[i * n + j] = -1;
        } else {
          throw DomainError("non-real entry in design array input");
        }
      }
    }
  }
  return s;
}

inline DesignArray design_array(const HadamardMatrix& h) {
  const std::size_t n = h.size();
  const auto s = real_signs(h);
  std::vector<signed char> eps(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) eps[(i * n + j) * n + k] = static_cast<signed char>(s[i * n + k] * s[j * n + k]);
  return DesignArray(n, std::move(eps));
}

}  // namespace hadamard
