#pragma once

// Independent reference computations for the tests. Nothing here calls the
// formula code under test; each oracle recomputes its quantity from the
// definitions by the most direct route available.

#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "hadamard/group.hpp"
#include "hadamard/matrix.hpp"
#include "hadamard/rational.hpp"

namespace oracle {

using hadamard::BigInt;
using hadamard::FiniteAbelianGroup;
using hadamard::Rational;

/// Order of g by adding it to itself until the identity reappears.
inline std::int64_t order_by_repetition(const std::vector<std::int64_t>& orders, const std::vector<std::int64_t>& g) {
  std::vector<std::int64_t> cur = g;
  std::int64_t m = 1;
  auto is_zero = [](const std::vector<std::int64_t>& v) {
    for (auto x : v)
      if (x != 0) return false;
    return true;
  };
  while (!is_zero(cur)) {
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = (cur[i] + g[i]) % orders[i];
    ++m;
  }
  return m;
}

/// sum_g 1/ord(g), walking all elements with nested counters.
inline Rational delta(const std::vector<std::int64_t>& orders) {
  std::vector<std::int64_t> g(orders.size(), 0);
  Rational sum = 0;
  while (true) {
    sum += Rational(1, order_by_repetition(orders, g));
    std::size_t d = 0;
    while (d < g.size() && ++g[d] == orders[d]) g[d++] = 0;
    if (d == g.size()) break;
  }
  return sum;
}

inline std::int64_t totient(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

/// N * sum_{d | N} phi(d)/d: each divisor d is the order of phi(d) elements of Z_N.
inline Rational cyclic_defect(std::int64_t n) {
  Rational s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += Rational(totient(d), d);
  return s * n;
}

inline void partitions(int n, int max, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

/// One representative per isomorphism type of abelian group of order n, as
/// prime-power cycle orders.
inline std::vector<std::vector<std::int64_t>> abelian_groups(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> primes;
  std::int64_t m = n;
  for (std::int64_t p = 2; p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) primes.emplace_back(p, e);
  }
  std::vector<std::vector<std::int64_t>> out{{}};
  for (const auto& [p, e] : primes) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& base : out) {
      for (const auto& part : parts) {
        auto g = base;
        for (int k : part) {
          std::int64_t q = 1;
          for (int t = 0; t < k; ++t) q *= p;
          g.push_back(q);
        }
        next.push_back(std::move(g));
      }
    }
    out = std::move(next);
  }
  if (n == 1) out = {{1}};
  return out;
}

/// Real matrix of A -> (Re, Im) of sum_k H_ik conj(H_jk)(A_ik - A_jk) over
/// pairs i < j, assembled by applying the map to each unit matrix.
inline Eigen::MatrixXd tangent_map(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  const Eigen::Index pairs = n * (n - 1) / 2;
  Eigen::MatrixXd out(2 * pairs, n * n);
  for (Eigen::Index u = 0; u < n * n; ++u) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a(u / n, u % n) = 1.0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j, ++r) {
        std::complex<double> s = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) s += h(i, k) * std::conj(h(j, k)) * (a(i, k) - a(j, k));
        out(2 * r, u) = s.real();
        out(2 * r + 1, u) = s.imag();
      }
    }
  }
  return out;
}

/// Rank by full-pivoting LU, a different factorization from the library's SVD.
inline Eigen::Index lu_rank(const Eigen::MatrixXd& m, double threshold = 1e-9) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(threshold);
  return lu.rank();
}

inline std::int64_t tangent_corank(const hadamard::HadamardMatrix& h) {
  const auto n = static_cast<std::int64_t>(h.size());
  return n * n - static_cast<std::int64_t>(lu_rank(tangent_map(h.to_eigen())));
}

/// Rank over Q by plain Gaussian elimination on rationals.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t fixed_point_count(const std::vector<std::uint32_t>& p) {
  std::size_t c = 0;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] == x) ++c;
  return c;
}

}  // namespace oracle
