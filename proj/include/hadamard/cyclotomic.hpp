#pragma once

// Integer arithmetic in Z[x]/Phi_q(x), the power basis of the q-th
// cyclotomic field. Polynomials are coefficient vectors, lowest degree first.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hadamard {

using IntPoly = std::vector<std::int64_t>;

namespace detail {

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

/// Exact division of `num` by a monic `den`; throws if the remainder is nonzero.
inline IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (den.back() != 1) throw std::logic_error("divisor must be monic");
  if (num.size() - 1 < dd) throw std::logic_error("degree of dividend below divisor");
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    const std::int64_t c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t t = 0; t <= dd; ++t) num[k - dd + t] -= c * den[t];
  }
  for (std::size_t k = 0; k < dd; ++k) {
    if (num[k] != 0) throw std::logic_error("inexact cyclotomic division");
  }
  return quot;
}

struct CyclotomicData {
  IntPoly phi;                      // Phi_q, monic, degree phi(q)
  std::vector<IntPoly> power_table; // x^m mod Phi_q for m in [0, q), each of length phi(q)
};

inline std::shared_ptr<const CyclotomicData> cyclotomic_data(std::int64_t q);

inline IntPoly compute_cyclotomic(std::int64_t q) {
  // x^q - 1 divided by Phi_d for every proper divisor d.
  IntPoly p(static_cast<std::size_t>(q) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(q)] = 1;
  for (std::int64_t d = 1; d < q; ++d) {
    if (q % d == 0) p = divide_exact(p, cyclotomic_data(d)->phi);
  }
  return p;
}

inline std::shared_ptr<const CyclotomicData> cyclotomic_data(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  static std::mutex mutex;
  static std::map<std::int64_t, std::shared_ptr<const CyclotomicData>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  auto data = std::make_shared<CyclotomicData>();
  data->phi = compute_cyclotomic(q);
  const std::size_t deg = data->phi.size() - 1;
  IntPoly cur(deg, 0);
  cur[0] = 1;
  if (deg == 0) throw std::logic_error("degenerate cyclotomic polynomial");
  data->power_table.reserve(static_cast<std::size_t>(q));
  for (std::int64_t m = 0; m < q; ++m) {
    data->power_table.push_back(cur);
    // multiply by x, then fold the x^deg term back using Phi_q monic
    const std::int64_t top = cur[deg - 1];
    for (std::size_t t = deg - 1; t > 0; --t) cur[t] = cur[t - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t t = 0; t < deg; ++t) cur[t] -= top * data->phi[t];
    }
  }
  std::lock_guard lock(mutex);
  return cache.try_emplace(q, std::move(data)).first->second;
}

}  // namespace detail

/// The q-th cyclotomic polynomial, cached.
inline const IntPoly& cyclotomic_polynomial(std::int64_t q) { return detail::cyclotomic_data(q)->phi; }

/// Euler's phi(q) = deg Phi_q.
inline std::size_t cyclotomic_degree(std::int64_t q) { return cyclotomic_polynomial(q).size() - 1; }

/// x^m reduced modulo Phi_q, for any integer m.
inline const IntPoly& reduced_power(std::int64_t q, std::int64_t m) {
  m %= q;
  if (m < 0) m += q;
  return detail::cyclotomic_data(q)->power_table[static_cast<std::size_t>(m)];
}

}  // namespace hadamard
