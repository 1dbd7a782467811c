#pragma once

// Finite abelian groups Z_{N_1} x ... x Z_{N_r} and the closed-form defect
// formulas for their Fourier matrices. Everything here is exact.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/rational.hpp"

namespace hadamard {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Enumeration cap, overridable through the HD_CAP environment variable.
inline std::size_t enumeration_cap() {
  if (const char* env = std::getenv("HD_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultEnumerationCap;
}

using GroupElement = std::vector<std::int64_t>;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<std::int64_t> cycle_orders) : orders_(std::move(cycle_orders)) {
    for (auto n : orders_) {
      if (n < 1) throw std::invalid_argument("cycle order must be >= 1, got " + std::to_string(n));
    }
  }

  const std::vector<std::int64_t>& cycle_orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return orders_.size(); }

  /// |G| as a 64-bit integer; throws on overflow.
  std::int64_t order() const {
    std::int64_t total = 1;
    for (auto n : orders_) {
      if (__builtin_mul_overflow(total, n, &total)) throw std::overflow_error("group order overflows int64");
    }
    return total;
  }

  bool contains(const GroupElement& g) const {
    if (g.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] < 0 || g[i] >= orders_[i]) return false;
    }
    return true;
  }

  void require_element(const GroupElement& g) const {
    if (g.size() != orders_.size()) throw std::invalid_argument("element length does not match group rank");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] < 0 || g[i] >= orders_[i]) {
        throw std::out_of_range("residue " + std::to_string(g[i]) + " out of range for Z_" +
                                std::to_string(orders_[i]));
      }
    }
  }

  GroupElement identity() const { return GroupElement(orders_.size(), 0); }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    GroupElement out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) out[i] = (a[i] + b[i]) % orders_[i];
    return out;
  }

  GroupElement negate(const GroupElement& a) const {
    GroupElement out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) out[i] = (orders_[i] - a[i]) % orders_[i];
    return out;
  }

  /// Mixed-radix index with factor 0 most significant (odometer order).
  std::size_t index_of(const GroupElement& g) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * static_cast<std::size_t>(orders_[i]) + g[i];
    return idx;
  }

  GroupElement element_at(std::size_t index) const {
    GroupElement g(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
      const auto n = static_cast<std::size_t>(orders_[i]);
      g[i] = static_cast<std::int64_t>(index % n);
      index /= n;
    }
    return g;
  }

  /// All elements in odometer order. Throws CapExceeded above `cap`.
  std::vector<GroupElement> elements(std::size_t cap = enumeration_cap()) const {
    const auto n = checked_size(cap);
    std::vector<GroupElement> out;
    out.reserve(n);
    GroupElement g = identity();
    for (std::size_t k = 0; k < n; ++k) {
      out.push_back(g);
      for (std::size_t i = orders_.size(); i-- > 0;) {
        if (++g[i] < orders_[i]) break;
        g[i] = 0;
      }
    }
    return out;
  }

  std::size_t checked_size(std::size_t cap = enumeration_cap()) const {
    const auto n = static_cast<std::size_t>(order());
    if (n > cap) throw CapExceeded(n, cap);
    return n;
  }

  /// CLI syntax, e.g. "2x4"; the trivial group prints as "1".
  std::string to_string() const {
    if (orders_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < orders_.size(); ++i) os << (i ? "x" : "") << orders_[i];
    return os.str();
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<std::int64_t> orders_;
};

inline FiniteAbelianGroup make_group(std::vector<std::int64_t> orders) {
  return FiniteAbelianGroup(std::move(orders));
}

/// Parses "2x3x4" (also accepts '*' and ',' as separators); "1" is the trivial group.
inline FiniteAbelianGroup parse_group(const std::string& text) {
  std::vector<std::int64_t> orders;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of("x*,", pos);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(pos, end - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("malformed group order '" + tok + "'", pos);
    }
    const auto v = std::stoll(tok);
    if (v < 1) throw ParseError("group order must be >= 1", pos);
    orders.push_back(v);
    pos = end + 1;
  }
  return FiniteAbelianGroup(std::move(orders));
}

inline std::int64_t element_order(const FiniteAbelianGroup& group, const GroupElement& g) {
  group.require_element(g);
  std::int64_t ord = 1;
  const auto& n = group.cycle_orders();
  for (std::size_t i = 0; i < n.size(); ++i) ord = std::lcm(ord, n[i] / std::gcd(n[i], g[i]));
  return ord;
}

/// Exponent of the group: lcm of the cycle orders.
inline std::int64_t group_exponent(const FiniteAbelianGroup& group) {
  std::int64_t e = 1;
  for (auto n : group.cycle_orders()) e = std::lcm(e, n);
  return e;
}

/// Sum over g of 1/ord(g), by full enumeration.
inline Rational delta_bruteforce(const FiniteAbelianGroup& group, std::size_t cap = enumeration_cap()) {
  const auto n = group.checked_size(cap);
  std::map<std::int64_t, std::int64_t> count_by_order;
  for (std::size_t idx = 0; idx < n; ++idx) ++count_by_order[element_order(group, group.element_at(idx))];
  Rational total = 0;
  for (const auto& [ord, count] : count_by_order) total += Rational(count, ord);
  return total;
}

// ---------------------------------------------------------------------------
// Factorization and isotypic normal form

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Prime -> exponent, by trial division.
inline std::map<std::int64_t, int> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
  std::map<std::int64_t, int> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

/// Prime p -> nondecreasing exponents a_1 <= ... <= a_r of the p-component.
struct IsotypicDecomposition {
  std::map<std::int64_t, std::vector<int>> components;

  friend bool operator==(const IsotypicDecomposition&, const IsotypicDecomposition&) = default;
};

inline IsotypicDecomposition isotypic_decomposition(const FiniteAbelianGroup& group) {
  IsotypicDecomposition out;
  for (auto n : group.cycle_orders()) {
    for (const auto& [p, a] : factorize(n)) out.components[p].push_back(a);
  }
  for (auto& [p, exps] : out.components) std::sort(exps.begin(), exps.end());
  return out;
}

namespace detail {

inline void require_exponents(std::int64_t p, const std::vector<int>& exponents) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (!std::is_sorted(exponents.begin(), exponents.end())) {
    throw std::invalid_argument("exponents must be nondecreasing");
  }
  for (int a : exponents) {
    if (a < 0) throw std::invalid_argument("exponents must be nonnegative");
  }
}

/// [a]_q = 1 + q + ... + q^{a-1}; [0]_q = 0.
inline BigInt q_integer(int a, const BigInt& q) {
  BigInt sum = 0;
  BigInt term = 1;
  for (int i = 0; i < a; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

}  // namespace detail

/// c_k = #{g : ord(g) <= p^k} in Z_{p^a_1} x ... x Z_{p^a_r}.
inline BigInt order_counts(std::int64_t p, const std::vector<int>& exponents, int k) {
  detail::require_exponents(p, exponents);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  unsigned total = 0;
  for (int a : exponents) total += static_cast<unsigned>(std::min(k, a));
  return boost::multiprecision::pow(BigInt(p), total);
}

/// delta of the p-group with the given nondecreasing exponents, via the
/// piecewise geometric-sum formula (a_0 = 0).
inline Rational delta_isotypic(std::int64_t p, const std::vector<int>& exponents) {
  detail::require_exponents(p, exponents);
  const auto r = static_cast<std::int64_t>(exponents.size());
  Rational total = 1;
  std::int64_t prefix = 0;  // a_1 + ... + a_{k-1}
  for (std::int64_t k = 1; k <= r; ++k) {
    const std::int64_t prev = k >= 2 ? exponents[k - 2] : 0;
    const std::int64_t cur = exponents[k - 1];
    const std::int64_t e = (r - k) * prev + prefix - 1;
    const BigInt pr = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(r - k + 1)) - 1;
    const BigInt q = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(r - k));
    total += rational_pow(p, e) * Rational(pr * detail::q_integer(static_cast<int>(cur - prev), q));
    prefix += cur;
  }
  return total;
}

inline Rational delta_closed(const FiniteAbelianGroup& group) {
  Rational total = 1;
  for (const auto& [p, exps] : isotypic_decomposition(group).components) total *= delta_isotypic(p, exps);
  return total;
}

/// |G| * delta(G), the undephased defect of F_G.
inline BigInt fourier_defect(const FiniteAbelianGroup& group) {
  const Rational d = Rational(group.order()) * delta_closed(group);
  if (!is_integral(d)) {
    throw InconsistencyError("non-integral Fourier defect " + to_string(d) + " for group " + group.to_string());
  }
  return numerator_of(d);
}

/// N * prod_i (1 + a_i - a_i/p_i) over the prime factorization of N.
inline BigInt fourier_defect_cyclic(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  Rational d = n;
  for (const auto& [p, a] : factorize(n)) d *= Rational(1 + a) - Rational(a, p);
  if (!is_integral(d)) throw InconsistencyError("non-integral cyclic defect for N=" + std::to_string(n));
  return numerator_of(d);
}

/// delta(D_N) = N/2 + delta(Z_N).
inline Rational delta_dihedral(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  return Rational(n, 2) + delta_closed(FiniteAbelianGroup({n}));
}

// ---------------------------------------------------------------------------
// Constraint classes of the P-parametrization of the tangent space of F_G:
// P_{ij} = P_{i+j,j} = conj(P_{i,-j}), indices in G.

struct PSpaceClasses {
  std::size_t order = 0;
  /// For each entry (i,j) at i*order+j: its class id and whether it equals the
  /// conjugate of the class representative.
  std::vector<std::size_t> class_of;
  std::vector<bool> conjugated;
  /// Per class: forced real (some entry is linked to its own conjugate).
  std::vector<bool> real_class;

  std::size_t class_count() const noexcept { return real_class.size(); }

  /// Number of free real parameters.
  std::size_t dimension() const noexcept {
    std::size_t d = 0;
    for (bool r : real_class) d += r ? 1 : 2;
    return d;
  }
};

namespace detail {

/// Union-find carrying the parity (conjugation) of each node relative to its root.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0), odd_cycle_(n, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    int par = 0;
    std::size_t root = x;
    while (parent_[root] != root) {
      par ^= parity_[root];
      root = parent_[root];
    }
    // path compression
    int acc = par;
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      const int step = parity_[x];
      parent_[x] = root;
      parity_[x] = static_cast<char>(acc);
      acc ^= step;
      x = next;
    }
    return {root, par};
  }

  void unite(std::size_t a, std::size_t b, int relation) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != relation) odd_cycle_[ra] = true;
      return;
    }
    parent_[rb] = ra;
    parity_[rb] = static_cast<char>(pa ^ pb ^ relation);
    odd_cycle_[ra] = odd_cycle_[ra] || odd_cycle_[rb];
  }

  bool odd_cycle(std::size_t root) const { return odd_cycle_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<char> parity_;
  std::vector<bool> odd_cycle_;
};

}  // namespace detail

inline PSpaceClasses p_space_classes(const FiniteAbelianGroup& group, std::size_t cap = enumeration_cap()) {
  const std::size_t n = group.checked_size(cap);
  detail::ParityUnionFind uf(n * n);
  const auto elems = group.elements(cap);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t shifted = group.index_of(group.add(elems[i], elems[j]));
      const std::size_t mirrored = group.index_of(group.negate(elems[j]));
      uf.unite(i * n + j, shifted * n + j, 0);
      uf.unite(i * n + j, i * n + mirrored, 1);
    }
  }
  PSpaceClasses out;
  out.order = n;
  out.class_of.resize(n * n);
  out.conjugated.resize(n * n);
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t e = 0; e < n * n; ++e) {
    auto [root, par] = uf.find(e);
    auto [it, inserted] = root_to_class.try_emplace(root, out.real_class.size());
    if (inserted) out.real_class.push_back(uf.odd_cycle(root));
    out.class_of[e] = it->second;
    out.conjugated[e] = par != 0;
  }
  return out;
}

/// Real dimension of the P-space, counted constructively from the constraint
/// classes; equals fourier_defect(G).
inline std::size_t p_space_dimension(const FiniteAbelianGroup& group, std::size_t cap = enumeration_cap()) {
  return p_space_classes(group, cap).dimension();
}

}  // namespace hadamard
