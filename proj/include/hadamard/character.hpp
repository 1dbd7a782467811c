#pragma once

// Fixed-point statistics of permutation groups: the variables
// chi_r(g) = tr(g^r) = #fix(g^r) / degree, and the defect of F_G recovered
// from their moments over the regular representation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/group.hpp"
#include "hadamard/rational.hpp"

namespace hadamard {

using Permutation = std::vector<std::uint32_t>;

inline Permutation compose(const Permutation& f, const Permutation& g) {  // (f o g)(x) = f(g(x))
  Permutation out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[g[x]];
  return out;
}

inline Permutation inverse(const Permutation& f) {
  Permutation out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[f[x]] = static_cast<std::uint32_t>(x);
  return out;
}

inline std::size_t fixed_points(const Permutation& f) {
  std::size_t c = 0;
  for (std::size_t x = 0; x < f.size(); ++x) c += f[x] == x;
  return c;
}

/// Finite group given by an explicit table of permutations of {0..degree-1}.
class PermutationGroup {
 public:
  /// Verifies that the elements are distinct permutations closed under
  /// composition and inverse, and that the identity is present.
  PermutationGroup(std::size_t degree, std::vector<Permutation> elements)
      : degree_(degree), elements_(std::move(elements)) {
    if (elements_.empty()) throw std::invalid_argument("permutation group needs at least one element");
    std::map<Permutation, std::size_t> index;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      const auto& p = elements_[e];
      if (p.size() != degree_) throw std::invalid_argument("element has wrong degree");
      std::vector<bool> seen(degree_, false);
      for (auto x : p) {
        if (x >= degree_ || seen[x]) throw std::invalid_argument("element is not a permutation");
        seen[x] = true;
      }
      if (!index.emplace(p, e).second) throw std::invalid_argument("duplicate group element");
    }
    Permutation id(degree_);
    std::iota(id.begin(), id.end(), 0u);
    const auto it = index.find(id);
    if (it == index.end()) throw std::invalid_argument("identity missing");
    identity_ = it->second;
    for (const auto& f : elements_) {
      if (!index.count(inverse(f))) throw std::invalid_argument("not closed under inverse");
      for (const auto& g : elements_) {
        if (!index.count(compose(f, g))) throw std::invalid_argument("not closed under composition");
      }
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t identity_index() const noexcept { return identity_; }
  const Permutation& element(std::size_t e) const { return elements_.at(e); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }

  /// g^r by repeated composition, r >= 0.
  Permutation power(std::size_t e, std::int64_t r) const {
    if (r < 0) throw std::invalid_argument("power must be >= 0");
    Permutation out = elements_[identity_];
    for (std::int64_t k = 0; k < r; ++k) out = compose(elements_.at(e), out);
    return out;
  }

  std::int64_t element_order(std::size_t e) const {
    const Permutation& id = elements_[identity_];
    Permutation cur = elements_.at(e);
    std::int64_t m = 1;
    while (cur != id) {
      cur = compose(elements_[e], cur);
      ++m;
    }
    return m;
  }

  std::int64_t exponent() const {
    std::int64_t l = 1;
    for (std::size_t e = 0; e < order(); ++e) l = std::lcm(l, element_order(e));
    return l;
  }

  /// Acting on itself: every non-identity element is fixed-point free and degree = order.
  bool is_regular() const {
    if (degree_ != order()) return false;
    for (std::size_t e = 0; e < order(); ++e) {
      if (e != identity_ && fixed_points(elements_[e]) != 0) return false;
    }
    return true;
  }

 private:
  std::size_t degree_;
  std::vector<Permutation> elements_;
  std::size_t identity_ = 0;
};

/// G acting on itself by translation h -> h + g, elements in odometer order.
inline PermutationGroup regular_representation(const FiniteAbelianGroup& group, std::size_t cap = enumeration_cap()) {
  const std::size_t n = group.checked_size(cap);
  const auto elems = group.elements(cap);
  std::vector<Permutation> perms;
  perms.reserve(n);
  for (const auto& g : elems) {
    Permutation p(n);
    for (std::size_t h = 0; h < n; ++h) p[h] = static_cast<std::uint32_t>(group.index_of(group.add(elems[h], g)));
    perms.push_back(std::move(p));
  }
  return PermutationGroup(n, std::move(perms));
}

/// Left-multiplication action of a permutation group on its own elements.
inline PermutationGroup regular_representation(const PermutationGroup& g) {
  std::map<Permutation, std::uint32_t> index;
  for (std::size_t e = 0; e < g.order(); ++e) index.emplace(g.element(e), static_cast<std::uint32_t>(e));
  std::vector<Permutation> perms;
  perms.reserve(g.order());
  for (const auto& f : g.elements()) {
    Permutation p(g.order());
    for (std::size_t h = 0; h < g.order(); ++h) p[h] = index.at(compose(f, g.element(h)));
    perms.push_back(std::move(p));
  }
  return PermutationGroup(g.order(), std::move(perms));
}

/// D_N: rotations x -> x + k followed by reflections x -> k - x. For N >= 3 this
/// is the action on the N vertices of a polygon; for N <= 2 that action is not
/// faithful, so the regular action on the 2N elements is used instead.
inline PermutationGroup dihedral_group(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (n <= 2) {
    // Elements (k, s) encoded as s*N + k, with (k1,s1)(k2,s2) = (k1 + (-1)^s1 k2, s1 xor s2).
    const auto order = static_cast<std::size_t>(2 * n);
    std::vector<Permutation> perms;
    for (std::int64_t s = 0; s < 2; ++s) {
      for (std::int64_t k = 0; k < n; ++k) {
        Permutation p(order);
        for (std::int64_t s2 = 0; s2 < 2; ++s2) {
          for (std::int64_t k2 = 0; k2 < n; ++k2) {
            const std::int64_t kk = ((k + (s ? -k2 : k2)) % n + n) % n;
            p[static_cast<std::size_t>(s2 * n + k2)] = static_cast<std::uint32_t>((s ^ s2) * n + kk);
          }
        }
        perms.push_back(std::move(p));
      }
    }
    return PermutationGroup(order, std::move(perms));
  }
  const auto deg = static_cast<std::size_t>(n);
  std::vector<Permutation> perms;
  for (std::int64_t k = 0; k < n; ++k) {
    Permutation p(deg);
    for (std::int64_t x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>((x + k) % n);
    perms.push_back(std::move(p));
  }
  for (std::int64_t k = 0; k < n; ++k) {
    Permutation p(deg);
    for (std::int64_t x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(((k - x) % n + n) % n);
    perms.push_back(std::move(p));
  }
  return PermutationGroup(deg, std::move(perms));
}

/// chi_r(g) = #fix(g^r) / degree.
inline Rational ds_variable(const PermutationGroup& group, std::size_t element, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  return Rational(static_cast<std::int64_t>(fixed_points(group.power(element, r))),
                  static_cast<std::int64_t>(group.degree()));
}

namespace detail {

/// sum_{r=1}^{l} sum_g chi_r(g)^k, exactly.
inline Rational ds_moment_sum(const PermutationGroup& group, std::int64_t k, std::int64_t l) {
  if (k < 1 || l < 1) throw std::invalid_argument("k and l must be >= 1");
  const BigInt deg_k = boost::multiprecision::pow(BigInt(group.degree()), static_cast<unsigned>(k));
  BigInt numerator = 0;
  for (std::size_t e = 0; e < group.order(); ++e) {
    Permutation cur = group.element(e);
    for (std::int64_t r = 1; r <= l; ++r) {
      numerator += boost::multiprecision::pow(BigInt(fixed_points(cur)), static_cast<unsigned>(k));
      cur = compose(group.element(e), cur);
    }
  }
  return Rational(numerator, deg_k);
}

}  // namespace detail

/// N^2 (1/l) sum_{r=1}^{l} (1/|G|) sum_g chi_r(g)^k over the regular representation.
inline Rational ds_defect_estimate(const FiniteAbelianGroup& group, std::int64_t k, std::int64_t l,
                                   std::size_t cap = enumeration_cap()) {
  const PermutationGroup reg = regular_representation(group, cap);
  const auto n = static_cast<std::int64_t>(reg.order());
  return Rational(n * n) * detail::ds_moment_sum(reg, k, l) / Rational(l * n);
}

/// delta(G) = (1/l*) sum_{r=1}^{l*} sum_g chi_r(g)^k with l* the group exponent;
/// exact because regular traces are 0 or 1.
inline Rational ds_delta_exact(const PermutationGroup& group, std::int64_t k = 1) {
  if (!group.is_regular()) throw DomainError("action is not regular");
  const std::int64_t l = group.exponent();
  return detail::ds_moment_sum(group, k, l) / Rational(l);
}

}  // namespace hadamard
