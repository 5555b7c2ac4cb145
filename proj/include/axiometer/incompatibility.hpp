#pragma once

// Allocation of the overall incompatibility 1 - p_A across axioms.
//
// The collection p (with p at the empty set = 1) defines the cooperative game
// v = 1 - p; the Shapley value of v is the Shapley incompatibility measure.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "axiometer/collections.hpp"
#include "axiometer/errors.hpp"
#include "axiometer/subset_lattice.hpp"

namespace axiometer {

struct Game {
  AxiomSet axioms;
  SubsetVector v;  // v at the empty set is 0
};

inline Game to_game(const Collection& c) {
  SubsetVector v(c.size());
  for (Mask s = 0; s < v.size(); ++s) v[s] = 1.0 - c[s];
  return {c.axioms(), std::move(v)};
}

enum class AllocationMethod { shapley, banzhaf };

inline std::string_view to_string(AllocationMethod m) {
  return m == AllocationMethod::shapley ? "shapley" : "banzhaf";
}

inline AllocationMethod parse_allocation_method(std::string_view s) {
  if (s == "shapley") return AllocationMethod::shapley;
  if (s == "banzhaf") return AllocationMethod::banzhaf;
  throw ParseError("unknown allocation method '" + std::string(s) + "'");
}

struct IncompatibilityAllocation {
  AxiomSet axioms;
  std::vector<double> values;  // one per axiom, in axiom order
  double total = 0.0;
  AllocationMethod method = AllocationMethod::shapley;
};

namespace detail {

inline IncompatibilityAllocation finish(const AxiomSet& axioms, std::vector<double> values, AllocationMethod m) {
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  return {axioms, std::move(values), total, m};
}

/// |S|! (J - |S| - 1)! / J! for |S| = 0..J-1, from exact 64-bit factorials.
inline std::vector<double> shapley_coefficients(int j) {
  std::array<std::uint64_t, kMaxAxioms + 1> fact{};
  fact[0] = 1;
  for (int k = 1; k <= kMaxAxioms; ++k) fact[k] = fact[k - 1] * static_cast<std::uint64_t>(k);
  std::vector<double> w(static_cast<std::size_t>(j));
  for (int s = 0; s < j; ++s) {
    // fact[s] * fact[j-1-s] <= 19! so the product is exact; so is the
    // binomial fact[j-1] / that product, leaving one rounding in the division.
    const std::uint64_t binom = fact[j - 1] / (fact[s] * fact[j - 1 - s]);
    w[static_cast<std::size_t>(s)] = 1.0 / (static_cast<double>(j) * static_cast<double>(binom));
  }
  return w;
}

}  // namespace detail

/// Direct Shapley sum over S within A \ a of w(|S|) (p_S - p_{S+a}).
inline IncompatibilityAllocation shapley(const Collection& c, double tol = kDefaultTolerance) {
  require_feasible(c, tol);
  const int j = c.size();
  const auto coef = detail::shapley_coefficients(j);
  std::vector<double> psi(static_cast<std::size_t>(j), 0.0);
  for (int a = 0; a < j; ++a) {
    const Mask bit = Mask{1} << a;
    double acc = 0.0;
    for (Mask s = 0; s < c.p().size(); ++s) {
      if (s & bit) continue;
      acc += coef[static_cast<std::size_t>(cardinality(s))] * (c[s] - c[s | bit]);
    }
    psi[static_cast<std::size_t>(a)] = acc;
  }
  return detail::finish(c.axioms(), std::move(psi), AllocationMethod::shapley);
}

/// Shapley through contributions: each alpha*_S is split equally among the
/// axioms outside S.
inline IncompatibilityAllocation shapley_via_moebius(const Collection& c, double tol = kDefaultTolerance) {
  require_feasible(c, tol);
  const int j = c.size();
  const auto alpha = moebius_superset(c.p());
  std::vector<double> psi(static_cast<std::size_t>(j), 0.0);
  for (Mask s = 0; s < alpha.size(); ++s) {
    const int outside = j - cardinality(s);
    if (outside == 0) continue;
    const double share = alpha[s] / outside;
    for (int a = 0; a < j; ++a) {
      if (!(s >> a & 1u)) psi[static_cast<std::size_t>(a)] += share;
    }
  }
  return detail::finish(c.axioms(), std::move(psi), AllocationMethod::shapley);
}

/// Banzhaf measure. Does not allocate 1 - p_A in general; total is reported
/// as computed.
inline IncompatibilityAllocation banzhaf(const Collection& c) {
  const int j = c.size();
  const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << (j - 1));
  std::vector<double> psi(static_cast<std::size_t>(j), 0.0);
  for (int a = 0; a < j; ++a) {
    const Mask bit = Mask{1} << a;
    double acc = 0.0;
    for (Mask s = 0; s < c.p().size(); ++s) {
      if (!(s & bit)) acc += c[s] - c[s | bit];
    }
    psi[static_cast<std::size_t>(a)] = scale * acc;
  }
  return detail::finish(c.axioms(), std::move(psi), AllocationMethod::banzhaf);
}

inline constexpr int kMaxBruteforceAxioms = 8;

/// Average marginal contribution to v = 1 - p over all J! arrival orders.
inline IncompatibilityAllocation shapley_bruteforce(const Collection& c) {
  const int j = c.size();
  if (j > kMaxBruteforceAxioms) throw SizeError("permutation oracle limited to J <= 8");
  const auto game = to_game(c);
  std::vector<int> order(static_cast<std::size_t>(j));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> psi(static_cast<std::size_t>(j), 0.0);
  std::uint64_t count = 0;
  do {
    Mask pred = 0;
    for (int a : order) {
      const Mask next = pred | (Mask{1} << a);
      psi[static_cast<std::size_t>(a)] += game.v[next] - game.v[pred];
      pred = next;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& x : psi) x /= static_cast<double>(count);
  return detail::finish(c.axioms(), std::move(psi), AllocationMethod::shapley);
}

}  // namespace axiometer
