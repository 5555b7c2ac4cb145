#pragma once

// Performance of a rule given its satisfaction collection p and a capacity u.
//
// Three measures are provided, each a weighted sum of u_S over non-empty S:
//   moebius       weights = contributions of p (superset Moebius transform)
//   weighted_sum  weights = p itself
//   min_diff      weights = p_S - max_{T strictly above S} p_T  (0 above A)
// Only the first satisfies both "expected valuation on single-axiom-reducible
// collections" and "same contribution, same impact".

#include <algorithm>
#include <cmath>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axiometer/capacities.hpp"
#include "axiometer/collections.hpp"
#include "axiometer/errors.hpp"
#include "axiometer/subset_lattice.hpp"

namespace axiometer {

enum class Measure { moebius, weighted_sum, min_diff };

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::moebius: return "moebius";
    case Measure::weighted_sum: return "weighted_sum";
    case Measure::min_diff: return "min_diff";
  }
  return "?";
}

inline Measure parse_measure(std::string_view s) {
  if (s == "moebius") return Measure::moebius;
  if (s == "weighted_sum") return Measure::weighted_sum;
  if (s == "min_diff") return Measure::min_diff;
  throw ParseError("unknown measure '" + std::string(s) + "'");
}

struct PerformanceResult {
  double value = 0.0;
  SubsetVector weights;  // multiplier of u_S; entry 0 unused (0)
  Measure measure = Measure::moebius;
};

namespace detail {

inline void check_same_axioms(const Capacity& u, const Collection& c) {
  if (!(u.axioms() == c.axioms())) throw SchemaError("capacity and collection use different axiom sets");
}

inline PerformanceResult weighted(const Capacity& u, SubsetVector weights, Measure tag) {
  weights[0] = 0.0;
  double value = 0.0;
  for (Mask s = 1; s < weights.size(); ++s) value += u[s] * weights[s];
  return {value, std::move(weights), tag};
}

}  // namespace detail

/// Contributions of a feasible collection on non-empty masks.
inline SubsetVector moebius_weights(const Collection& c, double tol = kDefaultTolerance) {
  require_feasible(c, tol);
  auto alpha = moebius_superset(c.p());
  alpha[0] = 0.0;
  return alpha;
}

/// Weighted Moebius performance: sum of u_S * alpha_S.
inline PerformanceResult perf_moebius(const Capacity& u, const Collection& c, double tol = kDefaultTolerance) {
  detail::check_same_axioms(u, c);
  return detail::weighted(u, moebius_weights(c, tol), Measure::moebius);
}

/// Same value as perf_moebius computed on the capacity side:
/// sum of p_S * (subset Moebius transform of u)_S.
inline double perf_moebius_via_capacity(const Capacity& u, const Collection& c, double tol = kDefaultTolerance) {
  detail::check_same_axioms(u, c);
  require_feasible(c, tol);
  const auto mu = capacity_moebius(u);
  double value = 0.0;
  for (Mask s = 1; s < mu.size(); ++s) value += c[s] * mu[s];
  return value;
}

inline PerformanceResult perf_weighted_sum(const Capacity& u, const Collection& c, double tol = kDefaultTolerance) {
  detail::check_same_axioms(u, c);
  require_feasible(c, tol);
  return detail::weighted(u, c.p(), Measure::weighted_sum);
}

/// p_S minus the largest p over strict supersets of S; p-hat_A = 0.
inline SubsetVector min_diff_weights(const Collection& c) {
  const auto& p = c.p();
  const Mask full = p.full();
  // best[S] = max over T >= S of p_T.
  SubsetVector best = p;
  for (Mask bit = 1; bit <= full; bit <<= 1) {
    for (Mask s = 0; s <= full; ++s) {
      if (!(s & bit)) best[s] = std::max(best[s], best[s | bit]);
    }
  }
  SubsetVector w(p.axiom_count());
  for (Mask s = 1; s <= full; ++s) {
    double above = 0.0;
    for (Mask rest = full & ~s; rest; rest &= rest - 1) {
      above = std::max(above, best[s | (rest & (~rest + 1))]);
    }
    w[s] = p[s] - above;
  }
  return w;
}

inline PerformanceResult perf_min_diff(const Capacity& u, const Collection& c, double tol = kDefaultTolerance) {
  detail::check_same_axioms(u, c);
  require_feasible(c, tol);
  return detail::weighted(u, min_diff_weights(c), Measure::min_diff);
}

inline PerformanceResult evaluate(Measure m, const Capacity& u, const Collection& c, double tol = kDefaultTolerance) {
  switch (m) {
    case Measure::moebius: return perf_moebius(u, c, tol);
    case Measure::weighted_sum: return perf_weighted_sum(u, c, tol);
    case Measure::min_diff: return perf_min_diff(u, c, tol);
  }
  throw ParseError("unknown measure");
}

struct RankedEntry {
  std::string name;
  double value = 0.0;
  int rank = 1;          // 1-based; tied entries share a rank
  bool tied = false;     // equal (within tolerance) to another entry
  std::size_t input_index = 0;
};

struct NamedCollection {
  std::string name;
  Collection collection;
};

inline constexpr double kTieTolerance = 1e-9;

/// Descending by value. Values within kTieTolerance are ties and keep input
/// order. Insertion sort keeps the tolerance comparison well defined.
inline std::vector<RankedEntry> rank(std::span<const NamedCollection> entries, const Capacity& u, Measure m,
                                     double tol = kDefaultTolerance) {
  if (entries.empty()) return {};
  const auto& axioms = entries.front().collection.axioms();
  for (const auto& e : entries) {
    if (!(e.collection.axioms() == axioms)) throw SchemaError("rank: entries use different axiom sets");
  }
  std::vector<RankedEntry> out;
  out.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    RankedEntry r;
    r.name = entries[i].name;
    r.value = evaluate(m, u, entries[i].collection, tol).value;
    r.input_index = i;
    auto pos = out.end();
    while (pos != out.begin() && std::prev(pos)->value < r.value - kTieTolerance) --pos;
    out.insert(pos, std::move(r));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool same_as_prev = i > 0 && std::abs(out[i - 1].value - out[i].value) <= kTieTolerance;
    out[i].rank = same_as_prev ? out[i - 1].rank : static_cast<int>(i) + 1;
    if (same_as_prev) out[i].tied = out[i - 1].tied = true;
  }
  return out;
}

}  // namespace axiometer
