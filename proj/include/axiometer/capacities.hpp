#pragma once

// Intrinsic valuations of axiom combinations (capacities) and their
// structural classification.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axiometer/errors.hpp"
#include "axiometer/subset_lattice.hpp"

namespace axiometer {

/// u_S >= 0 for every subset, u at the empty set fixed to 0. Monotonicity is
/// reported by validate_capacity() rather than enforced here.
class Capacity {
 public:
  Capacity() = default;

  Capacity(AxiomSet axioms, SubsetVector u) : axioms_(std::move(axioms)), u_(std::move(u)) {
    if (u_.axiom_count() != axioms_.size()) throw SizeError("capacity does not match its axiom set");
    for (Mask s = 1; s < u_.size(); ++s) {
      if (!(u_[s] >= 0.0)) throw RangeError("u[" + axioms_.name_of(s) + "] must be non-negative");
    }
    u_[0] = 0.0;
  }

  const AxiomSet& axioms() const noexcept { return axioms_; }
  const SubsetVector& u() const noexcept { return u_; }
  double operator[](Mask s) const { return u_[s]; }

 private:
  AxiomSet axioms_;
  SubsetVector u_;
};

struct CapacityReport {
  bool monotone = true;
  bool strict = true;
  /// nullopt when J is too large for the 3^J bipartition sweep.
  std::optional<bool> superadditive;
  std::optional<bool> subadditive;
};

inline constexpr int kMaxBipartitionAxioms = 14;

inline CapacityReport validate_capacity(const Capacity& cap, double tol = 1e-9) {
  CapacityReport r;
  const auto& u = cap.u();
  const Mask full = u.full();
  // Covering pairs T -> T + a.
  for (Mask t = 0; t <= full; ++t) {
    for (Mask rest = full & ~t; rest; rest &= rest - 1) {
      const Mask a = rest & (~rest + 1);
      const double gap = u[t | a] - u[t];
      if (gap < -tol) r.monotone = false;
      if (!(gap > tol)) r.strict = false;
    }
  }
  if (cap.axioms().size() > kMaxBipartitionAxioms) return r;

  bool super = true;
  bool sub = true;
  for (Mask s = 1; s <= full; ++s) {
    // Each unordered pair {T, S\T} is visited twice; harmless.
    for (Mask t = (s - 1) & s; t; t = (t - 1) & s) {
      const double parts = u[t] + u[s ^ t];
      if (u[s] < parts - tol) super = false;
      if (u[s] > parts + tol) sub = false;
    }
  }
  r.superadditive = super;
  r.subadditive = sub;
  return r;
}

/// u_S = g[|S|] for a non-decreasing g with g[0] = 0.
inline Capacity cardinality_capacity(const AxiomSet& axioms, std::span<const double> g) {
  if (g.size() != static_cast<std::size_t>(axioms.size()) + 1) {
    throw SizeError("cardinality profile needs J + 1 = " + std::to_string(axioms.size() + 1) + " entries");
  }
  if (g[0] != 0.0) throw MonotonicityError("g[0] must be 0");
  for (std::size_t k = 1; k < g.size(); ++k) {
    if (g[k] < g[k - 1]) throw MonotonicityError("cardinality profile must be non-decreasing");
  }
  SubsetVector u(axioms.size());
  for (Mask s = 0; s < u.size(); ++s) u[s] = g[static_cast<std::size_t>(cardinality(s))];
  return Capacity(axioms, std::move(u));
}

inline Capacity cardinality_capacity(const AxiomSet& axioms, std::initializer_list<double> g) {
  std::vector<double> v(g);
  return cardinality_capacity(axioms, std::span<const double>(v));
}

/// Subset-order Moebius transform of u (0 at the empty set).
inline SubsetVector capacity_moebius(const Capacity& cap) { return moebius_subset(cap.u()); }

/// Divides by u_A when it is positive; otherwise returns the input.
inline Capacity normalize(const Capacity& cap) {
  const double top = cap[cap.axioms().full()];
  if (!(top > 0.0)) return cap;
  return Capacity(cap.axioms(), (1.0 / top) * cap.u());
}

}  // namespace axiometer
