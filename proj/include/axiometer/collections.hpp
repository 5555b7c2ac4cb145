#pragma once

// Collections of satisfaction probabilities over axiom subsets, their
// decomposition into extreme points, and feasibility checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axiometer/errors.hpp"
#include "axiometer/subset_lattice.hpp"

namespace axiometer {

inline constexpr double kDefaultTolerance = 1e-9;

/// p_S for every subset S; p at the empty set is pinned to 1, so the same
/// value serves as an element of P (non-empty entries) and of P*.
class Collection {
 public:
  Collection() = default;

  /// Entries within 1e-12 outside [0, 1] are clamped (transform noise);
  /// anything further out is a RangeError. The empty-set entry is set to 1.
  Collection(AxiomSet axioms, SubsetVector p) : axioms_(std::move(axioms)), p_(std::move(p)) {
    if (p_.axiom_count() != axioms_.size()) {
      throw SizeError("collection has " + std::to_string(p_.axiom_count()) + " axioms' worth of entries, axiom set has " +
                      std::to_string(axioms_.size()));
    }
    constexpr double slack = 1e-12;
    for (Mask s = 1; s < p_.size(); ++s) {
      double& v = p_[s];
      if (!(v >= -slack && v <= 1.0 + slack)) {
        throw RangeError("p[" + axioms_.name_of(s) + "] = " + std::to_string(v) + " is outside [0, 1]");
      }
      v = std::clamp(v, 0.0, 1.0);
    }
    p_[0] = 1.0;
  }

  const AxiomSet& axioms() const noexcept { return axioms_; }
  const SubsetVector& p() const noexcept { return p_; }
  double operator[](Mask s) const { return p_[s]; }
  int size() const noexcept { return axioms_.size(); }

 private:
  AxiomSet axioms_;
  SubsetVector p_;
};

/// Moebius coefficients of a collection. alpha at mask 0 is the mass left on
/// the all-violated world; support lists masks with alpha > tolerance.
struct ContributionVector {
  AxiomSet axioms;
  SubsetVector alpha;
  std::vector<Mask> support;
};

enum class FrechetBound { upper, lower };

inline const char* to_string(FrechetBound b) { return b == FrechetBound::upper ? "upper" : "lower"; }

struct FrechetViolation {
  Mask subset;
  Mask removed;  // the single axiom a with the bound stated against S \ a
  FrechetBound bound;
  double slack;  // amount by which the bound is exceeded (> tol)
};

struct NegativeContribution {
  Mask subset;
  double value;
};

struct FeasibilityReport {
  bool feasible = true;
  /// True when only the Frechet bounds were checked; those are necessary
  /// but not sufficient for membership.
  bool necessary_conditions_only = false;
  std::vector<FrechetViolation> frechet_violations;
  std::vector<NegativeContribution> negative_contributions;
  double tolerance = kDefaultTolerance;
};

/// Checks p_S <= p_{S\a} and p_S >= p_{S\a} - (1 - p_a) for every S with
/// |S| >= 2 and every a in S.
inline FeasibilityReport frechet_check(const Collection& c, double tol = kDefaultTolerance) {
  FeasibilityReport report;
  report.tolerance = tol;
  report.necessary_conditions_only = true;
  const auto& p = c.p();
  for (Mask s = 1; s < p.size(); ++s) {
    if (cardinality(s) < 2) continue;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const Mask a = rest & (~rest + 1);
      const double without = p[s ^ a];
      const double upper_slack = p[s] - without;
      if (upper_slack > tol) report.frechet_violations.push_back({s, a, FrechetBound::upper, upper_slack});
      const double lower = std::max(0.0, without - (1.0 - p[a]));
      const double lower_slack = lower - p[s];
      if (lower_slack > tol) report.frechet_violations.push_back({s, a, FrechetBound::lower, lower_slack});
    }
  }
  report.feasible = report.frechet_violations.empty();
  return report;
}

/// alpha = superset Moebius transform of p over all 2^J masks. Works on
/// infeasible input too (alpha may then be negative).
inline ContributionVector contributions(const Collection& c, double tol = kDefaultTolerance) {
  ContributionVector out{c.axioms(), moebius_superset(c.p()), {}};
  for (Mask s = 0; s < out.alpha.size(); ++s) {
    if (out.alpha[s] > tol) out.support.push_back(s);
  }
  return out;
}

/// Membership in the convex hull of 0 and the extreme points p^{1,S}:
/// every contribution, including the empty-set remainder, is >= -tol.
inline FeasibilityReport is_member(const Collection& c, double tol = kDefaultTolerance) {
  FeasibilityReport report;
  report.tolerance = tol;
  const auto alpha = moebius_superset(c.p());
  for (Mask s = 0; s < alpha.size(); ++s) {
    if (alpha[s] < -tol) report.negative_contributions.push_back({s, alpha[s]});
  }
  report.feasible = report.negative_contributions.empty();
  return report;
}

/// Membership plus the Frechet diagnostics in one report.
inline FeasibilityReport validate(const Collection& c, double tol = kDefaultTolerance) {
  auto report = is_member(c, tol);
  report.frechet_violations = frechet_check(c, tol).frechet_violations;
  return report;
}

inline void require_feasible(const Collection& c, double tol = kDefaultTolerance) {
  const auto report = is_member(c, tol);
  if (report.feasible) return;
  const auto worst = std::min_element(
      report.negative_contributions.begin(), report.negative_contributions.end(),
      [](const auto& a, const auto& b) { return a.value < b.value; });
  const std::string where = worst->subset == 0 ? std::string("{}") : c.axioms().name_of(worst->subset);
  throw InfeasibleCollectionError("collection is not admissible: contribution of " + where + " is " +
                                      std::to_string(worst->value),
                                  worst->value);
}

/// Inverse of contributions(): p = zeta_superset(alpha).
inline Collection reconstruct(const ContributionVector& a, double tol = kDefaultTolerance) {
  double total = 0.0;
  for (Mask s = 0; s < a.alpha.size(); ++s) {
    if (a.alpha[s] < -tol) {
      throw NegativeWeightError("contribution of " + (s ? a.axioms.name_of(s) : std::string("{}")) + " is negative");
    }
    total += a.alpha[s];
  }
  if (std::abs(total - 1.0) > tol) {
    throw NegativeWeightError("contributions sum to " + std::to_string(total) + ", expected 1");
  }
  return Collection(a.axioms, zeta_superset(a.alpha));
}

inline ContributionVector contribution_vector(AxiomSet axioms, SubsetVector alpha, double tol = kDefaultTolerance) {
  ContributionVector out{std::move(axioms), std::move(alpha), {}};
  for (Mask s = 0; s < out.alpha.size(); ++s) {
    if (out.alpha[s] > tol) out.support.push_back(s);
  }
  return out;
}

/// p^{lambda,S}: lambda on every non-empty T within S, 0 elsewhere.
inline Collection edge(const AxiomSet& axioms, Mask s, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw RangeError("lambda must lie in [0, 1]");
  if (s > axioms.full()) throw RangeError("mask outside the axiom set");
  SubsetVector p(axioms.size());
  for (Mask t = 1; t < p.size(); ++t) p[t] = is_subset(t, s) ? lambda : 0.0;
  return Collection(axioms, std::move(p));
}

/// p^{1,S}; S = 0 gives the null collection.
inline Collection extreme(const AxiomSet& axioms, Mask s) { return edge(axioms, s, s == 0 ? 0.0 : 1.0); }

/// Relabels axioms: perm[i] is the new position of axiom i, and the result q
/// satisfies q[perm(S)] = p[S].
inline Collection permute(const Collection& c, std::span<const int> perm) {
  const int j = c.size();
  if (static_cast<int>(perm.size()) != j) throw SizeError("permutation length differs from axiom count");
  std::vector<bool> used(static_cast<std::size_t>(j), false);
  for (int target : perm) {
    if (target < 0 || target >= j || used[static_cast<std::size_t>(target)]) {
      throw RangeError("not a permutation of the axiom indices");
    }
    used[static_cast<std::size_t>(target)] = true;
  }
  std::vector<std::string> labels(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = c.axioms().label(i);
  SubsetVector q(j);
  for (Mask s = 0; s < q.size(); ++s) {
    Mask image = 0;
    for (int i = 0; i < j; ++i) {
      if (s >> i & 1u) image |= Mask{1} << perm[static_cast<std::size_t>(i)];
    }
    q[image] = c[s];
  }
  return Collection(AxiomSet(std::move(labels)), std::move(q));
}

/// Random admissible collection: symmetric Dirichlet weights over the 2^J
/// extreme points, pushed through reconstruct().
template <typename Urbg>
Collection random_collection(const AxiomSet& axioms, Urbg& rng, double concentration = 1.0) {
  if (!(concentration > 0.0)) throw RangeError("Dirichlet concentration must be positive");
  std::gamma_distribution<double> gamma(concentration, 1.0);
  SubsetVector alpha(axioms.size());
  double total = 0.0;
  for (auto& w : alpha.values()) {
    w = gamma(rng);
    total += w;
  }
  if (total <= 0.0) {
    // All draws underflowed (tiny concentration); fall back to one vertex.
    alpha[std::uniform_int_distribution<Mask>(0, axioms.full())(rng)] = 1.0;
    total = 1.0;
  }
  alpha *= 1.0 / total;
  return Collection(axioms, zeta_superset(std::move(alpha)));
}

inline Collection random_collection(const AxiomSet& axioms, std::uint64_t seed, double concentration = 1.0) {
  std::mt19937_64 rng(seed);
  return random_collection(axioms, rng, concentration);
}

inline constexpr int kMaxWorldsMatrixAxioms = 12;

/// Incidence matrix between sentences (non-empty subsets, rows in mask order
/// starting at mask 1) and possible worlds (sets of simultaneously true
/// axioms, columns in mask order starting at 0).
class WorldsMatrix {
 public:
  explicit WorldsMatrix(const AxiomSet& axioms) : j_(axioms.size()) {
    if (j_ > kMaxWorldsMatrixAxioms) {
      throw SizeError("worlds matrix is only materialized for J <= " + std::to_string(kMaxWorldsMatrixAxioms));
    }
    cells_.assign(rows() * cols(), 0);
    for (std::size_t r = 0; r < rows(); ++r) {
      const Mask sentence = static_cast<Mask>(r + 1);
      for (std::size_t w = 0; w < cols(); ++w) {
        cells_[r * cols() + w] = is_subset(sentence, static_cast<Mask>(w)) ? 1 : 0;
      }
    }
  }

  std::size_t rows() const noexcept { return (std::size_t{1} << j_) - 1; }
  std::size_t cols() const noexcept { return std::size_t{1} << j_; }
  int at(std::size_t row, std::size_t col) const { return cells_.at(row * cols() + col); }

  /// H * pi, indexed like SubsetVector with entry 0 left at 0.
  SubsetVector apply(const SubsetVector& pi) const {
    if (pi.size() != cols()) throw SizeError("world distribution has the wrong length");
    SubsetVector out(j_);
    for (std::size_t r = 0; r < rows(); ++r) {
      double acc = 0.0;
      for (std::size_t w = 0; w < cols(); ++w) {
        if (cells_[r * cols() + w]) acc += pi[static_cast<Mask>(w)];
      }
      out[static_cast<Mask>(r + 1)] = acc;
    }
    return out;
  }

 private:
  int j_;
  std::vector<std::uint8_t> cells_;
};

inline WorldsMatrix worlds_matrix(const AxiomSet& axioms) { return WorldsMatrix(axioms); }

/// Possible-worlds feasibility: pi is a distribution over worlds and H * pi
/// reproduces p on every sentence.
inline bool worlds_consistent(const Collection& c, const SubsetVector& pi, double tol = kDefaultTolerance) {
  double total = 0.0;
  for (double w : pi.values()) {
    if (w < -tol) return false;
    total += w;
  }
  if (std::abs(total - 1.0) > tol) return false;
  const auto implied = worlds_matrix(c.axioms()).apply(pi);
  for (Mask s = 1; s < implied.size(); ++s) {
    if (std::abs(implied[s] - c[s]) > tol) return false;
  }
  return true;
}

}  // namespace axiometer
