#pragma once

// Comparing rules when several probability models are plausible. Each rule
// comes with a family of collections, one per model.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axiometer/capacities.hpp"
#include "axiometer/collections.hpp"
#include "axiometer/errors.hpp"
#include "axiometer/performance.hpp"

namespace axiometer {

class CollectionFamily {
 public:
  CollectionFamily(AxiomSet axioms, std::vector<Collection> members, std::vector<std::string> model_names,
                   double tol = kDefaultTolerance)
      : axioms_(std::move(axioms)), members_(std::move(members)), model_names_(std::move(model_names)) {
    if (members_.empty()) throw SizeError("a family needs at least one collection");
    if (model_names_.empty()) {
      for (std::size_t k = 0; k < members_.size(); ++k) model_names_.push_back("model_" + std::to_string(k + 1));
    }
    if (model_names_.size() != members_.size()) throw SchemaError("one model name per collection is required");
    for (const auto& c : members_) {
      if (!(c.axioms() == axioms_)) throw SchemaError("family members must share the axiom set");
      require_feasible(c, tol);
    }
  }

  const AxiomSet& axioms() const noexcept { return axioms_; }
  const std::vector<Collection>& members() const noexcept { return members_; }
  const std::vector<std::string>& model_names() const noexcept { return model_names_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  AxiomSet axioms_;
  std::vector<Collection> members_;
  std::vector<std::string> model_names_;
};

/// Convex combination of the family's collections.
inline Collection summarize(const CollectionFamily& fam, std::span<const double> beta) {
  if (beta.size() != fam.size()) throw WeightError("need one weight per family member");
  double total = 0.0;
  for (double b : beta) {
    if (!(b >= 0.0)) throw WeightError("weights must be non-negative");
    total += b;
  }
  if (std::abs(total - 1.0) > 1e-9) throw WeightError("weights must sum to 1");
  SubsetVector p(fam.axioms().size());
  for (std::size_t k = 0; k < fam.size(); ++k) p += beta[k] * fam.members()[k].p();
  return Collection(fam.axioms(), std::move(p));
}

inline Collection summarize(const CollectionFamily& fam) {
  const std::vector<double> uniform(fam.size(), 1.0 / static_cast<double>(fam.size()));
  return summarize(fam, uniform);
}

inline std::vector<double> measure_values(const Capacity& u, const CollectionFamily& fam,
                                          Measure m = Measure::moebius) {
  std::vector<double> out;
  out.reserve(fam.size());
  for (const auto& c : fam.members()) out.push_back(evaluate(m, u, c).value);
  return out;
}

inline double alpha_maxmin_score(const Capacity& u, const CollectionFamily& fam, double alpha,
                                 Measure m = Measure::moebius) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw RangeError("alpha must lie in [0, 1]");
  const auto values = measure_values(u, fam, m);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return alpha * *hi + (1.0 - alpha) * *lo;
}

enum class Verdict { better, worse, equivalent, incomparable };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::better: return "better";
    case Verdict::worse: return "worse";
    case Verdict::equivalent: return "equivalent";
    case Verdict::incomparable: return "incomparable";
  }
  return "?";
}

enum class Criterion { alpha_maxmin, max_and_min, pointwise, min_vs_max };

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::alpha_maxmin: return "alpha_maxmin";
    case Criterion::max_and_min: return "max_and_min";
    case Criterion::pointwise: return "pointwise";
    case Criterion::min_vs_max: return "min_vs_max";
  }
  return "?";
}

inline Criterion parse_criterion(std::string_view s) {
  if (s == "alpha_maxmin") return Criterion::alpha_maxmin;
  if (s == "max_and_min") return Criterion::max_and_min;
  if (s == "pointwise") return Criterion::pointwise;
  if (s == "min_vs_max") return Criterion::min_vs_max;
  throw ParseError("unknown criterion '" + std::string(s) + "'");
}

/// Verdict for F against G plus the per-model values behind it.
struct Comparison {
  Verdict verdict = Verdict::incomparable;
  std::vector<double> values_f;
  std::vector<double> values_g;
};

inline constexpr double kCompareTolerance = 1e-9;

namespace detail {

inline void check_same_axioms(const CollectionFamily& f, const CollectionFamily& g, const Capacity& u) {
  if (!(f.axioms() == g.axioms()) || !(u.axioms() == f.axioms())) {
    throw SchemaError("families and capacity must share the axiom set");
  }
}

/// Combines "F weakly above G" and "G weakly above F" into a verdict.
inline Verdict verdict_from(bool f_over_g, bool g_over_f) {
  if (f_over_g && g_over_f) return Verdict::equivalent;
  if (f_over_g) return Verdict::better;
  if (g_over_f) return Verdict::worse;
  return Verdict::incomparable;
}

inline bool geq(double a, double b) { return a >= b - kCompareTolerance; }

inline bool same_values(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > kCompareTolerance) return false;
  }
  return true;
}

}  // namespace detail

inline Comparison compare_max_and_min(const Capacity& u, const CollectionFamily& f, const CollectionFamily& g,
                                      Measure m = Measure::moebius) {
  detail::check_same_axioms(f, g, u);
  Comparison out{Verdict::incomparable, measure_values(u, f, m), measure_values(u, g, m)};
  const auto [f_lo, f_hi] = std::minmax_element(out.values_f.begin(), out.values_f.end());
  const auto [g_lo, g_hi] = std::minmax_element(out.values_g.begin(), out.values_g.end());
  out.verdict = detail::verdict_from(detail::geq(*f_hi, *g_hi) && detail::geq(*f_lo, *g_lo),
                                     detail::geq(*g_hi, *f_hi) && detail::geq(*g_lo, *f_lo));
  return out;
}

/// Model-by-model dominance; only defined when both families were computed
/// under the same list of models.
inline Comparison compare_pointwise(const Capacity& u, const CollectionFamily& f, const CollectionFamily& g,
                                    Measure m = Measure::moebius) {
  detail::check_same_axioms(f, g, u);
  if (f.model_names() != g.model_names()) {
    throw AlignmentError("point-wise comparison needs the same models in the same order");
  }
  Comparison out{Verdict::incomparable, measure_values(u, f, m), measure_values(u, g, m)};
  bool f_over_g = true;
  bool g_over_f = true;
  for (std::size_t k = 0; k < out.values_f.size(); ++k) {
    f_over_g = f_over_g && detail::geq(out.values_f[k], out.values_g[k]);
    g_over_f = g_over_f && detail::geq(out.values_g[k], out.values_f[k]);
  }
  out.verdict = detail::verdict_from(f_over_g, g_over_f);
  return out;
}

inline Comparison compare_min_vs_max(const Capacity& u, const CollectionFamily& f, const CollectionFamily& g,
                                     Measure m = Measure::moebius) {
  detail::check_same_axioms(f, g, u);
  Comparison out{Verdict::incomparable, measure_values(u, f, m), measure_values(u, g, m)};
  const auto [f_lo, f_hi] = std::minmax_element(out.values_f.begin(), out.values_f.end());
  const auto [g_lo, g_hi] = std::minmax_element(out.values_g.begin(), out.values_g.end());
  out.verdict = detail::verdict_from(detail::geq(*f_lo, *g_hi), detail::geq(*g_lo, *f_hi));
  // A family set against an identical copy of itself is equivalent even when
  // its values are spread out.
  if (out.verdict == Verdict::incomparable && detail::same_values(out.values_f, out.values_g)) {
    out.verdict = Verdict::equivalent;
  }
  return out;
}

/// Complete order induced by the alpha-maxmin score.
inline Comparison compare_alpha_maxmin(const Capacity& u, const CollectionFamily& f, const CollectionFamily& g,
                                       double alpha, Measure m = Measure::moebius) {
  detail::check_same_axioms(f, g, u);
  const double sf = alpha_maxmin_score(u, f, alpha, m);
  const double sg = alpha_maxmin_score(u, g, alpha, m);
  return {detail::verdict_from(detail::geq(sf, sg), detail::geq(sg, sf)), measure_values(u, f, m),
          measure_values(u, g, m)};
}

inline Comparison compare(Criterion c, const Capacity& u, const CollectionFamily& f, const CollectionFamily& g,
                          double alpha = 0.5, Measure m = Measure::moebius) {
  switch (c) {
    case Criterion::alpha_maxmin: return compare_alpha_maxmin(u, f, g, alpha, m);
    case Criterion::max_and_min: return compare_max_and_min(u, f, g, m);
    case Criterion::pointwise: return compare_pointwise(u, f, g, m);
    case Criterion::min_vs_max: return compare_min_vs_max(u, f, g, m);
  }
  throw ParseError("unknown criterion");
}

}  // namespace axiometer
