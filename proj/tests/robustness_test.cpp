#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "axiometer/robustness.hpp"
#include "test_support.hpp"

namespace axiometer {
namespace {

// With u = u^{a1} style capacity on J = 1, m of p^{lambda,a1} is lambda * u,
// so families with any target values can be built directly.
const AxiomSet kOne = AxiomSet::numbered(1);
const Capacity kUnit(kOne, SubsetVector(1, {0, 10}));

CollectionFamily family_with(const std::vector<double>& values, std::vector<std::string> names = {}) {
  std::vector<Collection> members;
  for (double v : values) members.push_back(edge(kOne, 1, v / 10.0));
  return CollectionFamily(kOne, std::move(members), std::move(names));
}

TEST(Family, Construction) {
  const auto f = family_with({3, 1});
  EXPECT_EQ(f.model_names(), (std::vector<std::string>{"model_1", "model_2"}));
  EXPECT_THROW(CollectionFamily(kOne, {}, {}), SizeError);
  EXPECT_THROW(family_with({3, 1}, {"only"}), SchemaError);
  const Collection bad(testing::three_axioms(), SubsetVector(3, {1, .7, .7, .7, .7, .7, .7, .4}));
  EXPECT_THROW(CollectionFamily(testing::three_axioms(), {bad}, {}), InfeasibleCollectionError);
  EXPECT_THROW(CollectionFamily(kOne, {extreme(testing::three_axioms(), 1)}, {}), SchemaError);
}

TEST(Summarize, KnownValues) {
  const auto axioms = testing::three_axioms();
  const auto p = random_collection(axioms, std::uint64_t{3});
  const CollectionFamily single(axioms, {p}, {});
  EXPECT_EQ(summarize(single).p(), p.p());
  const CollectionFamily twice(axioms, {p, p}, {});
  const auto s = summarize(twice);
  for (Mask m = 0; m < 8; ++m) EXPECT_NEAR(s[m], p[m], 1e-15);
  const CollectionFamily mix(axioms, {extreme(axioms, 0b101), extreme(axioms, 0)}, {});
  const std::vector<double> beta{0.6, 0.4};
  const auto e = summarize(mix, beta);
  for (Mask m = 0; m < 8; ++m) EXPECT_NEAR(e[m], edge(axioms, 0b101, 0.6)[m], 1e-15);
}

TEST(Summarize, BadWeights) {
  const auto f = family_with({3, 1});
  EXPECT_THROW(summarize(f, std::vector<double>{1.0}), WeightError);
  EXPECT_THROW(summarize(f, std::vector<double>{1.5, -0.5}), WeightError);
  EXPECT_THROW(summarize(f, std::vector<double>{0.5, 0.4}), WeightError);
}

TEST(AlphaMaxmin, Extremes) {
  const auto f = family_with({3, 1, 2});
  EXPECT_NEAR(alpha_maxmin_score(kUnit, f, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(alpha_maxmin_score(kUnit, f, 1.0), 3.0, 1e-12);
  EXPECT_NEAR(alpha_maxmin_score(kUnit, f, 0.25), 1.5, 1e-12);
  const auto one = family_with({2.5});
  for (double a : {0.0, 0.3, 1.0}) EXPECT_NEAR(alpha_maxmin_score(kUnit, one, a), 2.5, 1e-12);
  EXPECT_THROW(alpha_maxmin_score(kUnit, f, 1.1), RangeError);
}

TEST(MaxAndMin, Verdicts) {
  EXPECT_EQ(compare_max_and_min(kUnit, family_with({3, 1}), family_with({2, 2})).verdict, Verdict::incomparable);
  EXPECT_EQ(compare_max_and_min(kUnit, family_with({3, 1}), family_with({3, 1})).verdict, Verdict::equivalent);
  EXPECT_EQ(compare_max_and_min(kUnit, family_with({3, 2}), family_with({2, 1})).verdict, Verdict::better);
  EXPECT_EQ(compare_max_and_min(kUnit, family_with({2, 1}), family_with({3, 2})).verdict, Verdict::worse);
}

TEST(Pointwise, Verdicts) {
  EXPECT_EQ(compare_pointwise(kUnit, family_with({5, 4}), family_with({4, 4})).verdict, Verdict::better);
  EXPECT_EQ(compare_pointwise(kUnit, family_with({5, 3}), family_with({4, 4})).verdict, Verdict::incomparable);
  EXPECT_EQ(compare_pointwise(kUnit, family_with({5, 3}), family_with({5, 3})).verdict, Verdict::equivalent);
}

TEST(Pointwise, RefusesMisalignedModels) {
  const auto f = family_with({5, 4}, {"ic", "mallows"});
  const auto g = family_with({4, 4}, {"mallows", "ic"});
  EXPECT_THROW(compare_pointwise(kUnit, f, g), AlignmentError);
  EXPECT_THROW(compare_pointwise(kUnit, f, family_with({4})), AlignmentError);
  EXPECT_NO_THROW(compare_max_and_min(kUnit, f, g));
}

TEST(MinVsMax, Verdicts) {
  EXPECT_EQ(compare_min_vs_max(kUnit, family_with({4, 5}), family_with({1, 3})).verdict, Verdict::better);
  EXPECT_EQ(compare_min_vs_max(kUnit, family_with({4, 5}), family_with({4.5, 4.6})).verdict, Verdict::incomparable);
  EXPECT_EQ(compare_min_vs_max(kUnit, family_with({2, 2}), family_with({2, 2})).verdict, Verdict::equivalent);
  EXPECT_EQ(compare_min_vs_max(kUnit, family_with({1, 3}), family_with({1, 3})).verdict, Verdict::equivalent);
  EXPECT_EQ(compare_min_vs_max(kUnit, family_with({1, 3}), family_with({3, 1})).verdict, Verdict::incomparable);
}

TEST(Compare, DispatchAndParse) {
  for (auto c : {Criterion::alpha_maxmin, Criterion::max_and_min, Criterion::pointwise, Criterion::min_vs_max}) {
    EXPECT_EQ(parse_criterion(to_string(c)), c);
  }
  EXPECT_THROW(parse_criterion("regret"), ParseError);
  const auto r = compare(Criterion::alpha_maxmin, kUnit, family_with({3, 1}), family_with({2, 2}), 0.0);
  EXPECT_EQ(r.verdict, Verdict::worse);
  EXPECT_EQ(compare(Criterion::alpha_maxmin, kUnit, family_with({3, 1}), family_with({2, 2}), 1.0).verdict,
            Verdict::better);
  EXPECT_EQ(r.values_f.size(), 2u);
}

TEST(Compare, MixedAxiomsRejected) {
  const auto axioms = testing::three_axioms();
  const CollectionFamily g(axioms, {extreme(axioms, 1)}, {});
  EXPECT_THROW(compare_max_and_min(kUnit, family_with({1}), g), SchemaError);
}

bool same_direction(Verdict strong, Verdict weak) {
  if (strong == Verdict::incomparable) return true;
  return strong == weak;
}

TEST(Properties, NestingOfPartialCriteria) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int decisive_mvm = 0;
  int decisive_pw = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto axioms = AxiomSet::numbered(1 + trial % 6);
    const int k = 1 + trial % 5;
    const auto u = testing::random_capacity(axioms, rng);
    std::vector<Collection> fm;
    std::vector<Collection> gm;
    // Shrinking toward the null collection scales m-values down, which
    // makes decisive verdicts common enough to exercise every branch.
    const double shrink = trial % 3 == 0 ? 0.2 : trial % 3 == 1 ? 0.9 : 1.0;
    for (int i = 0; i < k; ++i) {
      const auto p = random_collection(axioms, rng);
      fm.push_back(p);
      const double l = trial % 3 == 2 ? 1.0 : shrink * unif(rng);
      gm.emplace_back(axioms, trial % 3 == 2 ? random_collection(axioms, rng).p() : l * p.p());
    }
    const CollectionFamily f(axioms, fm, {});
    const CollectionFamily g(axioms, gm, {});
    const auto mvm = compare_min_vs_max(u, f, g).verdict;
    const auto pw = compare_pointwise(u, f, g).verdict;
    const auto mm = compare_max_and_min(u, f, g).verdict;
    ASSERT_TRUE(same_direction(mvm, pw));
    ASSERT_TRUE(same_direction(pw, mm));
    decisive_mvm += mvm != Verdict::incomparable;
    decisive_pw += pw != Verdict::incomparable;
    for (double a : {0.0, 0.5, 1.0}) {
      const auto am = compare_alpha_maxmin(u, f, g, a).verdict;
      ASSERT_NE(am, Verdict::incomparable);
      if (mm == Verdict::better) {
        ASSERT_NE(am, Verdict::worse);
      }
      if (mm == Verdict::worse) {
        ASSERT_NE(am, Verdict::better);
      }
      if (mm == Verdict::equivalent) {
        ASSERT_EQ(am, Verdict::equivalent);
      }
    }
  }
  EXPECT_GT(decisive_mvm, 50);
  EXPECT_GT(decisive_pw, 200);
}

TEST(Properties, SummarizeCommutesWithLinearMeasures) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto axioms = AxiomSet::numbered(1 + trial % 6);
    const int k = 1 + trial % 4;
    std::vector<Collection> members;
    std::vector<double> beta;
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      members.push_back(random_collection(axioms, rng));
      beta.push_back(unif(rng) + 1e-3);
      total += beta.back();
    }
    for (auto& b : beta) b /= total;
    const CollectionFamily fam(axioms, members, {});
    const auto u = testing::random_capacity(axioms, rng);
    const auto s = summarize(fam, beta);
    for (auto m : {Measure::weighted_sum, Measure::moebius}) {
      const auto values = measure_values(u, fam, m);
      double mixed = 0.0;
      for (int i = 0; i < k; ++i) mixed += beta[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
      ASSERT_NEAR(evaluate(m, u, s).value, mixed, 1e-9);
    }
  }
}

}  // namespace
}  // namespace axiometer
