#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "axiometer/incompatibility.hpp"
#include "test_support.hpp"

namespace axiometer {
namespace {

using testing::table_collection;

const std::array<double, 7> kThreeAxioms{1, 0.8, 0.4, 0.8, 0.4, 0.35, 0.35};

void expect_values(const IncompatibilityAllocation& a, const std::vector<double>& expected, double tol) {
  ASSERT_EQ(a.values.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(a.values[i], expected[i], tol) << i;
}

TEST(Game, Complement) {
  const auto g = to_game(table_collection(kThreeAxioms));
  EXPECT_EQ(g.v[0], 0.0);
  EXPECT_NEAR(g.v[7], 0.65, 1e-12);
  const auto ones = to_game(extreme(AxiomSet::numbered(3), 7));
  for (double x : ones.v.values()) EXPECT_EQ(x, 0.0);
}

TEST(Game, UnanimityComplementIsUnanimityGame) {
  const auto c = table_collection({1, 1, 1, 1, 0, 1, 0});
  const auto g = to_game(c);
  for (Mask s = 0; s < 8; ++s) EXPECT_EQ(g.v[s], is_subset(0b101, s) ? 1.0 : 0.0);
  EXPECT_THROW(shapley(c), InfeasibleCollectionError);
}

TEST(Method, ParseAndPrint) {
  EXPECT_EQ(parse_allocation_method("banzhaf"), AllocationMethod::banzhaf);
  EXPECT_EQ(to_string(AllocationMethod::shapley), "shapley");
  EXPECT_THROW(parse_allocation_method("owen"), ParseError);
}

TEST(Coefficients, SumToOneOverAllOrders) {
  for (int j = 1; j <= kMaxAxioms; ++j) {
    const auto w = detail::shapley_coefficients(j);
    double total = 0.0;
    double binom = 1.0;
    for (int s = 0; s < j; ++s) {
      total += binom * w[static_cast<std::size_t>(s)];
      binom = binom * (j - 1 - s) / (s + 1);
    }
    EXPECT_NEAR(total, 1.0, 1e-12) << j;
  }
}

TEST(Shapley, ThreeAxiomTable) {
  const auto c = table_collection(kThreeAxioms);
  for (const auto& a : {shapley(c), shapley_via_moebius(c), shapley_bruteforce(c)}) {
    expect_values(a, {0, 0.125, 0.525}, 1e-12);
    EXPECT_NEAR(a.total, 0.65, 1e-12);
    EXPECT_EQ(a.method, AllocationMethod::shapley);
  }
}

TEST(Shapley, TrivialCases) {
  const auto axioms = AxiomSet::numbered(4);
  expect_values(shapley(extreme(axioms, axioms.full())), {0, 0, 0, 0}, 1e-15);
  expect_values(shapley(extreme(axioms, 0)), {0.25, 0.25, 0.25, 0.25}, 1e-15);
  // Depends only on |S|.
  SubsetVector p(4);
  const std::array<double, 5> by_size{1, 0.55, 0.35, 0.25, 0.2};
  for (Mask s = 0; s < 16; ++s) p[s] = by_size[static_cast<std::size_t>(cardinality(s))];
  expect_values(shapley(Collection(axioms, p)), {0.2, 0.2, 0.2, 0.2}, 1e-12);
}

TEST(ShapleyViaMoebius, ExtremePoints) {
  const auto axioms = AxiomSet::numbered(4);
  for (Mask s = 0; s < 15; ++s) {
    const auto a = shapley_via_moebius(extreme(axioms, s));
    const double share = 1.0 / (4 - cardinality(s));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.values[static_cast<std::size_t>(i)], (s >> i & 1u) ? 0.0 : share, 1e-15);
  }
}

TEST(Banzhaf, ThreeAxiomTableAndFailures) {
  const auto b = banzhaf(table_collection(kThreeAxioms));
  expect_values(b, {0, 0.125, 0.525}, 1e-12);
  EXPECT_EQ(b.method, AllocationMethod::banzhaf);
  const auto zero = banzhaf(extreme(testing::three_axioms(), 0));
  expect_values(zero, {0.25, 0.25, 0.25}, 1e-15);
  EXPECT_NEAR(zero.total, 0.75, 1e-15);
  expect_values(banzhaf(extreme(testing::three_axioms(), 7)), {0, 0, 0}, 1e-15);
}

TEST(Banzhaf, SingleAxiomMatchesShapley) {
  const Collection c(AxiomSet::numbered(1), SubsetVector(1, {1, 0.35}));
  expect_values(banzhaf(c), {0.65}, 1e-15);
  expect_values(shapley(c), {0.65}, 1e-15);
}

TEST(Bruteforce, Limits) {
  EXPECT_THROW(shapley_bruteforce(extreme(AxiomSet::numbered(9), 0)), SizeError);
  expect_values(shapley_bruteforce(extreme(AxiomSet::numbered(3), 7)), {0, 0, 0}, 0.0);
}

TEST(Properties, FormulasAgree) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = random_collection(AxiomSet::numbered(1 + trial % 6), rng, 0.7);
    const auto a = shapley(c);
    const auto b = shapley_via_moebius(c);
    const auto d = shapley_bruteforce(c);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      ASSERT_NEAR(a.values[i], b.values[i], 1e-9);
      ASSERT_NEAR(a.values[i], d.values[i], 1e-9);
    }
  }
}

TEST(Properties, Allocation) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = random_collection(AxiomSet::numbered(1 + trial % 10), rng);
    const auto a = shapley(c);
    ASSERT_NEAR(a.total, 1.0 - c[c.p().full()], 1e-9);
    ASSERT_NEAR(std::accumulate(a.values.begin(), a.values.end(), 0.0), a.total, 1e-12);
  }
}

TEST(Properties, Anonymity) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const int j = 2 + trial % 7;
    const auto c = random_collection(AxiomSet::numbered(j), rng);
    std::vector<int> perm(static_cast<std::size_t>(j));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto base = shapley(c);
    const auto moved = shapley(permute(c, perm));
    for (int a = 0; a < j; ++a) {
      ASSERT_NEAR(moved.values[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])],
                  base.values[static_cast<std::size_t>(a)], 1e-9);
    }
  }
}

TEST(Properties, ConvexLinearity) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    const auto axioms = AxiomSet::numbered(1 + trial % 8);
    const auto p = random_collection(axioms, rng);
    const auto q = random_collection(axioms, rng);
    for (double l : {0.0, 0.25, 0.5, 1.0}) {
      const auto mix = shapley(Collection(axioms, l * p.p() + (1.0 - l) * q.p()));
      const auto sp = shapley(p);
      const auto sq = shapley(q);
      for (std::size_t i = 0; i < mix.values.size(); ++i) {
        ASSERT_NEAR(mix.values[i], l * sp.values[i] + (1.0 - l) * sq.values[i], 1e-9);
      }
    }
  }
}

// p_S - p_{S+a} is the sum of alpha_T over T >= S with a not in T, so the
// marginals of a survive any reshuffling of mass among sets containing a.
TEST(Properties, SameCostSameIncompatibility) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int j = 2 + trial % 6;
    const auto axioms = AxiomSet::numbered(j);
    const auto p = random_collection(axioms, rng);
    const int a = trial % j;
    const Mask bit = Mask{1} << a;
    auto alpha = contributions(p).alpha;
    double moved = 0.0;
    double drawn = 0.0;
    std::vector<double> fresh(alpha.size(), 0.0);
    for (Mask t = 0; t < alpha.size(); ++t) {
      if (!(t & bit)) continue;
      moved += alpha[t];
      fresh[t] = unif(rng);
      drawn += fresh[t];
    }
    for (Mask t = 0; t < alpha.size(); ++t) {
      if (t & bit) alpha[t] = moved * fresh[t] / drawn;
    }
    const auto q = reconstruct(contribution_vector(axioms, alpha));
    for (Mask s = 0; s < alpha.size(); ++s) {
      if (!(s & bit)) {
        ASSERT_NEAR(p[s] - p[s | bit], q[s] - q[s | bit], 1e-12);
      }
    }
    ASSERT_NEAR(shapley(p).values[static_cast<std::size_t>(a)], shapley(q).values[static_cast<std::size_t>(a)],
                1e-9);
  }
}

TEST(Properties, NoCostNoIncompatibility) {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int j = 2 + trial % 6;
    const auto axioms = AxiomSet::numbered(j);
    const int a = trial % j;
    const Mask bit = Mask{1} << a;
    SubsetVector alpha(j);
    double total = 0.0;
    for (Mask t = 0; t < alpha.size(); ++t) {
      if (t & bit) total += alpha[t] = unif(rng);
    }
    alpha *= 1.0 / total;
    const Collection c(axioms, zeta_superset(alpha));
    for (Mask s = 0; s < alpha.size(); ++s) {
      if (!(s & bit)) {
        ASSERT_NEAR(c[s | bit], c[s], 1e-12);
      }
    }
    ASSERT_NEAR(c[bit], 1.0, 1e-12);
    ASSERT_NEAR(shapley(c).values[static_cast<std::size_t>(a)], 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace axiometer
