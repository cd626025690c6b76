#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "progressftx/gains.hpp"

namespace pftx {
namespace {

TEST(PairwiseGain, HandValues) {
  const GmModel m({{2.0, 1.0, 7.0}, {0.0, 0.0, 7.0}}, {1.0, 1.0, 3.0});
  const std::size_t s12[] = {0, 1};
  EXPECT_DOUBLE_EQ(pairwise_gain(m, 0, 1, s12), 5.0);
  EXPECT_DOUBLE_EQ(pairwise_gain(m, 1, 0, s12), 5.0);
  EXPECT_EQ(pairwise_gain(m, 0, 1, {}), 0.0);
  const std::size_t s3[] = {2};
  EXPECT_EQ(pairwise_gain(m, 0, 1, s3), 0.0);
}

TEST(AverageGain, BinaryCollapsesToPairwise) {
  const GmModel m({{0.3, -1.0, 2.0}, {1.1, 0.5, -0.5}}, {0.5, 2.0, 1.0});
  const std::size_t all[] = {0, 1, 2};
  EXPECT_EQ(average_gain(m, all), pairwise_gain(m, 0, 1, all));
}

TEST(AverageGain, EquilateralThreeClass) {
  // Three collinear centroids cannot be pairwise equidistant, so each unit of
  // pair gain is a 2-D block holding an equilateral triangle of side 1.
  const double h = std::sqrt(3.0) / 2.0;
  const GmModel m({{0.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 1.0, 0.0}, {0.5, h, 0.5, h}}, {1, 1, 1, 1});
  const std::size_t block1[] = {0, 1}, both[] = {0, 1, 2, 3};
  EXPECT_NEAR(average_gain(m, block1), 1.0, 1e-12);
  EXPECT_NEAR(average_gain(m, both), 2.0, 1e-12);
}

TEST(AverageGain, AdditiveOverDisjointUnions) {
  Rng rng(3);
  std::normal_distribution<double> nd;
  std::vector<Vector> c(4, Vector(10));
  for (auto& v : c)
    for (auto& x : v) x = nd(rng);
  Vector var(10);
  for (auto& v : var) v = 0.5 + std::fabs(nd(rng));
  const GmModel m(c, var);
  const std::size_t a[] = {0, 3, 5}, b[] = {1, 2, 9}, ab[] = {0, 3, 5, 1, 2, 9};
  EXPECT_NEAR(average_gain(m, ab), average_gain(m, a) + average_gain(m, b), 1e-12);
  const GainTable t = GainTable::from_model(m);
  EXPECT_NEAR(t.sum(ab), average_gain(m, ab), 1e-12);
}

TEST(GainTable, OrderIsDescendingPermutationWithIndexTieBreak) {
  const GainTable t(Vector{1.0, 3.0, 3.0, 0.0, 2.0});
  EXPECT_EQ(t.order(), (IndexList{1, 2, 4, 0, 3}));
  EXPECT_THROW(GainTable(Vector{1.0, -1.0}), std::invalid_argument);
  const std::size_t received[] = {2, 0};
  EXPECT_EQ(t.admissible(received), (IndexList{1, 4, 3}));
}

TEST(Select, WorkedExample) {
  const GainTable t(Vector{5, 3, 9, 1});
  const std::size_t rates[] = {2, 2};
  const SelectionPlan p = select(t, {}, rates);
  ASSERT_EQ(p.subsets.size(), 2u);
  EXPECT_EQ(p.subsets[0], (IndexList{2, 0}));
  EXPECT_EQ(p.subsets[1], (IndexList{1, 3}));
  EXPECT_EQ(p.flattened, (IndexList{2, 0, 1, 3}));
}

TEST(Select, ExhaustedAndTies) {
  const GainTable t(Vector(6, 1.0));
  const std::size_t rates[] = {2, 2, 2, 2};
  const SelectionPlan p = select(t, {}, rates);
  EXPECT_EQ(p.subsets[0], (IndexList{0, 1}));
  EXPECT_EQ(p.subsets[1], (IndexList{2, 3}));
  EXPECT_EQ(p.subsets[2], (IndexList{4, 5}));
  EXPECT_TRUE(p.subsets[3].empty());
  const std::size_t all[] = {0, 1, 2, 3, 4, 5};
  for (const auto& s : select(t, all, rates).subsets) EXPECT_TRUE(s.empty());
}

TEST(Select, PlanInvariantsAndOptimalityAgainstEnumeration) {
  Rng rng(12);
  std::uniform_real_distribution<double> ud(0.0, 3.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rep % 10;
    Vector g(n);
    for (auto& x : g) x = rep % 3 == 0 ? static_cast<double>(coarse(rng)) : ud(rng);
    const GainTable t(g);
    unsigned mask = static_cast<unsigned>(rng()) & ((1u << n) - 1u);
    IndexList received;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) received.push_back(i);
    std::vector<std::size_t> rates(1 + rep % 4);
    for (auto& r : rates) r = static_cast<std::size_t>(coarse(rng));
    const SelectionPlan p = select(t, received, rates);

    std::set<std::size_t> seen(received.begin(), received.end());
    std::size_t remaining = n - received.size();
    for (std::size_t k = 0; k < rates.size(); ++k) {
      EXPECT_EQ(p.subsets[k].size(), std::min(remaining, rates[k]));
      remaining -= p.subsets[k].size();
      for (std::size_t i : p.subsets[k]) EXPECT_TRUE(seen.insert(i).second);
    }
    for (std::size_t m = 0; m <= p.flattened.size(); ++m) {
      const std::span<const std::size_t> prefix(p.flattened.data(), m);
      EXPECT_NEAR(t.sum(prefix), oracle::best_subset_sum(g, mask, m), 1e-12);
    }
  }
}

TEST(Select, SlotGainsNonIncreasingAtConstantRate) {
  const GainTable t(geometric_profile(23, 2.0, 0.9));
  const std::vector<std::size_t> rates(6, 4);
  const SelectionPlan p = select(t, {}, rates);
  for (std::size_t k = 0; k + 1 < rates.size(); ++k) {
    EXPECT_GE(t.sum(p.subsets[k]), t.sum(p.subsets[k + 1]));
  }
}

}  // namespace
}  // namespace pftx
