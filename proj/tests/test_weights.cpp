#include <gtest/gtest.h>

#include <cmath>

#include "abcd/generator.hpp"
#include "abcd/weights.hpp"

using namespace abcd;

namespace {

WeightSplit split_one_community(const std::vector<std::int64_t>& w, double xi, std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  return split_weights(DegreeSequence{w}, Assignment{std::vector<std::uint32_t>(w.size(), 0), 0.0}, 1, xi, rng);
}

}  // namespace

TEST(StochasticRound, IntegerInputIsExact) {
  auto rng = make_stream(1, 0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(stochastic_round(7.0, rng), 7);
}

TEST(StochasticRound, MeanEqualsInput) {
  auto rng = make_stream(2, 0);
  const int draws = 1000000;
  double sum = 0.0;
  int high = 0;
  for (int i = 0; i < draws; ++i) {
    const auto r = stochastic_round(5.25, rng);
    ASSERT_TRUE(r == 5 || r == 6);
    sum += static_cast<double>(r);
    high += r == 6;
  }
  EXPECT_NEAR(sum / draws, 5.25, 0.002);
  EXPECT_NEAR(high / double(draws), 0.25, 0.002);
}

TEST(StochasticRound, NearlyOneRoundsUp) {
  auto rng = make_stream(3, 0);
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += stochastic_round(0.999, rng) == 1;
  EXPECT_NEAR(ones / 100000.0, 0.999, 0.0005);
}

TEST(SplitWeights, IntegralShareIsDeterministic) {
  // Leader w=10 and non-leader w=10 both get 8; the sum 16 is already even.
  const auto s = split_one_community({10, 10}, 0.2, 1);
  EXPECT_EQ(s.y, (std::vector<std::int64_t>{8, 8}));
  EXPECT_EQ(s.z, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(s.leader_of, (std::vector<std::uint32_t>{0}));
}

TEST(SplitWeights, LeaderFixesParity) {
  int seen_five = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = split_one_community({7, 7}, 0.25, seed);
    ASSERT_TRUE(s.y[1] == 5 || s.y[1] == 6);
    ASSERT_TRUE(s.y[0] == 5 || s.y[0] == 6);
    ASSERT_EQ((s.y[0] + s.y[1]) % 2, 0);
    seen_five += s.y[1] == 5;
  }
  EXPECT_GT(seen_five, 20);
  EXPECT_LT(seen_five, 180);
}

TEST(SplitWeights, IntegralOddSumMovesLeaderEitherWay) {
  // xi = 0.8 gives integral shares 2 and 1, an odd sum, so the leader steps to 1 or 3.
  int up = 0;
  int down = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto rng = make_stream(seed, 0);
    const auto s = split_weights(DegreeSequence{{10, 5}}, Assignment{{0, 0}, 0.0}, 1, 0.8, rng);
    ASSERT_EQ(s.y[1], 1);
    ASSERT_TRUE(s.y[0] == 1 || s.y[0] == 3);
    (s.y[0] == 3 ? up : down)++;
  }
  EXPECT_GT(up, 50);
  EXPECT_GT(down, 50);
}

TEST(SplitWeights, BoundaryClampTakesFeasibleDirection) {
  // xi tiny: shares are w exactly for the leader, so only a step down is feasible.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = make_stream(seed, 0);
    const auto s = split_weights(DegreeSequence{{3, 2}}, Assignment{{0, 0}, 0.0}, 1, 1e-12, rng);
    ASSERT_EQ(s.y[0], 2);
    ASSERT_EQ(s.y[1], 2);
  }
}

TEST(SplitWeights, InvariantsOnGeneratedGraphs) {
  const AbcdParams p{2000, 2.5, 5, 0.5, 1.5, 50, 0.75, 0.3, Variant::discrete};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = build_abcd(p, seed);
    std::vector<std::int64_t> community_sum(g.sizes.ell(), 0);
    std::int64_t z_sum = 0;
    for (std::size_t i = 0; i < g.split.y.size(); ++i) {
      ASSERT_GE(g.split.y[i], 0);
      ASSERT_GE(g.split.z[i], 0);
      ASSERT_EQ(g.split.y[i] + g.split.z[i], g.degrees.degrees[i]);
      community_sum[g.assignment.community_of[i]] += g.split.y[i];
      z_sum += g.split.z[i];
    }
    for (auto sum : community_sum) ASSERT_EQ(sum % 2, 0);
    ASSERT_EQ(z_sum % 2, 0);
  }
}

TEST(SplitWeights, CommunityShareConcentrates) {
  const AbcdParams p{100000, 2.5, 5, 0.5, 1.5, 50, 0.75, 0.2, Variant::discrete};
  const auto g = build_abcd(p, 4);
  double y = 0.0;
  for (auto v : g.split.y) y += static_cast<double>(v);
  EXPECT_NEAR(y / static_cast<double>(g.degrees.total()), 0.8, 0.005);
}

TEST(SplitWeights, RejectsMismatchedAssignment) {
  auto rng = make_stream(1, 0);
  EXPECT_THROW(split_weights(DegreeSequence{{2, 2}}, Assignment{{0}, 0.0}, 1, 0.5, rng), PreconditionError);
  EXPECT_THROW(split_weights(DegreeSequence{{2, 2}}, Assignment{{0, 3}, 0.0}, 1, 0.5, rng), PreconditionError);
}
