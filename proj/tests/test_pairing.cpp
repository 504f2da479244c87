#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "abcd/generator.hpp"
#include "abcd/pairing.hpp"

using namespace abcd;

namespace {

std::vector<std::int64_t> degrees_of(const MultiGraph& g) { return {g.degrees().begin(), g.degrees().end()}; }

}  // namespace

TEST(ConfigurationModel, SingleEdge) {
  auto rng = make_stream(1, 0);
  const std::vector<std::int64_t> w{1, 1};
  const auto g = configuration_model(w, rng);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0], Edge(0, 1));
}

TEST(ConfigurationModel, SingleLoop) {
  auto rng = make_stream(1, 0);
  const std::vector<std::int64_t> w{2};
  const auto g = configuration_model(w, rng);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.edges()[0].is_loop());
  EXPECT_EQ(g.degree(0), 2);
}

TEST(ConfigurationModel, OddSumIsParityError) {
  auto rng = make_stream(1, 0);
  const std::vector<std::int64_t> w{1, 2};
  EXPECT_THROW(configuration_model(w, rng), ParityError);
}

TEST(ConfigurationModel, ThreeMatchingsEquallyLikely) {
  // The three perfect matchings of four points, one point per node.
  auto rng = make_stream(2, 0);
  const std::vector<std::int64_t> w{1, 1, 1, 1};
  std::map<std::uint64_t, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto g = configuration_model(w, rng);
    // Identify the matching by the partner of node 0.
    const auto& e = g.edges()[0].u == 0 ? g.edges()[0] : g.edges()[1];
    ++counts[e.v];
  }
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [partner, c] : counts) EXPECT_NEAR(c / double(draws), 1.0 / 3.0, 0.01) << partner;
}

TEST(ConfigurationModel, LoopAndDoubleEdgeFrequencies) {
  // Two nodes of weight 2: pairings of 4 points give a double edge w.p. 2/3, two loops w.p. 1/3.
  auto rng = make_stream(3, 0);
  const std::vector<std::int64_t> w{2, 2};
  int loops = 0;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) loops += configuration_model(w, rng).edges()[0].is_loop();
  EXPECT_NEAR(loops / double(draws), 1.0 / 3.0, 0.01);
}

TEST(ConfigurationModel, DegreesPreserved) {
  auto rng = make_stream(4, 0);
  const std::vector<std::int64_t> w{5, 3, 3, 2, 1, 0, 4};
  const auto g = configuration_model(w, rng, 7);
  EXPECT_EQ(degrees_of(g), w);
  for (auto prov : g.provenance()) EXPECT_EQ(prov, 7u);
}

TEST(Rewire, SimpleGraphUnchanged) {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  auto rng = make_stream(1, 0);
  const auto out = rewire_to_simple(g, rng, 10);
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), out.edges().begin(), out.edges().end()));
}

TEST(Rewire, RemovesConflictsAndKeepsDegrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = make_stream(seed, 0);
    std::vector<std::int64_t> w(300, 4);
    w[0] = 40;
    const auto g = configuration_model(w, rng);
    const auto out = rewire_to_simple(g, rng, 100);
    ASSERT_EQ(count_conflicts(out), 0u);
    ASSERT_EQ(degrees_of(out), w);
  }
}

TEST(Rewire, ImpossibleCaseThrows) {
  // Two nodes of degree 4 can only form multi-edges or loops.
  MultiGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  auto rng = make_stream(1, 0);
  EXPECT_THROW(rewire_to_simple(g, rng, 5), NotSimpleError);
}

// Expected loops plus surplus copies of repeated pairs in a pairing with the given weights.
// Loops: sum C(d,2)/(D-1). A pair's multiplicity is close to Poisson(d_i d_j/(D-1)), whose
// surplus over one copy has mean lambda - 1 + exp(-lambda).
double expected_conflicts(const std::vector<std::int64_t>& weights) {
  std::vector<double> d;
  double total = 0.0;
  for (auto w : weights)
    if (w > 0) {
      d.push_back(static_cast<double>(w));
      total += static_cast<double>(w);
    }
  if (total < 2.0) return 0.0;
  double loops = 0.0;
  double repeats = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    loops += d[i] * (d[i] - 1.0) / 2.0 / (total - 1.0);
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double lambda = d[i] * d[j] / (total - 1.0);
      repeats += lambda - 1.0 + std::exp(-lambda);
    }
  }
  return loops + repeats;
}

TEST(Rewire, GeneratedConflictsMatchPairingExpectation) {
  const AbcdParams p{10000, 2.5, 5, 0.5, 1.5, 50, 0.75, 0.2, Variant::discrete};
  double measured = 0.0;
  double expected = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = build_abcd(p, seed);
    for (std::uint32_t prov = 0; prov <= g.sizes.ell(); ++prov) {
      measured += static_cast<double>(count_conflicts(subgraph_with_provenance(g.graph, prov)));
      std::vector<std::int64_t> weights(g.graph.node_count(), 0);
      for (std::size_t v = 0; v < weights.size(); ++v) {
        if (prov == kBackground) weights[v] = g.split.z[v];
        else if (g.assignment.community_of[v] + 1 == prov) weights[v] = g.split.y[v];
      }
      expected += expected_conflicts(weights);
    }
  }
  EXPECT_NEAR(measured / expected, 1.0, 0.1);
}

TEST(Rewire, ConflictsBelowOnePercentOfEdges) {
  const AbcdParams p{10000, 2.5, 5, 0.5, 1.5, 50, 0.75, 0.2, Variant::discrete};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = build_abcd(p, seed);
    EXPECT_LT(static_cast<double>(count_conflicts(g.graph)) / static_cast<double>(g.graph.edge_count()), 0.01);
  }
}
