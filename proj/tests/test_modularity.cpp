#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "abcd/modularity.hpp"
#include "abcd/random.hpp"

using namespace abcd;

namespace {

MultiGraph two_triangles() {
  MultiGraph g(6);
  for (NodeId base : {0u, 3u}) {
    g.add_edge(base, base + 1);
    g.add_edge(base + 1, base + 2);
    g.add_edge(base, base + 2);
  }
  return g;
}

// Newman's matrix form: (1/2m) sum_ij [A_ij - k_i k_j / 2m] [c_i = c_j], a loop adding 2 to A_ii.
double matrix_modularity(const MultiGraph& g, const Partition& p) {
  const auto n = g.node_count();
  std::vector<double> a(n * n, 0.0);
  for (const auto& e : g.edges()) {
    a[e.u * n + e.v] += 1.0;
    a[e.v * n + e.u] += 1.0;
  }
  const double two_m = static_cast<double>(g.total_volume());
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.part_of[i] == p.part_of[j])
        q += a[i * n + j] - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
  return q / two_m;
}

}  // namespace

TEST(Modularity, TwoTrianglesSplit) {
  const auto r = modularity(two_triangles(), Partition{{0, 0, 0, 1, 1, 1}});
  EXPECT_DOUBLE_EQ(r.edge_contribution, 1.0);
  EXPECT_DOUBLE_EQ(r.degree_tax, 0.5);
  EXPECT_DOUBLE_EQ(r.q, 0.5);
}

TEST(Modularity, WholeGraphScoresZero) {
  EXPECT_NEAR(modularity(two_triangles(), Partition::whole(6)).q, 0.0, 1e-15);
}

TEST(Modularity, SingletonsOnSimpleGraphNegative) {
  const auto r = modularity(two_triangles(), Partition::singletons(6));
  EXPECT_DOUBLE_EQ(r.edge_contribution, 0.0);
  EXPECT_NEAR(r.q, -6.0 * (2.0 / 12.0) * (2.0 / 12.0), 1e-15);
}

TEST(Modularity, LoopCountsOnceInEdgesTwiceInDegree) {
  MultiGraph g(2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  const auto r = modularity(g, Partition::singletons(2));
  EXPECT_DOUBLE_EQ(r.edge_contribution, 0.5);
  EXPECT_DOUBLE_EQ(r.degree_tax, (3.0 / 4) * (3.0 / 4) + (1.0 / 4) * (1.0 / 4));
}

TEST(Modularity, MatchesMatrixFormOnAllPartitions) {
  // Small multigraph with loops and a repeat; every set partition of 6 nodes via restricted growth strings.
  MultiGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 3);
  g.add_edge(2, 3);
  std::vector<std::uint32_t> labels(6, 0);
  int checked = 0;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == labels.size()) {
      const Partition p{labels};
      EXPECT_NEAR(modularity(g, p).q, matrix_modularity(g, p), 1e-12);
      ++checked;
      return;
    }
    for (std::uint32_t c = 0; c <= used; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  EXPECT_EQ(checked, 203);  // Bell number B6
}

TEST(Modularity, RandomGraphsAgreeWithMatrixForm) {
  auto rng = make_stream(1, 0);
  for (int t = 0; t < 20; ++t) {
    MultiGraph g(30);
    for (int e = 0; e < 80; ++e)
      g.add_edge(static_cast<NodeId>(uniform_below(rng, 30)), static_cast<NodeId>(uniform_below(rng, 30)));
    Partition p{std::vector<std::uint32_t>(30)};
    for (auto& c : p.part_of) c = static_cast<std::uint32_t>(uniform_below(rng, 4));
    EXPECT_NEAR(modularity(g, p).q, matrix_modularity(g, p), 1e-12);
  }
}

TEST(Modularity, Errors) {
  EXPECT_THROW(modularity(MultiGraph(3), Partition::whole(3)), EmptyGraphError);
  EXPECT_THROW(modularity(two_triangles(), Partition::whole(5)), PreconditionError);
}

TEST(GroundTruthModularity, ReportsDeviation) {
  const auto r = ground_truth_modularity(two_triangles(), Partition{{0, 0, 0, 1, 1, 1}}, 0.4);
  EXPECT_DOUBLE_EQ(r.prediction, 0.6);
  EXPECT_NEAR(r.deviation, 0.1, 1e-15);
}
