#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "abcd/graph.hpp"

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

MultiGraph path(std::size_t n) {
  MultiGraph g(n);
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

}  // namespace

TEST(MultiGraph, HandshakeWithLoopsAndRepeats) {
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 2);
  EXPECT_EQ(g.degree(0), 2);
  EXPECT_EQ(g.degree(1), 2);
  EXPECT_EQ(g.degree(2), 2);
  EXPECT_EQ(g.total_volume(), 6);
  EXPECT_EQ(g.edges()[1], Edge(0, 1));
}

TEST(Volume, SumsDegrees) {
  const auto g = two_triangles();
  const std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(volume(g, all), g.total_volume());
  EXPECT_EQ(volume(g, std::vector<NodeId>{}), 0);
  EXPECT_EQ(volume(g, std::vector<NodeId>{0, 4}), 4);
}

TEST(Components, TwoTriangles) {
  const auto comps = components(two_triangles());
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 3u);
  EXPECT_EQ(comps[1].size(), 3u);
}

TEST(Components, EmptyGraphIsAllSingletons) {
  EXPECT_EQ(components(MultiGraph(5)).size(), 5u);
}

TEST(Components, LoopsIgnored) {
  MultiGraph g(2);
  g.add_edge(0, 0);
  EXPECT_EQ(components(g).size(), 2u);
}

TEST(SpanningTree, TriangleKeepsTwoEdges) {
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  const std::vector<NodeId> all{0, 1, 2};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rng = make_stream(seed, 0);
    const auto tree = spanning_tree(g, all, rng);
    ASSERT_EQ(tree.size(), 2u);
    EXPECT_NE(tree[0], tree[1]);
  }
}

TEST(SpanningTree, PathIsItself) {
  const auto g = path(50);
  std::vector<NodeId> all(50);
  std::iota(all.begin(), all.end(), 0u);
  auto rng = make_stream(1, 0);
  auto tree = spanning_tree(g, all, rng);
  std::sort(tree.begin(), tree.end());
  std::vector<Edge> expected(g.edges().begin(), g.edges().end());
  EXPECT_EQ(tree, expected);
}

TEST(SpanningTree, DisconnectedSetThrows) {
  const auto g = two_triangles();
  const std::vector<NodeId> nodes{0, 3};
  auto rng = make_stream(1, 0);
  EXPECT_THROW(spanning_tree(g, nodes, rng), NotConnectedError);
}

TEST(Partition, CompactedAndParts) {
  const Partition p{{5, 2, 5, 7}};
  EXPECT_EQ(p.compacted().part_of, (std::vector<std::uint32_t>{0, 1, 0, 2}));
  EXPECT_EQ(p.compacted().parts().size(), 3u);
  EXPECT_EQ(Partition::whole(3).part_count(), 1u);
  EXPECT_EQ(Partition::singletons(3).part_count(), 3u);
}

TEST(Io, WriteReadRoundTrip) {
  MultiGraph g(4);
  g.add_edge(2, 0);
  g.add_edge(0, 2);
  g.add_edge(3, 3);
  g.add_edge(1, 2);
  const Partition p{{0, 1, 0, 1}};
  const auto dir = std::filesystem::temp_directory_path() / "abcd_graph_io";
  std::filesystem::create_directories(dir);
  const auto edges = (dir / "g.tsv").string();
  const auto comms = (dir / "c.tsv").string();
  write_graph(g, p, edges, comms);

  std::ifstream in(edges);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), "1\t3\n1\t3\n2\t3\n4\t4\n");

  const auto [h, q] = read_graph(edges, comms);
  EXPECT_EQ(q, p);
  std::vector<Edge> a(g.edges().begin(), g.edges().end());
  std::vector<Edge> b(h.edges().begin(), h.edges().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  std::filesystem::remove_all(dir);
}

TEST(Io, MalformedLinesAreParseErrors) {
  std::istringstream bad_edges("1\t2\n3 x\n");
  EXPECT_THROW(read_edges(bad_edges), ParseError);
  std::istringstream zero_id("0\t1\n");
  EXPECT_THROW(read_edges(zero_id), ParseError);
  EXPECT_THROW(read_edges_file("/nonexistent/edges.tsv"), IoError);
}

TEST(Io, NodeCountFromPartition) {
  std::istringstream in("1\t2\n");
  EXPECT_EQ(read_edges(in, 5).node_count(), 5u);
}
