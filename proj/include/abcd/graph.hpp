#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/params.hpp"
#include "abcd/random.hpp"

namespace abcd {

using NodeId = std::uint32_t;

/// Undirected edge stored with u <= v. A loop has u == v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool is_loop() const { return u == v; }
  std::uint64_t key() const { return (static_cast<std::uint64_t>(u) << 32) | v; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& a, const Edge& b) { return a.key() <=> b.key(); }
};

/// Provenance tag of background-graph edges; community j (1-based) tags its edges with j.
inline constexpr std::uint32_t kBackground = 0;

/// Compressed adjacency: neighbours of v are targets[offsets[v] .. offsets[v+1]).
/// A loop at v lists v twice, so the list length equals the degree.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
};

/// Undirected multigraph with loops on nodes 0..n-1. A loop adds 2 to its node's degree.
class MultiGraph {
 public:
  explicit MultiGraph(std::size_t n = 0) : degree_(n, 0) {}

  void add_edge(NodeId a, NodeId b, std::uint32_t provenance = kBackground) {
    if (a >= degree_.size() || b >= degree_.size()) throw DomainError("edge endpoint out of range");
    edges_.emplace_back(a, b);
    provenance_.push_back(provenance);
    ++degree_[a];
    ++degree_[b];
  }

  std::size_t node_count() const { return degree_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::uint32_t> provenance() const { return provenance_; }
  std::span<const std::int64_t> degrees() const { return degree_; }
  std::int64_t degree(NodeId v) const { return degree_[v]; }
  std::int64_t total_volume() const { return 2 * static_cast<std::int64_t>(edges_.size()); }
  std::int64_t max_degree() const {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
  }

  /// Rewrites edge i in place; degrees are updated accordingly.
  void replace_edge(std::size_t i, Edge e) {
    --degree_[edges_[i].u];
    --degree_[edges_[i].v];
    edges_[i] = e;
    ++degree_[e.u];
    ++degree_[e.v];
  }

  void reserve(std::size_t edges) {
    edges_.reserve(edges);
    provenance_.reserve(edges);
  }

  /// Sorts edges by (u, v, provenance) so that equal multisets compare equal.
  void canonicalize() {
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(edges_[a], provenance_[a]) < std::tie(edges_[b], provenance_[b]);
    });
    std::vector<Edge> edges(edges_.size());
    std::vector<std::uint32_t> prov(edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      edges[i] = edges_[order[i]];
      prov[i] = provenance_[order[i]];
    }
    edges_ = std::move(edges);
    provenance_ = std::move(prov);
  }

  Adjacency adjacency() const {
    Adjacency adj;
    adj.offsets.assign(node_count() + 1, 0);
    for (std::size_t v = 0; v < node_count(); ++v)
      adj.offsets[v + 1] = adj.offsets[v] + static_cast<std::size_t>(degree_[v]);
    adj.targets.resize(adj.offsets.back());
    std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& e : edges_) {
      adj.targets[fill[e.u]++] = e.v;
      adj.targets[fill[e.v]++] = e.u;
    }
    return adj;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> provenance_;
  std::vector<std::int64_t> degree_;
};

/// Node -> part id. Part ids are 0-based and need not all be occupied.
struct Partition {
  std::vector<std::uint32_t> part_of;

  std::size_t node_count() const { return part_of.size(); }
  std::size_t part_count() const {
    return part_of.empty() ? 0 : *std::max_element(part_of.begin(), part_of.end()) + std::size_t{1};
  }

  std::vector<std::vector<NodeId>> parts() const {
    std::vector<std::vector<NodeId>> out(part_count());
    for (std::size_t v = 0; v < part_of.size(); ++v) out[part_of[v]].push_back(static_cast<NodeId>(v));
    return out;
  }

  /// Renumbers parts 0..k-1 in order of first appearance.
  Partition compacted() const {
    std::vector<std::uint32_t> label(part_count(), UINT32_MAX);
    std::uint32_t next = 0;
    Partition out{std::vector<std::uint32_t>(part_of.size())};
    for (std::size_t v = 0; v < part_of.size(); ++v) {
      auto& l = label[part_of[v]];
      if (l == UINT32_MAX) l = next++;
      out.part_of[v] = l;
    }
    return out;
  }

  static Partition whole(std::size_t n) { return Partition{std::vector<std::uint32_t>(n, 0)}; }
  static Partition singletons(std::size_t n) {
    Partition p{std::vector<std::uint32_t>(n)};
    std::iota(p.part_of.begin(), p.part_of.end(), 0U);
    return p;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// The edges carrying one provenance tag, on the same node set.
inline MultiGraph subgraph_with_provenance(const MultiGraph& g, std::uint32_t provenance) {
  MultiGraph out(g.node_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (g.provenance()[i] == provenance) out.add_edge(g.edges()[i].u, g.edges()[i].v, provenance);
  return out;
}

inline std::int64_t volume(const MultiGraph& g, std::span<const NodeId> nodes) {
  std::int64_t total = 0;
  for (auto v : nodes) total += g.degree(v);
  return total;
}

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
};

/// Connected components, each sorted, ordered by their smallest node. Loops are ignored.
inline std::vector<std::vector<NodeId>> components(const MultiGraph& g) {
  DisjointSets sets(g.node_count());
  for (const auto& e : g.edges())
    if (!e.is_loop()) sets.unite(e.u, e.v);
  std::vector<std::uint32_t> index(g.node_count(), UINT32_MAX);
  std::vector<std::vector<NodeId>> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto root = sets.find(v);
    if (index[root] == UINT32_MAX) {
      index[root] = static_cast<std::uint32_t>(out.size());
      out.emplace_back();
    }
    out[index[root]].push_back(v);
  }
  return out;
}

inline std::vector<NodeId> largest_component(const MultiGraph& g) {
  auto comps = components(g);
  if (comps.empty()) return {};
  auto best = std::max_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  return std::move(*best);
}

/// BFS tree of a connected node set. parent[root] == root; nodes outside the set have
/// parent UINT32_MAX. `order` lists the set in BFS order starting at the root.
struct RootedTree {
  NodeId root = 0;
  std::vector<NodeId> parent;
  std::vector<NodeId> order;
};

inline RootedTree bfs_tree(const MultiGraph& g, const Adjacency& adj,
                           std::span<const NodeId> component, Rng& rng) {
  if (component.empty()) throw NotConnectedError("empty node set");
  RootedTree tree;
  tree.root = component[static_cast<std::size_t>(uniform_below(rng, component.size()))];
  tree.parent.assign(g.node_count(), UINT32_MAX);
  tree.parent[tree.root] = tree.root;
  tree.order.reserve(component.size());
  tree.order.push_back(tree.root);
  std::vector<char> member(g.node_count(), 0);
  for (auto v : component) member[v] = 1;
  for (std::size_t head = 0; head < tree.order.size(); ++head) {
    const auto v = tree.order[head];
    for (auto w : adj.neighbors(v)) {
      if (member[w] && tree.parent[w] == UINT32_MAX) {
        tree.parent[w] = v;
        tree.order.push_back(w);
      }
    }
  }
  if (tree.order.size() != component.size())
    throw NotConnectedError("node set is not connected in the graph");
  return tree;
}

/// Spanning tree of a connected node set, rooted at a random member; |set| - 1 edges.
inline std::vector<Edge> spanning_tree(const MultiGraph& g, std::span<const NodeId> component,
                                       Rng& rng) {
  const auto tree = bfs_tree(g, g.adjacency(), component, rng);
  std::vector<Edge> out;
  out.reserve(component.size() - 1);
  for (auto v : tree.order)
    if (v != tree.root) out.emplace_back(tree.parent[v], v);
  return out;
}

// ---------------------------------------------------------------------------------------
// Files. Node and community ids are 1-based on disk.
//   edges:       "u<TAB>v" per edge, u <= v, repeated for multiplicity, sorted.
//   communities: "node<TAB>community" per node, in node order.

inline void write_edges(const MultiGraph& g, std::ostream& out) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) out << e.u + 1 << '\t' << e.v + 1 << '\n';
}

inline void write_partition(const Partition& p, std::ostream& out) {
  for (std::size_t v = 0; v < p.part_of.size(); ++v) out << v + 1 << '\t' << p.part_of[v] + 1 << '\n';
}

namespace detail {

inline std::pair<std::uint64_t, std::uint64_t> parse_id_pair(const std::string& raw,
                                                             std::size_t line_no) {
  const auto line = trim(raw);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) throw ParseError(line_no, "expected two tab-separated ids");
  const auto a = parse_number<std::uint64_t>(trim(line.substr(0, tab)));
  const auto b = parse_number<std::uint64_t>(trim(line.substr(tab + 1)));
  if (!a || !b || *a == 0 || *b == 0 || *a > UINT32_MAX || *b > UINT32_MAX)
    throw ParseError(line_no, "ids must be positive integers");
  return {*a, *b};
}

}  // namespace detail

inline Partition read_partition(std::istream& in) {
  Partition p;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (detail::trim(raw).empty()) continue;
    const auto [node, community] = detail::parse_id_pair(raw, line_no);
    if (node != p.part_of.size() + 1)
      throw ParseError(line_no, "nodes must be listed as 1, 2, 3, ... in order");
    p.part_of.push_back(static_cast<std::uint32_t>(community - 1));
  }
  return p;
}

/// Reads an edge list. The graph has max(node_count, largest id) nodes.
inline MultiGraph read_edges(std::istream& in, std::size_t node_count = 0) {
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line_no = 0;
  std::uint64_t largest = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (detail::trim(raw).empty()) continue;
    const auto [a, b] = detail::parse_id_pair(raw, line_no);
    largest = std::max({largest, a, b});
    edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
  }
  MultiGraph g(std::max<std::size_t>(node_count, largest));
  g.reserve(edges.size());
  for (const auto& e : edges) g.add_edge(e.u, e.v);
  return g;
}

inline void write_graph(const MultiGraph& g, const Partition& p, const std::string& edges_path,
                        const std::string& communities_path) {
  std::ofstream edges(edges_path);
  if (!edges) throw IoError("cannot write " + edges_path);
  write_edges(g, edges);
  std::ofstream comms(communities_path);
  if (!comms) throw IoError("cannot write " + communities_path);
  write_partition(p, comms);
  if (!edges || !comms) throw IoError("write failed");
}

inline Partition read_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_partition(in);
}

inline MultiGraph read_edges_file(const std::string& path, std::size_t node_count = 0) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_edges(in, node_count);
}

inline std::pair<MultiGraph, Partition> read_graph(const std::string& edges_path,
                                                   const std::string& communities_path) {
  auto partition = read_partition_file(communities_path);
  auto graph = read_edges_file(edges_path, partition.node_count());
  if (graph.node_count() != partition.node_count())
    throw ParseError(0, "edge file mentions nodes missing from the community file");
  return {std::move(graph), std::move(partition)};
}

}  // namespace abcd
