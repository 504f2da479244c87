#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/graph.hpp"
#include "abcd/random.hpp"

namespace abcd {

/// Weighted undirected graph in CSR form. Every non-loop edge is listed from both ends;
/// loops are kept apart in `loops` (their weight counts once in `total_weight` and twice
/// in `strength`).
struct WeightedGraph {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> loops;
  std::vector<double> strength;
  double total_weight = 0.0;

  std::size_t node_count() const { return loops.size(); }
};

/// A weighted edge list entry; parallel entries are merged by `make_weighted_graph`.
struct WeightedEdge {
  std::uint32_t u;
  std::uint32_t v;
  double weight;
};

inline WeightedGraph make_weighted_graph(std::size_t n, std::vector<WeightedEdge> edges) {
  WeightedGraph g;
  g.loops.assign(n, 0.0);
  g.strength.assign(n, 0.0);
  std::vector<WeightedEdge> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    g.total_weight += e.weight;
    if (e.u == e.v) {
      g.loops[e.u] += e.weight;
      g.strength[e.u] += 2.0 * e.weight;
    } else {
      arcs.push_back({e.u, e.v, e.weight});
      arcs.push_back({e.v, e.u, e.weight});
      g.strength[e.u] += e.weight;
      g.strength[e.v] += e.weight;
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  g.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < arcs.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < arcs.size() && arcs[j].u == arcs[i].u && arcs[j].v == arcs[i].v) w += arcs[j++].weight;
    g.targets.push_back(arcs[i].v);
    g.weights.push_back(w);
    ++g.offsets[arcs[i].u + 1];
    i = j;
  }
  std::partial_sum(g.offsets.begin(), g.offsets.end(), g.offsets.begin());
  return g;
}

/// Unit weight per edge copy.
inline WeightedGraph to_weighted(const MultiGraph& g) {
  std::vector<WeightedEdge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, 1.0});
  return make_weighted_graph(g.node_count(), std::move(edges));
}

inline double weighted_modularity(const WeightedGraph& g, std::span<const std::uint32_t> community) {
  const std::size_t k = community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> inside(k, 0.0);
  std::vector<double> total(k, 0.0);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto c = community[v];
    total[c] += g.strength[v];
    inside[c] += g.loops[v];
    for (auto i = g.offsets[v]; i < g.offsets[v + 1]; ++i)
      if (community[g.targets[i]] == c) inside[c] += 0.5 * g.weights[i];
  }
  const double m = g.total_weight;
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) q += inside[c] / m - (total[c] / (2 * m)) * (total[c] / (2 * m));
  return q;
}

struct LouvainOptions {
  /// Stop after the first local-moving phase (the partition of the input nodes it found).
  bool single_level = false;
  int max_levels = 64;
  int max_passes = 1000;
  double min_gain = 1e-12;
};

struct LouvainResult {
  Partition partition;
  /// Modularity after each level, on the input graph.
  std::vector<double> level_modularity;
};

namespace detail {

/// One local-moving phase. Returns the number of moves made; `community` is updated.
inline std::size_t local_moving(const WeightedGraph& g, std::vector<std::uint32_t>& community,
                                Rng& rng, const LouvainOptions& options) {
  const auto n = g.node_count();
  const double m2 = 2.0 * g.total_weight;
  std::vector<double> total(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) total[community[v]] += g.strength[v];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  shuffle(std::span<std::uint32_t>(order), rng);

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  std::size_t moves = 0;
  for (int pass = 0; pass < options.max_passes; ++pass) {
    std::size_t pass_moves = 0;
    for (auto v : order) {
      const auto current = community[v];
      const double k = g.strength[v];
      touched.clear();
      link[current] = 0.0;
      touched.push_back(current);
      for (auto i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
        const auto c = community[g.targets[i]];
        if (link[c] == 0.0 && c != current) touched.push_back(c);
        link[c] += g.weights[i];
      }
      total[current] -= k;

      // Gain of joining c, up to a positive factor: link(v, c) - tot(c) k / 2m.
      auto best = current;
      double best_gain = link[current] - total[current] * k / m2;
      for (auto c : touched) {
        if (c == current) continue;
        const double gain = link[c] - total[c] * k / m2;
        if (gain > best_gain + options.min_gain) {
          best = c;
          best_gain = gain;
        } else if (best != current && gain >= best_gain - options.min_gain && c < best) {
          best = c;
        }
      }
      total[best] += k;
      community[v] = best;
      if (best != current) ++pass_moves;
      for (auto c : touched) link[c] = 0.0;
    }
    moves += pass_moves;
    if (pass_moves == 0) break;
  }
  return moves;
}

/// Renumbers communities 0..k-1 by first appearance; returns k.
inline std::uint32_t renumber(std::vector<std::uint32_t>& community) {
  std::vector<std::uint32_t> label(community.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : community) {
    if (label[c] == UINT32_MAX) label[c] = next++;
    c = label[c];
  }
  return next;
}

inline WeightedGraph aggregate(const WeightedGraph& g, std::span<const std::uint32_t> community,
                               std::uint32_t k) {
  std::vector<WeightedEdge> edges;
  edges.reserve(g.targets.size() / 2 + g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto cv = community[v];
    if (g.loops[v] != 0.0) edges.push_back({cv, cv, g.loops[v]});
    for (auto i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
      const auto u = g.targets[i];
      if (u < v) continue;  // each undirected edge once
      edges.push_back({cv, community[u], g.weights[i]});
    }
  }
  return make_weighted_graph(k, std::move(edges));
}

}  // namespace detail

/// Multi-level Louvain maximising modularity. Node visiting order comes from `rng`;
/// a node only leaves its community for a strictly better one, and among equally good
/// alternatives the lowest community id wins.
inline LouvainResult louvain(const WeightedGraph& input, Rng& rng, const LouvainOptions& options = {}) {
  if (input.total_weight <= 0.0) throw EmptyGraphError();
  const auto n = input.node_count();
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0U);

  LouvainResult result;
  WeightedGraph level_graph = input;
  for (int level = 0; level < options.max_levels; ++level) {
    std::vector<std::uint32_t> community(level_graph.node_count());
    std::iota(community.begin(), community.end(), 0U);
    const auto moves = detail::local_moving(level_graph, community, rng, options);
    const auto k = detail::renumber(community);
    for (auto& c : membership) c = community[c];
    result.level_modularity.push_back(weighted_modularity(input, membership));
    if (moves == 0 || options.single_level || k == level_graph.node_count()) break;
    level_graph = detail::aggregate(level_graph, community, k);
  }
  result.partition = Partition{std::move(membership)};
  return result;
}

inline Partition louvain(const MultiGraph& g, Rng& rng) {
  if (g.edge_count() == 0) throw EmptyGraphError();
  return louvain(to_weighted(g), rng).partition;
}

}  // namespace abcd
