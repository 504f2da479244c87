#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/generator.hpp"
#include "abcd/graph.hpp"
#include "abcd/louvain.hpp"
#include "abcd/random.hpp"

namespace abcd {

struct EcgOptions {
  std::size_t ensemble_size = 16;
  double min_weight = 0.05;
  unsigned threads = 1;
};

/// Nodes of the 2-core of the underlying simple graph (loops and repeats ignored).
inline std::vector<char> two_core(const MultiGraph& g) {
  auto adj = g.adjacency();
  const auto n = g.node_count();
  for (NodeId v = 0; v < n; ++v)
    std::sort(adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[v]),
              adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[v + 1]));
  std::vector<std::int64_t> degree(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    NodeId last = UINT32_MAX;
    for (auto w : adj.neighbors(v)) {
      if (w != v && w != last) ++degree[v];
      last = w;
    }
  }
  std::vector<char> alive(n, 1);
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v)
    if (degree[v] < 2) {
      alive[v] = 0;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    NodeId last = UINT32_MAX;
    for (auto w : adj.neighbors(v)) {
      if (w == v || w == last) continue;
      last = w;
      if (alive[w] && --degree[w] < 2) {
        alive[w] = 0;
        stack.push_back(w);
      }
    }
  }
  return alive;
}

/// Ensemble clustering: `ensemble_size` level-one Louvain runs on independent sub-streams,
/// then one full Louvain pass on the graph reweighted by co-clustering frequency. An edge
/// inside the 2-core gets weight w_min + (1 - w_min) * frequency, any other edge w_min;
/// each copy of a repeated edge carries the weight, and loops keep weight 1.
inline Partition ecg(const MultiGraph& g, Rng& rng, const EcgOptions& options = {}) {
  if (g.edge_count() == 0) throw EmptyGraphError();
  if (options.ensemble_size == 0) throw PreconditionError("ensemble size must be at least 1");
  const auto base = to_weighted(g);
  const auto master = rng();

  std::vector<Partition> runs(options.ensemble_size);
  parallel_for(options.ensemble_size, options.threads, [&](std::size_t i) {
    auto local = make_stream(master, streams::ensemble, i);
    LouvainOptions level_one;
    level_one.single_level = true;
    runs[i] = louvain(base, local, level_one).partition;
  });

  const auto core = two_core(g);
  std::vector<WeightedEdge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    if (e.is_loop()) {
      edges.push_back({e.u, e.v, 1.0});
      continue;
    }
    double weight = options.min_weight;
    if (core[e.u] && core[e.v]) {
      std::size_t together = 0;
      for (const auto& run : runs) together += run.part_of[e.u] == run.part_of[e.v];
      const double frequency = static_cast<double>(together) / static_cast<double>(runs.size());
      weight += (1.0 - options.min_weight) * frequency;
    }
    edges.push_back({e.u, e.v, weight});
  }
  auto final_rng = make_stream(master, streams::ensemble, options.ensemble_size);
  return louvain(make_weighted_graph(g.node_count(), std::move(edges)), final_rng).partition;
}

}  // namespace abcd
