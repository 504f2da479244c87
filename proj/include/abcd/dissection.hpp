#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/graph.hpp"
#include "abcd/modularity.hpp"
#include "abcd/random.hpp"
#include "abcd/weights.hpp"

namespace abcd {

/// 2n'/vol - 3 sqrt(Delta/vol) - Delta/vol: the modularity guaranteed by cutting a spanning
/// tree of an n'-node component into parts of volume about sqrt(Delta vol).
inline double dissection_bound(std::size_t component_size, std::int64_t max_degree,
                               std::int64_t total_volume) {
  const double vol = static_cast<double>(total_volume);
  const double delta = static_cast<double>(max_degree);
  return 2.0 * static_cast<double>(component_size) / vol - 3.0 * std::sqrt(delta / vol) - delta / vol;
}

struct DissectionResult {
  Partition partition;
  ModularityReport report;
  double bound = 0.0;
  std::size_t component_size = 0;
};

/// Tree dissection of the largest component, every other node a singleton.
///
/// Nodes of a BFS tree (random root) are visited children first, each carrying the volume
/// of its still-open subtree, always below T = sqrt(Delta vol). At a node whose open volume
/// reaches T, every child holding at least T/(Delta-1) (T/Delta at the root) is cut off as a
/// part, then the node with its remaining children becomes a part too if still at least T.
/// Parts thus stay below T + Delta, and each cut either carries volume T/(Delta-1) or is
/// one of at most Delta root cuts, which bounds the number of tree edges lost. The root's
/// open subtree is the last part.
///
/// The bound is checked on every run; on tiny graphs (vol < 4 Delta, where it is not
/// positive) the trivial partition {V} is used when it scores higher.
inline DissectionResult tree_dissect_report(const MultiGraph& g, Rng& rng) {
  if (g.edge_count() == 0) throw EmptyGraphError();
  const auto n = g.node_count();
  const auto component = largest_component(g);
  const auto tree = bfs_tree(g, g.adjacency(), component, rng);

  const double vol = static_cast<double>(g.total_volume());
  const double delta = static_cast<double>(g.max_degree());
  const double threshold = std::sqrt(delta * vol);
  const double child_cut = delta > 1.0 ? threshold / (delta - 1.0) : std::numeric_limits<double>::infinity();
  const double root_cut = threshold / delta;

  // Children lists in BFS order.
  std::vector<std::size_t> child_offsets(n + 1, 0);
  for (auto v : tree.order)
    if (v != tree.root) ++child_offsets[tree.parent[v] + 1];
  for (std::size_t v = 0; v < n; ++v) child_offsets[v + 1] += child_offsets[v];
  std::vector<NodeId> children(child_offsets.back());
  {
    std::vector<std::size_t> fill(child_offsets.begin(), child_offsets.end() - 1);
    for (auto v : tree.order)
      if (v != tree.root) children[fill[tree.parent[v]]++] = v;
  }

  std::vector<double> open(n, 0.0);
  std::vector<char> top(n, 0);  // v starts a part
  for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
    const auto v = *it;
    const bool is_root = v == tree.root;
    double total = static_cast<double>(g.degree(v));
    for (auto i = child_offsets[v]; i < child_offsets[v + 1]; ++i) total += open[children[i]];
    if (total < threshold && !is_root) {
      open[v] = total;
      continue;
    }
    if (total >= threshold) {
      const double cut = is_root ? root_cut : child_cut;
      for (auto i = child_offsets[v]; i < child_offsets[v + 1]; ++i) {
        const auto c = children[i];
        if (open[c] > 0.0 && open[c] >= cut) {
          top[c] = 1;
          total -= open[c];
        }
      }
    }
    if (!is_root && total >= threshold) {
      top[v] = 1;
      open[v] = 0.0;
    } else {
      open[v] = total;
    }
  }
  top[tree.root] = 1;

  Partition p{std::vector<std::uint32_t>(n, UINT32_MAX)};
  std::uint32_t next = 0;
  for (auto v : tree.order) p.part_of[v] = top[v] ? next++ : p.part_of[tree.parent[v]];
  for (std::size_t v = 0; v < n; ++v)
    if (p.part_of[v] == UINT32_MAX) p.part_of[v] = next++;

  DissectionResult r;
  r.component_size = component.size();
  r.bound = dissection_bound(component.size(), g.max_degree(), g.total_volume());
  r.partition = std::move(p);
  r.report = modularity(g, r.partition);
  if (r.report.q < r.bound) {
    auto whole = Partition::whole(n);
    auto report = modularity(g, whole);
    if (report.q > r.report.q) {
      r.partition = std::move(whole);
      r.report = report;
    }
  }
  if (r.report.q < r.bound - 1e-12) throw Error("tree dissection fell below its modularity bound");
  return r;
}

inline Partition tree_dissect(const MultiGraph& g, Rng& rng) {
  return tree_dissect_report(g, rng).partition;
}

/// Nodes of degree 1 whose edge is a background edge (y = 0, z = 1).
inline std::vector<char> lucky_nodes(const MultiGraph& g, const WeightSplit& split) {
  if (split.empty()) throw PreconditionError("weight split is missing");
  if (split.y.size() != g.node_count()) throw PreconditionError("weight split does not match the graph");
  std::vector<char> lucky(g.node_count(), 0);
  for (std::size_t v = 0; v < g.node_count(); ++v)
    lucky[v] = split.y[v] == 0 && split.z[v] == 1 && g.degree(static_cast<NodeId>(v)) == 1;
  return lucky;
}

/// Moves every lucky node into its neighbour's part. An edge joining two lucky nodes
/// puts both into the lower of their two parts.
inline Partition lucky_repartition(const MultiGraph& g, const Partition& ground_truth,
                                   const WeightSplit& split) {
  if (ground_truth.node_count() != g.node_count())
    throw PreconditionError("partition does not cover the graph");
  const auto lucky = lucky_nodes(g, split);
  Partition out = ground_truth;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    const auto pu = ground_truth.part_of[e.u];
    const auto pv = ground_truth.part_of[e.v];
    if (lucky[e.u] && lucky[e.v]) {
      out.part_of[e.u] = out.part_of[e.v] = std::min(pu, pv);
    } else if (lucky[e.u]) {
      out.part_of[e.u] = pv;
    } else if (lucky[e.v]) {
      out.part_of[e.v] = pu;
    }
  }
  return out;
}

}  // namespace abcd
