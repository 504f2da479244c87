#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/graph.hpp"
#include "abcd/random.hpp"

namespace abcd {

/// Uniform random pairing of sum(weights) points, bucket v holding weights[v] points,
/// contracted to a multigraph on weights.size() nodes. Edges carry `provenance`.
///
/// Pairs are formed sequentially: the point in the next free slot is matched with a
/// uniformly chosen point among those still unmatched, which yields a uniform pairing.
inline MultiGraph configuration_model(std::span<const std::int64_t> weights, Rng& rng,
                                      std::uint32_t provenance = kBackground) {
  std::int64_t total = 0;
  for (auto w : weights) {
    if (w < 0) throw DomainError("negative weight");
    total += w;
  }
  if (total % 2 != 0) throw ParityError("sum of weights is odd");

  std::vector<NodeId> points;
  points.reserve(static_cast<std::size_t>(total));
  for (std::size_t v = 0; v < weights.size(); ++v)
    points.insert(points.end(), static_cast<std::size_t>(weights[v]), static_cast<NodeId>(v));

  MultiGraph g(weights.size());
  g.reserve(points.size() / 2);
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
    const auto j = i + 1 + static_cast<std::size_t>(uniform_below(rng, points.size() - i - 1));
    std::swap(points[i + 1], points[j]);
    g.add_edge(points[i], points[i + 1], provenance);
  }
  return g;
}

/// Edge keys that an edge-switching pass must avoid in addition to loops and repeats.
using EdgeKeySet = std::unordered_set<std::uint64_t>;

namespace detail {

class ConflictCounter {
 public:
  ConflictCounter(const MultiGraph& g, const EdgeKeySet* forbidden) : forbidden_(forbidden) {
    counts_.reserve(g.edge_count() * 2);
    for (const auto& e : g.edges()) ++counts_[e.key()];
  }

  /// Conflicts contributed by all copies of one key: every loop, every repeat beyond the
  /// first, and every copy of a forbidden edge.
  std::int64_t cost(const Edge& e) const {
    const auto it = counts_.find(e.key());
    const std::int64_t c = it == counts_.end() ? 0 : it->second;
    std::int64_t out = e.is_loop() ? c : std::max<std::int64_t>(0, c - 1);
    if (forbidden_ != nullptr && c > 0 && !e.is_loop() && forbidden_->count(e.key()) != 0) out += c;
    return out;
  }

  bool conflicted(const Edge& e) const { return cost(e) > 0; }

  void add(const Edge& e) { ++counts_[e.key()]; }
  void remove(const Edge& e) {
    auto it = counts_.find(e.key());
    if (--it->second == 0) counts_.erase(it);
  }

 private:
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  const EdgeKeySet* forbidden_;
};

}  // namespace detail

/// Number of loops plus repeated edge copies (plus copies of forbidden edges, if given).
inline std::size_t count_conflicts(const MultiGraph& g, const EdgeKeySet* forbidden = nullptr) {
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  std::size_t conflicts = 0;
  for (const auto& e : g.edges()) {
    const auto c = ++counts[e.key()];
    if (e.is_loop() || c > 1) ++conflicts;
    if (forbidden != nullptr && forbidden->count(e.key()) != 0 && !e.is_loop()) ++conflicts;
  }
  return conflicts;
}

struct RewireStats {
  std::size_t initial_conflicts = 0;
  std::size_t remaining_conflicts = 0;
  std::size_t switches = 0;
  int sweeps = 0;
};

/// Degree-preserving edge switching toward a simple graph, in place.
///
/// Each sweep visits every edge that is a loop, a repeat, or forbidden; pairs it with a
/// uniformly random other edge {c,d}; and replaces {a,b},{c,d} with {a,c},{b,d} or
/// {a,d},{b,c} (fair coin) when that strictly lowers the conflict count. Stops when no
/// conflicts remain or after `max_sweeps` sweeps.
inline RewireStats reduce_conflicts(MultiGraph& g, Rng& rng, int max_sweeps,
                                    const EdgeKeySet* forbidden = nullptr) {
  RewireStats stats;
  stats.initial_conflicts = count_conflicts(g, forbidden);
  stats.remaining_conflicts = stats.initial_conflicts;
  if (stats.initial_conflicts == 0 || g.edge_count() < 2) return stats;

  detail::ConflictCounter counter(g, forbidden);
  for (; stats.sweeps < max_sweeps && stats.remaining_conflicts > 0; ++stats.sweeps) {
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
      if (counter.conflicted(g.edges()[i])) targets.push_back(i);

    for (auto i : targets) {
      const Edge e = g.edges()[i];
      if (!counter.conflicted(e)) continue;
      auto j = static_cast<std::size_t>(uniform_below(rng, g.edge_count() - 1));
      if (j >= i) ++j;
      const Edge f = g.edges()[j];
      const bool cross = uniform01(rng) < 0.5;
      const Edge g1(e.u, cross ? f.v : f.u);
      const Edge g2(e.v, cross ? f.u : f.v);

      // Conflict change is local to the (at most four) keys involved.
      std::vector<Edge> keys{e, f, g1, g2};
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      std::int64_t before = 0;
      for (const auto& k : keys) before += counter.cost(k);
      counter.remove(e);
      counter.remove(f);
      counter.add(g1);
      counter.add(g2);
      std::int64_t after = 0;
      for (const auto& k : keys) after += counter.cost(k);

      if (after < before) {
        g.replace_edge(i, g1);
        g.replace_edge(j, g2);
        stats.remaining_conflicts -= static_cast<std::size_t>(before - after);
        ++stats.switches;
      } else {
        counter.remove(g1);
        counter.remove(g2);
        counter.add(e);
        counter.add(f);
      }
    }
  }
  stats.remaining_conflicts = count_conflicts(g, forbidden);
  return stats;
}

/// Switches edges until the graph is simple; throws NotSimpleError if `max_sweeps` run out.
inline MultiGraph rewire_to_simple(MultiGraph g, Rng& rng, int max_sweeps) {
  const auto stats = reduce_conflicts(g, rng, max_sweeps);
  if (stats.remaining_conflicts > 0) throw NotSimpleError(stats.remaining_conflicts);
  return g;
}

}  // namespace abcd
