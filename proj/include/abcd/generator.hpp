#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "abcd/assignment.hpp"
#include "abcd/graph.hpp"
#include "abcd/pairing.hpp"
#include "abcd/params.hpp"
#include "abcd/random.hpp"
#include "abcd/sequences.hpp"
#include "abcd/weights.hpp"

namespace abcd {

struct BuildOptions {
  unsigned threads = 1;
  /// Switch edges so that community graphs are simple and the background graph is simple
  /// and disjoint from them. Leftover conflicts after `max_sweeps` are kept.
  bool simple = false;
  int max_sweeps = 50;
};

/// A generated graph with every intermediate product of the pipeline.
struct AbcdGraph {
  MultiGraph graph;
  Partition ground_truth;
  WeightSplit split;
  DegreeSequence degrees;
  CommunitySizes sizes;
  Assignment assignment;
  std::size_t conflicts_before_rewiring = 0;
  std::size_t conflicts_after_rewiring = 0;
  /// Wall time of the per-community pairing stage, the part that runs on `threads` workers.
  double community_seconds = 0.0;
};

/// Runs `task(i)` for i in [0, count) on up to `threads` workers. Exceptions are rethrown.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

/// Members of each community, in node order.
inline std::vector<std::vector<NodeId>> community_members(const Assignment& a, std::size_t ell) {
  std::vector<std::vector<NodeId>> members(ell);
  for (std::size_t v = 0; v < a.community_of.size(); ++v)
    members[a.community_of[v]].push_back(static_cast<NodeId>(v));
  return members;
}

}  // namespace detail

/// Builds one graph of the model.
///
/// degrees -> community sizes -> admissible assignment -> weight split -> one pairing per
/// community (on y) and one for the background (on z) -> union. Every stage draws from its
/// own sub-stream of `seed`, and community j from sub-stream (community, j), so the result
/// does not depend on `options.threads`. Edges are returned in canonical order.
inline AbcdGraph build_abcd(const AbcdParams& params, std::uint64_t seed,
                            const BuildOptions& options = {}) {
  validate_params(params);
  AbcdGraph out;

  auto degree_rng = make_stream(seed, streams::degrees);
  out.degrees = degree_sequence(params, degree_rng);
  auto size_rng = make_stream(seed, streams::community_sizes);
  out.sizes = community_sizes(params, size_rng);
  auto assign_rng = make_stream(seed, streams::assignment);
  out.assignment = assign(out.degrees, out.sizes, params.xi, assign_rng);
  auto weight_rng = make_stream(seed, streams::weights);
  const auto ell = out.sizes.ell();
  out.split = split_weights(out.degrees, out.assignment, ell, params.xi, weight_rng);
  out.ground_truth = Partition{out.assignment.community_of};

  const auto members = detail::community_members(out.assignment, ell);
  std::vector<std::vector<Edge>> community_edges(ell);
  std::vector<std::size_t> conflicts_before(ell, 0);
  std::vector<std::size_t> conflicts_after(ell, 0);

  const auto community_start = std::chrono::steady_clock::now();
  parallel_for(ell, options.threads, [&](std::size_t j) {
    const auto& nodes = members[j];
    std::vector<std::int64_t> y(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) y[k] = out.split.y[nodes[k]];
    auto rng = make_stream(seed, streams::community, j);
    auto local = configuration_model(y, rng);
    if (options.simple) {
      auto rewire_rng = make_stream(seed, streams::rewire, j + 1);
      const auto stats = reduce_conflicts(local, rewire_rng, options.max_sweeps);
      conflicts_before[j] = stats.initial_conflicts;
      conflicts_after[j] = stats.remaining_conflicts;
    } else {
      conflicts_before[j] = conflicts_after[j] = count_conflicts(local);
    }
    auto& edges = community_edges[j];
    edges.reserve(local.edge_count());
    for (const auto& e : local.edges()) edges.emplace_back(nodes[e.u], nodes[e.v]);
  });
  out.community_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - community_start).count();

  auto background_rng = make_stream(seed, streams::background);
  auto background = configuration_model(out.split.z, background_rng);
  std::size_t background_before = 0;
  std::size_t background_after = 0;
  if (options.simple) {
    EdgeKeySet community_keys;
    for (const auto& edges : community_edges)
      for (const auto& e : edges)
        if (!e.is_loop()) community_keys.insert(e.key());
    auto rewire_rng = make_stream(seed, streams::rewire, 0);
    const auto stats = reduce_conflicts(background, rewire_rng, options.max_sweeps, &community_keys);
    background_before = stats.initial_conflicts;
    background_after = stats.remaining_conflicts;
  }

  std::size_t total_edges = background.edge_count();
  for (const auto& edges : community_edges) total_edges += edges.size();
  out.graph = MultiGraph(out.degrees.size());
  out.graph.reserve(total_edges);
  for (std::size_t j = 0; j < ell; ++j)
    for (const auto& e : community_edges[j])
      out.graph.add_edge(e.u, e.v, static_cast<std::uint32_t>(j + 1));
  for (const auto& e : background.edges()) out.graph.add_edge(e.u, e.v, kBackground);
  out.graph.canonicalize();

  if (options.simple) {
    for (auto c : conflicts_before) out.conflicts_before_rewiring += c;
    for (auto c : conflicts_after) out.conflicts_after_rewiring += c;
    out.conflicts_before_rewiring += background_before;
    out.conflicts_after_rewiring += background_after;
  } else {
    out.conflicts_before_rewiring = out.conflicts_after_rewiring = count_conflicts(out.graph);
  }
  return out;
}

}  // namespace abcd
