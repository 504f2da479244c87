#pragma once

#include <cmath>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/graph.hpp"
#include "abcd/powerlaw.hpp"

namespace abcd {

/// q = edge_contribution - degree_tax.
struct ModularityReport {
  double edge_contribution = 0.0;
  double degree_tax = 0.0;
  double q = 0.0;
};

/// Modularity of a partition of a multigraph. Every copy of a repeated edge counts in
/// e(A); a loop counts once in e(A) and twice in the degree, so vol(V) = 2|E|.
inline ModularityReport modularity(const MultiGraph& g, const Partition& a) {
  if (g.edge_count() == 0) throw EmptyGraphError();
  if (a.node_count() != g.node_count()) throw PreconditionError("partition does not cover the graph");

  std::vector<std::int64_t> part_volume(a.part_count(), 0);
  for (std::size_t v = 0; v < g.node_count(); ++v) part_volume[a.part_of[v]] += g.degree(static_cast<NodeId>(v));
  std::int64_t inside = 0;
  for (const auto& e : g.edges())
    if (a.part_of[e.u] == a.part_of[e.v]) ++inside;

  const auto total_volume = static_cast<double>(g.total_volume());
  KahanSum tax;
  for (auto vol : part_volume) {
    const double share = static_cast<double>(vol) / total_volume;
    tax.add(share * share);
  }
  ModularityReport r;
  r.edge_contribution = static_cast<double>(inside) / static_cast<double>(g.edge_count());
  r.degree_tax = tax.value();
  r.q = r.edge_contribution - r.degree_tax;
  return r;
}

struct GroundTruthReport {
  ModularityReport report;
  double prediction = 0.0;  // 1 - xi
  double deviation = 0.0;  // |q - (1 - xi)|
};

inline GroundTruthReport ground_truth_modularity(const MultiGraph& g, const Partition& truth,
                                                 double xi) {
  GroundTruthReport r;
  r.report = modularity(g, truth);
  r.prediction = 1.0 - xi;
  r.deviation = std::abs(r.report.q - r.prediction);
  return r;
}

}  // namespace abcd
