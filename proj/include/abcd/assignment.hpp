#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/random.hpp"
#include "abcd/sequences.hpp"

namespace abcd {

/// Node-to-community map. Community indices follow the (nonincreasing) size order.
struct Assignment {
  std::vector<std::uint32_t> community_of;
  double phi = 0.0;
};

/// phi = 1 - sum_j (c_j / n)^2.
inline double compute_phi(const CommunitySizes& sizes, std::int64_t n) {
  KahanSum squares;
  const auto nn = static_cast<double>(n);
  for (auto c : sizes.sizes) {
    const double share = static_cast<double>(c) / nn;
    squares.add(share * share);
  }
  return 1.0 - squares.value();
}

/// ceil((1 - xi*phi) * w): a node of degree w fits a community of size c iff this is <= c - 1.
inline std::int64_t admissibility_threshold(std::int64_t w, double xi, double phi) {
  const double x = (1.0 - xi * phi) * static_cast<double>(w);
  // Products that are integers in exact arithmetic may land a few ulps above.
  return static_cast<std::int64_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

namespace detail {

/// Fenwick tree over remaining community capacities.
class CapacityTree {
 public:
  explicit CapacityTree(const std::vector<std::int64_t>& values) : tree_(values.size() + 1, 0) {
    for (std::size_t i = 0; i < values.size(); ++i) add(i, values[i]);
  }

  void add(std::size_t index, std::int64_t delta) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  /// Sum of entries [0, count).
  std::int64_t prefix(std::size_t count) const {
    std::int64_t sum = 0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  /// Smallest index whose inclusive prefix sum exceeds `target`.
  std::size_t find(std::int64_t target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace detail

/// Samples an admissible assignment uniformly at random.
///
/// Nodes are taken in nonincreasing degree order (ties by index). Each node joins one of
/// the communities large enough for it that still has free spots, with probability
/// proportional to the free spots left. Since sizes are sorted, the eligible communities
/// always form a prefix, so each draw is a prefix-restricted Fenwick search.
inline Assignment assign(const DegreeSequence& degrees, const CommunitySizes& sizes, double xi,
                         Rng& rng) {
  const auto n = static_cast<std::int64_t>(degrees.size());
  if (sizes.total() != n) throw PreconditionError("community sizes do not sum to n");

  Assignment result;
  result.phi = compute_phi(sizes, n);
  result.community_of.assign(degrees.size(), 0);

  detail::CapacityTree capacity(sizes.sizes);
  std::size_t eligible = 0;  // communities [0, eligible) are large enough for the current node
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i > 0 && degrees.degrees[i] > degrees.degrees[i - 1])
      throw PreconditionError("degree sequence must be sorted nonincreasing");
    const auto threshold = admissibility_threshold(degrees.degrees[i], xi, result.phi);
    while (eligible < sizes.ell() && sizes.sizes[eligible] - 1 >= threshold) ++eligible;
    const auto free_spots = capacity.prefix(eligible);
    if (free_spots == 0)
      throw InfeasibleError("no admissible community left for node " + std::to_string(i + 1) +
                            " of degree " + std::to_string(degrees.degrees[i]));
    const auto pick = capacity.find(static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(free_spots))));
    capacity.add(pick, -1);
    result.community_of[i] = static_cast<std::uint32_t>(pick);
  }
  return result;
}

/// True iff every node satisfies the admissibility inequality and every community
/// holds exactly its size. phi is recomputed from `sizes`.
inline bool is_admissible(const Assignment& a, const DegreeSequence& degrees,
                          const CommunitySizes& sizes, double xi) {
  if (a.community_of.size() != degrees.size()) return false;
  const double phi = compute_phi(sizes, static_cast<std::int64_t>(degrees.size()));
  std::vector<std::int64_t> occupancy(sizes.ell(), 0);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const auto c = a.community_of[i];
    if (c >= sizes.ell()) return false;
    if (admissibility_threshold(degrees.degrees[i], xi, phi) > sizes.sizes[c] - 1) return false;
    ++occupancy[c];
  }
  return occupancy == sizes.sizes;
}

}  // namespace abcd
