#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "abcd/assignment.hpp"
#include "abcd/errors.hpp"
#include "abcd/random.hpp"
#include "abcd/sequences.hpp"

namespace abcd {

/// Split of each degree w_i into community degree y_i and background degree z_i.
struct WeightSplit {
  std::vector<std::int64_t> y;
  std::vector<std::int64_t> z;
  std::vector<std::uint32_t> leader_of;  // community -> node index

  bool empty() const { return y.empty(); }
};

/// floor(x) + Bernoulli(frac(x)); unbiased for x >= 0.
inline std::int64_t stochastic_round(double x, Rng& rng) {
  const double base = std::floor(x);
  const double frac = x - base;
  auto out = static_cast<std::int64_t>(base);
  if (frac > 0.0 && uniform01(rng) < frac) ++out;
  return out;
}

namespace detail {

// (1 - xi) * w, snapped to the nearest integer when within rounding noise of it.
inline double community_share(std::int64_t w, double xi) {
  const double x = (1.0 - xi) * static_cast<double>(w);
  const double r = std::round(x);
  return std::abs(x - r) < 1e-9 * std::max(1.0, x) ? r : x;
}

}  // namespace detail

/// Non-leaders get y = stochastic_round((1-xi) w). The leader of each community (largest
/// degree, lowest index on ties) gets floor or ceil of (1-xi) w, whichever makes the
/// community's y-sum even; when (1-xi) w is an integer and the sum is odd, it moves one
/// up or down with equal probability, or the only feasible way if it sits at 0 or w.
inline WeightSplit split_weights(const DegreeSequence& degrees, const Assignment& assignment,
                                 std::size_t communities, double xi, Rng& rng) {
  const auto n = degrees.size();
  if (assignment.community_of.size() != n) throw PreconditionError("assignment size differs from n");

  WeightSplit split;
  split.y.assign(n, 0);
  split.z.assign(n, 0);
  split.leader_of.assign(communities, UINT32_MAX);

  for (std::size_t i = 0; i < n; ++i) {
    const auto c = assignment.community_of[i];
    if (c >= communities) throw PreconditionError("community index out of range");
    auto& leader = split.leader_of[c];
    if (leader == UINT32_MAX || degrees.degrees[i] > degrees.degrees[leader])
      leader = static_cast<std::uint32_t>(i);
  }

  std::vector<std::int64_t> parity(communities, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = assignment.community_of[i];
    if (split.leader_of[c] == i) continue;
    split.y[i] = stochastic_round(detail::community_share(degrees.degrees[i], xi), rng);
    parity[c] += split.y[i];
  }

  for (std::size_t c = 0; c < communities; ++c) {
    const auto leader = split.leader_of[c];
    if (leader == UINT32_MAX) continue;
    const auto w = degrees.degrees[leader];
    const double x = detail::community_share(w, xi);
    const auto lower = static_cast<std::int64_t>(std::floor(x));
    std::int64_t y = lower;
    if (x != std::floor(x)) {
      if ((parity[c] + lower) % 2 != 0) y = lower + 1;
    } else if ((parity[c] + lower) % 2 != 0) {
      const bool can_go_down = lower > 0;
      const bool can_go_up = lower < w;
      if (can_go_down && can_go_up) {
        y = uniform01(rng) < 0.5 ? lower - 1 : lower + 1;
      } else {
        y = can_go_down ? lower - 1 : lower + 1;
      }
    }
    split.y[leader] = y;
  }

  for (std::size_t i = 0; i < n; ++i) split.z[i] = degrees.degrees[i] - split.y[i];
  return split;
}

}  // namespace abcd
