#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/params.hpp"
#include "abcd/powerlaw.hpp"
#include "abcd/random.hpp"

namespace abcd {

/// Node degrees w_1 >= w_2 >= ... >= w_n with an even sum.
struct DegreeSequence {
  std::vector<std::int64_t> degrees;

  std::size_t size() const { return degrees.size(); }
  std::int64_t total() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  }
};

/// Community sizes c_1 >= c_2 >= ... >= c_ell summing to n.
struct CommunitySizes {
  std::vector<std::int64_t> sizes;

  std::size_t ell() const { return sizes.size(); }
  std::int64_t total() const {
    return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
  }
};

/// Sorts raw draws nonincreasing and, if their sum is odd, lowers one maximum-degree
/// entry by one.
inline DegreeSequence fix_degree_parity(std::vector<std::int64_t> raw) {
  std::sort(raw.begin(), raw.end(), std::greater<>());
  const auto sum = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
  if (sum % 2 != 0) {
    // Decrementing the last of the tied maxima keeps the sequence sorted.
    const auto last_max = std::upper_bound(raw.begin(), raw.end(), raw.front(), std::greater<>());
    --*(last_max - 1);
  }
  return DegreeSequence{std::move(raw)};
}

inline DegreeSequence degree_sequence(const AbcdParams& p, Rng& rng) {
  const auto dist = degree_distribution(p);
  return fix_degree_parity(dist.sample(rng, static_cast<std::size_t>(p.n)));
}

/// Closes a run of community-size draws. `draws` is every size drawn while the running
/// sum was below n; its total is >= n and the total without the last draw is < n.
///
/// With overshoot k of the last draw z: k == 0 keeps everything; z-k >= s shrinks the last
/// community to z-k; otherwise the last community is dropped and z-k distinct earlier
/// communities, chosen uniformly, grow by one.
inline CommunitySizes close_community_sizes(std::vector<std::int64_t> draws, std::int64_t n,
                                            std::int64_t s, Rng& rng) {
  if (draws.empty()) throw PreconditionError("no community sizes drawn");
  const auto total = std::accumulate(draws.begin(), draws.end(), std::int64_t{0});
  const auto z = draws.back();
  const auto k = total - n;
  if (k < 0 || total - z >= n) throw PreconditionError("draws do not end at the first overshoot of n");

  if (k > 0) {
    const auto rest = z - k;
    if (rest >= s) {
      draws.back() = rest;
    } else {
      draws.pop_back();
      if (draws.empty())
        throw InfeasibleError("n = " + std::to_string(n) + " is smaller than the minimum community size");
      std::vector<std::size_t> order(draws.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      const auto increments = static_cast<std::size_t>(rest);
      if (increments <= order.size()) {
        // Partial Fisher-Yates: the first `increments` slots form a uniform subset.
        for (std::size_t i = 0; i < increments; ++i) {
          const auto j = i + static_cast<std::size_t>(uniform_below(rng, order.size() - i));
          std::swap(order[i], order[j]);
          ++draws[order[i]];
        }
      } else {
        shuffle(std::span<std::size_t>(order), rng);
        for (std::size_t i = 0; i < increments; ++i) ++draws[order[i % order.size()]];
      }
    }
  }
  std::sort(draws.begin(), draws.end(), std::greater<>());
  return CommunitySizes{std::move(draws)};
}

inline CommunitySizes community_sizes(const AbcdParams& p, Rng& rng) {
  if (p.n < p.s)
    throw InfeasibleError("n = " + std::to_string(p.n) + " is smaller than s = " + std::to_string(p.s));
  const auto dist = community_size_distribution(p);
  std::vector<std::int64_t> draws;
  std::int64_t running = 0;
  while (running < p.n) {
    draws.push_back(dist.sample(rng));
    running += draws.back();
  }
  return close_community_sizes(std::move(draws), p.n, p.s, rng);
}

}  // namespace abcd
