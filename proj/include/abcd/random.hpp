#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace abcd {

/// The engine used everywhere. Its output sequence is fixed by the standard, and all
/// derived variates below are computed by hand so results are identical across platforms.
using Rng = std::mt19937_64;

/// One step of the splitmix64 generator.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of sub-stream (stream, index) of a master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream,
                              std::uint64_t index = 0) noexcept {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  state ^= stream * 0xd1342543de82ef95ULL;
  h ^= splitmix64(state);
  state ^= index * 0xa0761d6478bd642fULL;
  h ^= splitmix64(state);
  return h;
}

inline Rng make_stream(std::uint64_t master, std::uint64_t stream,
                       std::uint64_t index = 0) {
  std::uint64_t state = mix_seed(master, stream, index);
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  return Rng(seq);
}

/// Stream tags used by the generator; every independent piece gets its own sub-stream.
namespace streams {
inline constexpr std::uint64_t degrees = 1;
inline constexpr std::uint64_t community_sizes = 2;
inline constexpr std::uint64_t assignment = 3;
inline constexpr std::uint64_t weights = 4;
inline constexpr std::uint64_t background = 5;
inline constexpr std::uint64_t community = 6;
inline constexpr std::uint64_t rewire = 7;
inline constexpr std::uint64_t ensemble = 8;
inline constexpr std::uint64_t clustering = 9;  // algorithms run on a generated graph
}  // namespace streams

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound); bound must be positive. Lemire's multiply-shift method.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  using u128 = unsigned __int128;
  u128 m = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Fisher-Yates shuffle with a platform-independent draw sequence.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace abcd
