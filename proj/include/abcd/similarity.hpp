#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/graph.hpp"

namespace abcd {

struct SimilarityScores {
  double ari = 0.0;
  double ami = 0.0;
};

namespace detail {

struct Contingency {
  std::vector<std::int64_t> rows;  // part sizes in the first partition
  std::vector<std::int64_t> cols;
  struct Cell {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t count;
  };
  std::vector<Cell> cells;  // nonzero cells, sorted by (row, col)
  std::int64_t n = 0;
};

inline Contingency contingency(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count()) throw PreconditionError("partitions cover different node sets");
  const auto ca = a.compacted();
  const auto cb = b.compacted();
  Contingency t;
  t.n = static_cast<std::int64_t>(a.node_count());
  t.rows.assign(ca.part_count(), 0);
  t.cols.assign(cb.part_count(), 0);
  std::unordered_map<std::uint64_t, std::int64_t> cells;
  for (std::size_t v = 0; v < ca.node_count(); ++v) {
    ++t.rows[ca.part_of[v]];
    ++t.cols[cb.part_of[v]];
    ++cells[(static_cast<std::uint64_t>(ca.part_of[v]) << 32) | cb.part_of[v]];
  }
  t.cells.reserve(cells.size());
  for (const auto& [key, count] : cells)
    t.cells.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key), count});
  std::sort(t.cells.begin(), t.cells.end(), [](const auto& x, const auto& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  return t;
}

inline double pairs(std::int64_t k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k - 1); }

inline double entropy(const std::vector<std::int64_t>& sizes, double n) {
  double h = 0.0;
  for (auto s : sizes)
    if (s > 0) h -= (static_cast<double>(s) / n) * std::log(static_cast<double>(s) / n);
  return h;
}

/// E[MI] under the hypergeometric model of random partitions with the given margins.
inline double expected_mutual_information(const Contingency& t) {
  const auto n = t.n;
  const double nd = static_cast<double>(n);
  std::vector<double> lg(static_cast<std::size_t>(n) + 2);
  for (std::size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(static_cast<double>(i) + 1.0);  // log i!
  double emi = 0.0;
  for (auto a : t.rows) {
    for (auto b : t.cols) {
      const auto lo = std::max<std::int64_t>(1, a + b - n);
      const auto hi = std::min(a, b);
      for (auto k = lo; k <= hi; ++k) {
        const double kd = static_cast<double>(k);
        const double term = kd / nd * std::log(nd * kd / (static_cast<double>(a) * static_cast<double>(b)));
        const double log_p = lg[a] + lg[b] + lg[n - a] + lg[n - b] - lg[n] - lg[k] - lg[a - k] - lg[b - k] -
                             lg[n - a - b + k];
        emi += term * std::exp(log_p);
      }
    }
  }
  return emi;
}

}  // namespace detail

/// Adjusted Rand index under the permutation model. Two partitions that are both trivial
/// (one part, or all singletons) and equal score 1.
inline double ari(const Partition& a, const Partition& b) {
  const auto t = detail::contingency(a, b);
  double index = 0.0;
  for (const auto& c : t.cells) index += detail::pairs(c.count);
  double sum_rows = 0.0;
  double sum_cols = 0.0;
  for (auto r : t.rows) sum_rows += detail::pairs(r);
  for (auto c : t.cols) sum_cols += detail::pairs(c);
  const double total = detail::pairs(t.n);
  if (total == 0.0) return 1.0;
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return index == max_index ? 1.0 : 0.0;
  return (index - expected) / (max_index - expected);
}

/// Adjusted mutual information, normalised by the arithmetic mean of the two entropies.
/// Identical partitions score 1; a partition with zero entropy against a different one
/// scores 0.
inline double ami(const Partition& a, const Partition& b) {
  const auto t = detail::contingency(a, b);
  const double n = static_cast<double>(t.n);
  const bool same = t.rows.size() == t.cols.size() && t.cells.size() == t.rows.size();
  if (same) return 1.0;
  const double ha = detail::entropy(t.rows, n);
  const double hb = detail::entropy(t.cols, n);
  if (ha == 0.0 || hb == 0.0) return 0.0;

  double mi = 0.0;
  for (const auto& cell : t.cells) {
    const double c = static_cast<double>(cell.count);
    mi += c / n * std::log(n * c / (static_cast<double>(t.rows[cell.row]) * static_cast<double>(t.cols[cell.col])));
  }
  const double emi = detail::expected_mutual_information(t);
  const double denominator = 0.5 * (ha + hb) - emi;
  if (std::abs(denominator) < 1e-15) return 1.0;
  return (mi - emi) / denominator;
}

inline SimilarityScores similarity(const Partition& a, const Partition& b) { return {ari(a, b), ami(a, b)}; }

}  // namespace abcd
