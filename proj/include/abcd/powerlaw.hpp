#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/params.hpp"
#include "abcd/random.hpp"

namespace abcd {

/// Kahan-compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Power law on the integers lo..hi.
///
/// continuous: pmf(k) = (k^(1-e) - (k+1)^(1-e)) / (lo^(1-e) - (hi+1)^(1-e)),
///             the mass of x^-e on [k, k+1) normalised over [lo, hi+1).
/// discrete:   pmf(k) = k^-e / sum_{x=lo..hi} x^-e.
///
/// Tables for pmf, cdf and ccdf are built once; the object is immutable afterwards.
class TruncatedPowerLaw {
 public:
  TruncatedPowerLaw(double exponent, std::int64_t lo, std::int64_t hi, Variant variant)
      : exponent_(exponent), lo_(lo), hi_(hi), variant_(variant) {
    if (!(exponent > 1.0)) throw DomainError("power-law exponent must exceed 1");
    if (lo < 1 || hi < lo) throw DomainError("power-law support must satisfy 1 <= lo <= hi");
    build();
  }

  double exponent() const { return exponent_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  Variant variant() const { return variant_; }
  std::size_t support_size() const { return pmf_.size(); }

  double pmf(std::int64_t k) const {
    check(k);
    return pmf_[index(k)];
  }

  /// Pr(X >= k).
  double ccdf(std::int64_t k) const {
    check(k);
    return tail_[index(k)];
  }

  /// Sum of k * pmf(k) over the support.
  double mean() const { return mean_; }

  /// Smallest k with Pr(X <= k) > u, for u in [0, 1).
  std::int64_t quantile(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                         cdf_.size() - 1);
    return lo_ + static_cast<std::int64_t>(i);
  }

  std::int64_t sample(Rng& rng) const { return quantile(uniform01(rng)); }

  std::vector<std::int64_t> sample(Rng& rng, std::size_t count) const {
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng));
    return out;
  }

 private:
  std::size_t index(std::int64_t k) const { return static_cast<std::size_t>(k - lo_); }

  void check(std::int64_t k) const {
    if (k < lo_ || k > hi_)
      throw DomainError("value " + std::to_string(k) + " outside support [" +
                        std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  }

  // k^a - (k+1)^a for a = 1 - exponent < 0, without cancellation for large k.
  double interval_mass(double k) const {
    const double a = 1.0 - exponent_;
    return -std::pow(k, a) * std::expm1(a * std::log1p(1.0 / k));
  }

  void build() {
    const auto size = static_cast<std::size_t>(hi_ - lo_ + 1);
    pmf_.resize(size);
    tail_.resize(size);
    cdf_.resize(size);

    if (variant_ == Variant::continuous) {
      const double a = 1.0 - exponent_;
      const double upper = std::pow(static_cast<double>(hi_ + 1), a);
      const double norm = std::pow(static_cast<double>(lo_), a) - upper;
      for (std::size_t i = 0; i < size; ++i) {
        const double k = static_cast<double>(lo_) + static_cast<double>(i);
        pmf_[i] = interval_mass(k) / norm;
        tail_[i] = (std::pow(k, a) - upper) / norm;
      }
    } else {
      KahanSum total;
      std::vector<double> weight(size);
      for (std::size_t i = size; i-- > 0;) {
        weight[i] = std::pow(static_cast<double>(lo_) + static_cast<double>(i), -exponent_);
      }
      // Summing from the smallest terms up keeps the compensated total tight.
      std::vector<double> suffix(size);
      for (std::size_t i = size; i-- > 0;) {
        total.add(weight[i]);
        suffix[i] = total.value();
      }
      const double norm = total.value();
      for (std::size_t i = 0; i < size; ++i) {
        pmf_[i] = weight[i] / norm;
        tail_[i] = suffix[i] / norm;
      }
    }
    tail_[0] = 1.0;

    KahanSum running;
    KahanSum first_moment;
    for (std::size_t i = 0; i < size; ++i) {
      running.add(pmf_[i]);
      cdf_[i] = running.value();
      first_moment.add((static_cast<double>(lo_) + static_cast<double>(i)) * pmf_[i]);
    }
    cdf_.back() = 1.0;
    mean_ = first_moment.value();
  }

  double exponent_;
  std::int64_t lo_;
  std::int64_t hi_;
  Variant variant_;
  std::vector<double> pmf_;
  std::vector<double> tail_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
};

/// Degree distribution of the model: exponent gamma on [delta, floor(n^zeta)].
inline TruncatedPowerLaw degree_distribution(const AbcdParams& p) {
  return TruncatedPowerLaw(p.gamma, p.delta, p.max_degree(), p.variant);
}

/// Community-size distribution of the model: exponent beta on [s, floor(n^tau)].
inline TruncatedPowerLaw community_size_distribution(const AbcdParams& p) {
  return TruncatedPowerLaw(p.beta, p.s, p.max_community_size(), p.variant);
}

}  // namespace abcd
