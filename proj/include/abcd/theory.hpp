#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "abcd/errors.hpp"
#include "abcd/params.hpp"
#include "abcd/powerlaw.hpp"

namespace abcd {

/// (2 - beta) / ((beta - 1) s^(beta - 1)).
inline double c_hat(double beta, std::int64_t s) {
  return (2.0 - beta) / ((beta - 1.0) * std::pow(static_cast<double>(s), beta - 1.0));
}

/// Mean of the degree law in the given variant (d for continuous, d-hat for discrete).
inline double mean_degree(const AbcdParams& p, Variant variant) {
  return TruncatedPowerLaw(p.gamma, p.delta, p.max_degree(), variant).mean();
}

/// Expected number of communities, c-hat n^(1 - tau (2 - beta)).
inline double predicted_community_count(const AbcdParams& p) {
  return c_hat(p.beta, p.s) * std::pow(static_cast<double>(p.n), 1.0 - p.tau * (2.0 - p.beta));
}

/// delta (gamma-1)/(gamma-2): the large-D upper limit of d.
inline double mean_degree_upper_limit(const AbcdParams& p) {
  return static_cast<double>(p.delta) * (p.gamma - 1.0) / (p.gamma - 2.0);
}

/// delta^2/(delta+1) (gamma-1)/(gamma-2): the large-D lower limit of d.
inline double mean_degree_lower_limit(const AbcdParams& p) {
  const double delta = static_cast<double>(p.delta);
  return delta * delta / (delta + 1.0) * (p.gamma - 1.0) / (p.gamma - 2.0);
}

struct TheoryContext {
  AbcdParams params;
  double d = 0.0;
  double d_hat = 0.0;
  double c_hat = 0.0;
  double ell_pred = 0.0;
};

inline TheoryContext theory_context(const AbcdParams& p) {
  validate_params(p);
  TheoryContext t;
  t.params = p;
  t.d = mean_degree(p, Variant::continuous);
  t.d_hat = mean_degree(p, Variant::discrete);
  t.c_hat = c_hat(p.beta, p.s);
  t.ell_pred = predicted_community_count(p);
  return t;
}

/// Law of a node's background degree: u_k = sum over delta <= i <= D with
/// k-1 < xi i < k+1 of (1 - |xi i - k|) q_i. Each q_i is split between floor(xi i) and
/// the next integer, so the weights sum to 1 and the mean is xi times the degree mean.
inline std::map<std::int64_t, double> background_pmf(const AbcdParams& p,
                                                     Variant variant = Variant::continuous) {
  const TruncatedPowerLaw law(p.gamma, p.delta, p.max_degree(), variant);
  std::map<std::int64_t, double> u;
  for (auto i = p.delta; i <= p.max_degree(); ++i) {
    const double x = p.xi * static_cast<double>(i);
    const double base = std::floor(x);
    const double frac = x - base;
    const auto k = static_cast<std::int64_t>(base);
    u[k] += (1.0 - frac) * law.pmf(i);
    if (frac > 0.0) u[k + 1] += frac * law.pmf(i);
  }
  return u;
}

inline double c_ab(std::int64_t a, std::int64_t b) {
  if (b < 3) throw DomainError("c(a, b) needs b >= 3");
  if (a < 1) throw DomainError("c(a, b) needs a >= 1");
  const double ad = static_cast<double>(a);
  const double bd = static_cast<double>(b);
  const double ab = ad * bd;
  return (bd - 2.0 * std::sqrt(bd - 1.0)) / (2.0 * bd) * ab / (ab + bd - 1.0) - (bd - 1.0) / (ab + bd - 1.0) -
         0.011;
}

struct Xi0 {
  double value = 0.0;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

/// max over a >= 1, b >= 3, ab < delta of min(1 - ab/delta, c(a,b)/4, 1/20), by exhaustive
/// scan; the lexicographically smallest maximiser (a, b) is reported.
inline Xi0 xi0(std::int64_t delta) {
  if (delta < 4) throw DomainError("xi0 needs delta >= 4");
  Xi0 best;
  best.value = -std::numeric_limits<double>::infinity();
  const double dd = static_cast<double>(delta);
  for (std::int64_t a = 1; a * 3 < delta; ++a) {
    for (std::int64_t b = 3; a * b < delta; ++b) {
      const double value =
          std::min({1.0 - static_cast<double>(a * b) / dd, c_ab(a, b) / 4.0, 1.0 / 20.0});
      if (value > best.value) best = {value, a, b};
    }
  }
  return best;
}

/// Ground-truth modularity 1 - xi.
inline double predicted_ground_truth_q(const AbcdParams& p) { return 1.0 - p.xi; }

/// 2/d-hat, available when xi delta >= 3 (the background graph then has a component
/// covering almost every node); otherwise only a positive lower bound with an unknown
/// constant exists, so nothing is returned.
inline std::optional<double> predicted_tree_q(const AbcdParams& p) {
  if (p.xi * static_cast<double>(p.delta) < 3.0) return std::nullopt;
  return 2.0 / mean_degree(p, Variant::discrete);
}

/// Modularity gained over the ground truth by moving lucky nodes, for delta = 1:
/// xi q1/d (2 - q1/d) with q1 and d from the discrete law.
inline double predicted_lucky_improvement(const AbcdParams& p) {
  if (p.delta != 1) throw DomainError("lucky-node prediction needs delta = 1");
  const TruncatedPowerLaw law(p.gamma, p.delta, p.max_degree(), Variant::discrete);
  const double r = law.pmf(1) / law.mean();
  return p.xi * r * (2.0 - r);
}

/// (k, Pr(X >= k)) over the support of a law.
inline std::vector<std::pair<std::int64_t, double>> ccdf_curve(const TruncatedPowerLaw& law) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(law.support_size());
  for (auto k = law.lo(); k <= law.hi(); ++k) out.emplace_back(k, law.ccdf(k));
  return out;
}

}  // namespace abcd
