// Brute-force reference implementations used by the unit and acceptance
// suites. Nothing here calls into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "fcut/cutpoint_core.hpp"
#include "fcut/normal.hpp"

namespace oracle {

struct Metrics {
  double sens = 0, spec = 0, youden = 0;
};

// Direct count of positives (score >= c) by class.
inline Metrics count_at(const std::vector<double>& scores, const std::vector<int>& labels,
                        double c) {
  double tp = 0, tn = 0, p = 0, q = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) {
      ++p;
      if (scores[i] >= c) ++tp;
    } else {
      ++q;
      if (!(scores[i] >= c)) ++tn;
    }
  }
  Metrics m;
  m.sens = tp / p;
  m.spec = tn / q;
  m.youden = m.sens + m.spec - 1.0;
  return m;
}

struct BruteChoice {
  double c = 0;
  bool is_sentinel = false;
  Metrics at;
};

// Exhaustive maximizer over {distinct scores} U {max + 1} with the
// lexicographic rule: criterion value, secondary metric, smallest c.
inline BruteChoice brute_optimize(const std::vector<double>& scores, const std::vector<int>& labels,
                                  fcut::Criterion criterion) {
  std::set<double> distinct(scores.begin(), scores.end());
  std::vector<double> cand(distinct.begin(), distinct.end());
  const double sentinel = cand.back() + 1.0;
  cand.push_back(sentinel);
  BruteChoice best;
  bool have = false;
  for (double c : cand) {
    const Metrics m = count_at(scores, labels, c);
    double primary = m.youden, secondary = 0.0;
    if (criterion == fcut::Criterion::max_sensitivity) primary = m.sens, secondary = m.spec;
    if (criterion == fcut::Criterion::max_specificity) primary = m.spec, secondary = m.sens;
    double bp = best.at.youden, bs = 0.0;
    if (criterion == fcut::Criterion::max_sensitivity) bp = best.at.sens, bs = best.at.spec;
    if (criterion == fcut::Criterion::max_specificity) bp = best.at.spec, bs = best.at.sens;
    // Candidates ascend, so strict improvement keeps the smallest c on ties.
    if (!have || primary > bp || (primary == bp && secondary > bs)) {
      best = {c, c == sentinel, m};
      have = true;
    }
  }
  return best;
}

// P(case > control) + 0.5 P(case == control), by enumerating pairs.
inline double mann_whitney(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1;
      if (scores[i] > scores[j]) wins += 1;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

// Monotone least squares by enumerating all 2^(n-1) partitions into
// contiguous level sets and keeping the best feasible one.
inline std::vector<double> brute_isotonic(const std::vector<double>& y, const std::vector<double>& w) {
  const std::size_t n = y.size();
  if (n == 0) return {};
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<double> best;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<double> fit(n);
    std::size_t start = 0;
    double prev_level = -std::numeric_limits<double>::infinity();
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) {
      const bool cut = i == n - 1 || (mask >> i) & 1u;
      if (!cut) continue;
      double sw = 0, swy = 0;
      for (std::size_t k = start; k <= i; ++k) sw += w[k], swy += w[k] * y[k];
      const double level = swy / sw;
      if (level < prev_level - 1e-12) feasible = false;
      for (std::size_t k = start; k <= i; ++k) fit[k] = level;
      prev_level = level;
      start = i + 1;
    }
    if (!feasible) continue;
    double loss = 0;
    for (std::size_t k = 0; k < n; ++k) loss += w[k] * (y[k] - fit[k]) * (y[k] - fit[k]);
    if (loss < best_loss - 1e-12) {
      best_loss = loss;
      best = fit;
    }
  }
  return best;
}

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Solves cdf(x) = p on [lo, hi] by bisection.
template <typename Cdf>
double bisect(Cdf cdf, double p, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double tn_quantile_bisect(const fcut::TruncNormalSpec& s, double p) {
  const double a = std_normal_cdf((s.lower - s.mean) / s.sd);
  const double b = std_normal_cdf((s.upper - s.mean) / s.sd);
  auto cdf = [&](double x) { return (std_normal_cdf((x - s.mean) / s.sd) - a) / (b - a); };
  return bisect(cdf, p, s.lower, s.upper);
}

}  // namespace oracle
