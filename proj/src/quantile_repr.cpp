#include "fcut/quantile_repr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fcut/error.hpp"

namespace fcut {

ProbabilityGrid::ProbabilityGrid(std::vector<double> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw Error("probability grid is empty");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double p = points_[k];
    if (!(p > 0.0 && p <= 1.0)) {
      throw Error("probability grid point outside (0, 1]: " + std::to_string(p));
    }
    if (k > 0 && !(points_[k - 1] < p)) {
      throw Error("probability grid is not strictly increasing");
    }
  }
}

ProbabilityGrid ProbabilityGrid::interior(std::size_t m) {
  if (m == 0) throw Error("probability grid size must be positive");
  std::vector<double> points(m);
  for (std::size_t k = 0; k < m; ++k) {
    points[k] = static_cast<double>(k + 1) / static_cast<double>(m + 1);
  }
  return ProbabilityGrid(std::move(points));
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

QuantileCurve::QuantileCurve(std::string subject_id, GridPtr grid,
                             std::vector<double> values)
    : subject_id_(std::move(subject_id)),
      grid_(std::move(grid)),
      values_(std::move(values)) {
  if (!grid_) throw Error("quantile curve '" + subject_id_ + "' has no grid");
  if (values_.size() != grid_->size()) {
    throw Error("quantile curve '" + subject_id_ + "' has " +
                std::to_string(values_.size()) + " values for a grid of " +
                std::to_string(grid_->size()));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error("quantile curve '" + subject_id_ + "' has a non-finite value");
    }
    if (k > 0 && values_[k] < values_[k - 1]) {
      throw Error("quantile curve '" + subject_id_ + "' is not nondecreasing");
    }
  }
}

double empirical_quantile_sorted(std::span<const double> sorted, double rho) {
  const std::size_t n = sorted.size();
  if (n == 0) throw Error("no data for subject");
  const double dn = static_cast<double>(n);
  // Smallest count k in [1, n] with k / n >= rho, evaluated the same way the
  // definition is written so that grid points such as 0.5 hit exact ties.
  std::size_t k = static_cast<std::size_t>(std::clamp(std::ceil(rho * dn), 1.0, dn));
  while (k > 1 && static_cast<double>(k - 1) / dn >= rho) --k;
  while (k < n && static_cast<double>(k) / dn < rho) ++k;
  return sorted[k - 1];
}

QuantileCurve empirical_quantile(std::string subject_id,
                                 std::span<const double> observations,
                                 GridPtr grid) {
  if (observations.empty()) throw Error("no data for subject '" + subject_id + "'");
  if (!grid) throw Error("empirical_quantile: missing grid");
  std::vector<double> sorted(observations.begin(), observations.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> values;
  values.reserve(grid->size());
  for (double rho : grid->points()) {
    values.push_back(empirical_quantile_sorted(sorted, rho));
  }
  return QuantileCurve(std::move(subject_id), std::move(grid), std::move(values));
}

namespace {

template <typename Pred>
double fraction_where(std::span<const double> observations, Pred pred) {
  if (observations.empty()) throw Error("time in range: no observations");
  const auto hits = std::count_if(observations.begin(), observations.end(), pred);
  return static_cast<double>(hits) / static_cast<double>(observations.size());
}

}  // namespace

double time_in_range(std::span<const double> observations, double lo, double hi) {
  if (!(lo < hi)) throw Error("time in range: require lo < hi");
  return fraction_where(observations, [=](double x) { return lo <= x && x < hi; });
}

double fraction_below(std::span<const double> observations, double threshold,
                      bool inclusive) {
  return fraction_where(observations, [=](double x) {
    return inclusive ? x <= threshold : x < threshold;
  });
}

double fraction_above(std::span<const double> observations, double threshold,
                      bool inclusive) {
  return fraction_where(observations, [=](double x) {
    return inclusive ? x >= threshold : x > threshold;
  });
}

DensityPlot density_plot_data(const QuantileCurve& curve, double bandwidth) {
  if (!(bandwidth > 0.0)) throw Error("density bandwidth must be positive");
  constexpr std::size_t kPoints = 361;
  constexpr double kLo = 40.0;
  constexpr double kHi = 400.0;
  DensityPlot out;
  out.glucose.resize(kPoints);
  out.density.assign(kPoints, 0.0);
  const auto values = curve.values();
  const double norm = 1.0 / (static_cast<double>(values.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double x = kLo + (kHi - kLo) * static_cast<double>(i) / (kPoints - 1);
    out.glucose[i] = x;
    double sum = 0.0;
    for (double v : values) {
      const double z = (x - v) / bandwidth;
      sum += std::exp(-0.5 * z * z);
    }
    out.density[i] = sum * norm;
  }
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("trapezoid: length mismatch");
  double area = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    area += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return area;
}

}  // namespace fcut
