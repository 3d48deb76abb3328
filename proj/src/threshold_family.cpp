#include "fcut/threshold_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fcut/error.hpp"

namespace fcut {

LabeledSample::LabeledSample(GridPtr g, std::vector<QuantileCurve> c, std::vector<int> l)
    : grid(std::move(g)), curves(std::move(c)), labels(std::move(l)) {
  if (!grid) throw Error("labeled sample has no grid");
  if (curves.size() != labels.size()) throw Error("labeled sample: curves/labels length mismatch");
  for (const auto& curve : curves) {
    if (!same_grid(curve.grid(), grid)) {
      throw Error("labeled sample: curve '" + curve.subject_id() + "' uses a different grid");
    }
  }
  for (int z : labels) {
    if (z != 0 && z != 1) throw Error("labels must be 0 or 1");
  }
}

std::size_t LabeledSample::cases() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

CenterMode parse_center_mode(std::string_view name) {
  if (name == "pooled-mean") return CenterMode::pooled_mean;
  if (name == "group-mean") return CenterMode::group_mean;
  if (name == "pointwise-median") return CenterMode::pointwise_median;
  throw InputError("unknown center mode '" + std::string(name) +
                   "' (pooled-mean|group-mean|pointwise-median)");
}

std::string_view to_string(CenterMode mode) {
  switch (mode) {
    case CenterMode::pooled_mean: return "pooled-mean";
    case CenterMode::group_mean: return "group-mean";
    case CenterMode::pointwise_median: return "pointwise-median";
  }
  return "?";
}

ScaleMode parse_scale_mode(std::string_view name) {
  if (name == "unit") return ScaleMode::unit;
  if (name == "pointwise-sd") return ScaleMode::pointwise_sd;
  throw InputError("unknown sigma mode '" + std::string(name) + "' (unit|pointwise-sd)");
}

std::string_view to_string(ScaleMode mode) {
  return mode == ScaleMode::unit ? "unit" : "pointwise-sd";
}

ThresholdFamily::ThresholdFamily(GridPtr grid, std::vector<double> mu, std::vector<double> sigma)
    : grid_(std::move(grid)), mu_(std::move(mu)), sigma_(std::move(sigma)) {
  if (!grid_) throw Error("threshold family has no grid");
  if (mu_.size() != grid_->size() || sigma_.size() != grid_->size()) {
    throw Error("threshold family: mu/sigma length does not match grid");
  }
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    if (!std::isfinite(mu_[k])) throw Error("threshold family: mu is not finite");
    if (!(sigma_[k] > 0.0) || !std::isfinite(sigma_[k])) {
      throw Error("threshold family: sigma must be positive and finite");
    }
  }
}

ThresholdFamily::ThresholdFamily(GridPtr grid, std::vector<double> mu)
    : ThresholdFamily(grid, mu, std::vector<double>(mu.size(), 1.0)) {}

std::vector<double> ThresholdFamily::cutoff_curve(double c) const {
  std::vector<double> h(mu_.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = mu_[k] + c * sigma_[k];
  return h;
}

namespace {

void check_shared_grid(std::span<const QuantileCurve* const> curves) {
  if (curves.empty()) throw Error("cannot estimate a threshold family from an empty sample");
  for (const auto* c : curves) {
    if (!same_grid(c->grid(), curves.front()->grid())) {
      throw Error("curves are on mixed grids");
    }
  }
}

}  // namespace

std::vector<double> estimate_center(std::span<const QuantileCurve* const> curves,
                                    CenterMode mode) {
  check_shared_grid(curves);
  const std::size_t m = curves.front()->size();
  const std::size_t n = curves.size();
  std::vector<double> center(m, 0.0);
  if (mode == CenterMode::pointwise_median) {
    std::vector<double> column(n);
    const std::size_t lower_middle = (n - 1) / 2;
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) column[i] = (*curves[i])[k];
      std::nth_element(column.begin(), column.begin() + lower_middle, column.end());
      center[k] = column[lower_middle];
    }
    return center;
  }
  for (const auto* c : curves) {
    for (std::size_t k = 0; k < m; ++k) center[k] += (*c)[k];
  }
  for (auto& v : center) v /= static_cast<double>(n);
  return center;
}

std::vector<double> estimate_scale(std::span<const QuantileCurve* const> curves, double floor) {
  check_shared_grid(curves);
  const std::size_t m = curves.front()->size();
  const std::size_t n = curves.size();
  std::vector<double> sigma(m, floor);
  if (n < 2) return sigma;
  const auto mean = estimate_center(curves, CenterMode::pooled_mean);
  for (std::size_t k = 0; k < m; ++k) {
    double ss = 0.0;
    for (const auto* c : curves) {
      const double d = (*c)[k] - mean[k];
      ss += d * d;
    }
    sigma[k] = std::max(floor, std::sqrt(ss / static_cast<double>(n - 1)));
  }
  return sigma;
}

ThresholdFamily estimate_family(const LabeledSample& sample, std::span<const std::size_t> indices,
                                const FamilyOptions& options) {
  std::vector<const QuantileCurve*> all;
  all.reserve(indices.size());
  for (auto i : indices) all.push_back(&sample.curves.at(i));

  std::vector<const QuantileCurve*> center_set;
  if (options.center == CenterMode::group_mean) {
    for (auto i : indices) {
      if (sample.labels[i] == options.group) center_set.push_back(&sample.curves[i]);
    }
    if (center_set.empty()) {
      throw Error("group-mean center: no curves with label " + std::to_string(options.group));
    }
  } else {
    center_set = all;
  }
  auto mu = estimate_center(center_set, options.center);
  if (options.scale == ScaleMode::unit) return ThresholdFamily(sample.grid, std::move(mu));
  return ThresholdFamily(sample.grid, std::move(mu), estimate_scale(all, options.sigma_floor));
}

ThresholdFamily estimate_family(const LabeledSample& sample, const FamilyOptions& options) {
  std::vector<std::size_t> indices(sample.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  return estimate_family(sample, indices, options);
}

double margin(std::span<const double> values, const ThresholdFamily& family) {
  const auto mu = family.mu();
  const auto sigma = family.sigma();
  if (values.size() != mu.size()) throw Error("margin: curve is not on the family grid");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < values.size(); ++k) {
    best = std::min(best, (values[k] - mu[k]) / sigma[k]);
  }
  return best;
}

double margin(const QuantileCurve& curve, const ThresholdFamily& family) {
  if (!same_grid(curve.grid(), family.grid())) {
    throw Error("margin: curve '" + curve.subject_id() + "' is not on the family grid");
  }
  return margin(curve.values(), family);
}

MarginVector margins(std::span<const QuantileCurve> curves, const ThresholdFamily& family) {
  MarginVector out;
  for (const auto& c : curves) out[c.subject_id()] = margin(c, family);
  return out;
}

int classify(double margin_value, double c) { return margin_value >= c ? 1 : 0; }

std::map<std::string, int> classify(const MarginVector& margins, double c) {
  std::map<std::string, int> out;
  for (const auto& [id, m] : margins) out[id] = classify(m, c);
  return out;
}

}  // namespace fcut
