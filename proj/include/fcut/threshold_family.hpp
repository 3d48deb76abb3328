#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcut/quantile_repr.hpp"

namespace fcut {

// Quantile curves paired with binary disease labels on one shared grid.
struct LabeledSample {
  GridPtr grid;
  std::vector<QuantileCurve> curves;
  std::vector<int> labels;  // 0 control, 1 case

  LabeledSample() = default;
  LabeledSample(GridPtr grid, std::vector<QuantileCurve> curves, std::vector<int> labels);

  std::size_t size() const { return curves.size(); }
  std::size_t cases() const;
  std::size_t controls() const { return size() - cases(); }
};

enum class CenterMode { pooled_mean, group_mean, pointwise_median };
enum class ScaleMode { unit, pointwise_sd };

CenterMode parse_center_mode(std::string_view name);
std::string_view to_string(CenterMode mode);
ScaleMode parse_scale_mode(std::string_view name);
std::string_view to_string(ScaleMode mode);

struct FamilyOptions {
  CenterMode center = CenterMode::pooled_mean;
  int group = 0;  // label whose curves define the center in group_mean mode
  ScaleMode scale = ScaleMode::unit;
  double sigma_floor = 1e-6;
};

// h_c(rho) = mu(rho) + c * sigma(rho) on a fixed grid.
class ThresholdFamily {
 public:
  ThresholdFamily(GridPtr grid, std::vector<double> mu, std::vector<double> sigma);
  // sigma == 1 everywhere
  ThresholdFamily(GridPtr grid, std::vector<double> mu);

  const GridPtr& grid() const { return grid_; }
  std::span<const double> mu() const { return mu_; }
  std::span<const double> sigma() const { return sigma_; }

  std::vector<double> cutoff_curve(double c) const;

 private:
  GridPtr grid_;
  std::vector<double> mu_;
  std::vector<double> sigma_;
};

// Pointwise center of the given curves (all must share one grid).
std::vector<double> estimate_center(std::span<const QuantileCurve* const> curves,
                                    CenterMode mode);

// Pointwise sample standard deviation floored at `floor`.
std::vector<double> estimate_scale(std::span<const QuantileCurve* const> curves,
                                   double floor);

// Estimates mu (and sigma when requested) from a labeled sample. Only the
// curves whose indices are listed are used, which lets the bootstrap pass
// resampled indices without copying curves.
ThresholdFamily estimate_family(const LabeledSample& sample,
                                std::span<const std::size_t> indices,
                                const FamilyOptions& options);
ThresholdFamily estimate_family(const LabeledSample& sample, const FamilyOptions& options);

// Largest c with curve >= h_c at every grid point: min_k (Y_k - mu_k) / sigma_k.
double margin(const QuantileCurve& curve, const ThresholdFamily& family);
double margin(std::span<const double> values, const ThresholdFamily& family);

using MarginVector = std::map<std::string, double>;

MarginVector margins(std::span<const QuantileCurve> curves, const ThresholdFamily& family);

// 1 iff margin >= c.
int classify(double margin_value, double c);
std::map<std::string, int> classify(const MarginVector& margins, double c);

}  // namespace fcut
