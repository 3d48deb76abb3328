#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fcut {

// Strictly increasing probability levels in (0, 1], shared by every curve of
// a cohort.
class ProbabilityGrid {
 public:
  explicit ProbabilityGrid(std::vector<double> points);

  // rho_k = k / (m + 1), k = 1..m.
  static ProbabilityGrid interior(std::size_t m = 100);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t k) const { return points_[k]; }

  friend bool operator==(const ProbabilityGrid&, const ProbabilityGrid&) = default;

 private:
  std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const ProbabilityGrid>;

// Same points, compared by pointer first then by value.
bool same_grid(const GridPtr& a, const GridPtr& b);

// A subject's distributional representation: quantile values on a shared grid.
// Construction enforces a matching length and nondecreasing values.
class QuantileCurve {
 public:
  QuantileCurve(std::string subject_id, GridPtr grid, std::vector<double> values);

  const std::string& subject_id() const { return subject_id_; }
  const GridPtr& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::string subject_id_;
  GridPtr grid_;
  std::vector<double> values_;
};

// Left-continuous inverse of the empirical CDF evaluated on `grid`: for each
// rho, the smallest observation t with #{X <= t} / n >= rho.
// Throws fcut::Error("no data for subject") on empty input.
QuantileCurve empirical_quantile(std::string subject_id,
                                 std::span<const double> observations,
                                 GridPtr grid);

// Single-level version of the above on already sorted data.
double empirical_quantile_sorted(std::span<const double> sorted, double rho);

// Fraction of samples with lo <= x < hi.
double time_in_range(std::span<const double> observations, double lo, double hi);

// Fraction of samples with x <= threshold (inclusive) or x < threshold.
double fraction_below(std::span<const double> observations, double threshold,
                      bool inclusive);

// Fraction of samples with x >= threshold (inclusive) or x > threshold.
double fraction_above(std::span<const double> observations, double threshold,
                      bool inclusive);

struct DensityPlot {
  std::vector<double> glucose;  // 361 points on [40, 400]
  std::vector<double> density;
};

// Gaussian kernel density of the curve's quantile values, for plotting only.
DensityPlot density_plot_data(const QuantileCurve& curve, double bandwidth);

// Trapezoid integral of a sampled density.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace fcut
