#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fcut/cutpoint_core.hpp"
#include "fcut/threshold_family.hpp"

namespace fcut {

struct BootstrapConfig {
  std::size_t replicates = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::size_t max_redraws = 100;  // consecutive single-class resamples tolerated
  unsigned threads = 1;           // 0 = hardware concurrency
  std::size_t reference_points = 512;
  // Functional path only: when in (0, 1), the first round(f * n) draws of each
  // resample estimate the threshold family and the remaining draws are scored.
  double split_fraction = 0.0;

  void validate() const;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct BootstrapSummary {
  Criterion criterion = Criterion::youden;
  std::size_t replicates = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::size_t redraws = 0;

  // Point estimate on the original sample.
  double c_hat = 0.0;
  Confusion point;
  double point_auc = 0.0;

  std::vector<double> c_hats;  // indexed by replicate
  Interval ci;
  Interval sensitivity_ci;
  Interval specificity_ci;
  Interval youden_ci;
  Interval auc_ci;

  // Pointwise band of mu*_b + c_b * sigma*_b (functional path only).
  std::vector<double> rho;
  std::vector<double> cutoff_lower;
  std::vector<double> cutoff_upper;

  // Pointwise-in-c bands of replicate sweeps on a fixed reference grid.
  std::vector<double> c_grid;
  std::vector<double> sens_lower, sens_upper;
  std::vector<double> spec_lower, spec_upper;
};

// Sample quantile by linear interpolation between order statistics at
// position 1 + (n - 1) p (1-based). `values` need not be sorted.
double percentile(std::span<const double> values, double p);

// Resample subjects, re-estimate the threshold family, recompute margins and
// re-optimize the criterion per replicate. Replicate b's indices depend only
// on (seed, b, attempt), so results do not depend on the thread count.
BootstrapSummary bootstrap_cutpoint(const LabeledSample& sample, Criterion criterion,
                                    const FamilyOptions& family, const BootstrapConfig& config,
                                    const OptimizeOptions& optimize_options = {});

// Same resampling scheme over fixed per-subject scores.
BootstrapSummary bootstrap_scalar(const ScoredSample& sample, Criterion criterion,
                                  const BootstrapConfig& config,
                                  const OptimizeOptions& optimize_options = {});

}  // namespace fcut
