#pragma once

#include <span>
#include <vector>

namespace fcut {

// Weighted least-squares nondecreasing fit by pool-adjacent-violators.
// Throws on length mismatch or non-positive weights.
std::vector<double> pava(std::span<const double> values, std::span<const double> weights);
std::vector<double> pava(std::span<const double> values);

struct SmoothConfig {
  std::size_t window = 1;  // odd moving-average width; 1 disables pre-smoothing
};

struct SmoothResult {
  std::vector<double> values;
  double max_abs_change = 0.0;
};

// Centered moving average (truncated at the ends), then PAVA.
SmoothResult monotone_smooth(std::span<const double> values, const SmoothConfig& config = {});

}  // namespace fcut
