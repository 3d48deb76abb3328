#include "fcut/monotone_smooth.hpp"

#include <algorithm>
#include <cmath>

#include "fcut/error.hpp"

namespace fcut {

std::vector<double> pava(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) throw Error("pava: values/weights length mismatch");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error("pava: weights must be positive");
  }
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    blocks.push_back({values[i], weights[i], 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double w = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean);
  return out;
}

std::vector<double> pava(std::span<const double> values) {
  const std::vector<double> unit(values.size(), 1.0);
  return pava(values, unit);
}

SmoothResult monotone_smooth(std::span<const double> values, const SmoothConfig& config) {
  if (config.window == 0 || config.window % 2 == 0) {
    throw Error("monotone_smooth: window must be an odd positive integer");
  }
  std::vector<double> smoothed(values.begin(), values.end());
  if (config.window > 1) {
    const std::size_t half = config.window / 2;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t lo = i >= half ? i - half : 0;
      const std::size_t hi = std::min(values.size() - 1, i + half);
      double sum = 0.0;
      for (std::size_t j = lo; j <= hi; ++j) sum += values[j];
      smoothed[i] = sum / static_cast<double>(hi - lo + 1);
    }
  }
  SmoothResult result;
  result.values = pava(smoothed);
  for (std::size_t i = 0; i < values.size(); ++i) {
    result.max_abs_change = std::max(result.max_abs_change, std::abs(result.values[i] - values[i]));
  }
  return result;
}

}  // namespace fcut
