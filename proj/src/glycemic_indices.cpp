#include "fcut/glycemic_indices.hpp"

#include <algorithm>
#include <cmath>

#include "fcut/error.hpp"
#include "fcut/quantile_repr.hpp"

namespace fcut {

namespace {

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double minutes_between(Timestamp a, Timestamp b) {
  return static_cast<double>((b - a).count()) / 60.0;
}

}  // namespace

BasicIndices basic_indices(const SubjectSeries& series, const IndexOptions& options) {
  if (series.records.size() < 2) {
    throw Error("indices for '" + series.subject_id + "': need at least 2 records");
  }
  const auto g = series.glucose();
  BasicIndices out;
  out.mg = mean_of(g);
  out.sd = sample_sd(g);
  out.cv = out.mg > 0.0 ? 100.0 * out.sd / out.mg : 0.0;
  std::vector<double> sorted(g);
  std::sort(sorted.begin(), sorted.end());
  out.iqr = empirical_quantile_sorted(sorted, 0.75) - empirical_quantile_sorted(sorted, 0.25);
  out.tar140 = fraction_above(g, 140.0, options.tar_inclusive);
  out.tar180 = fraction_above(g, 180.0, options.tar_inclusive);

  double area = 0.0;
  double duration = 0.0;
  const auto& r = series.records;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double dt = minutes_between(r[i - 1].timestamp, r[i].timestamp);
    if (dt > options.max_bridge_minutes) continue;
    area += 0.5 * dt * (r[i - 1].glucose + r[i].glucose);
    duration += dt;
  }
  out.auc_index = duration > 0.0 ? area / duration : out.mg;
  return out;
}

double mage(const SubjectSeries& series) {
  if (series.records.size() < 3) {
    throw Error("MAGE for '" + series.subject_id + "': need at least 3 records");
  }
  const auto g = series.glucose();
  const double sd = sample_sd(g);

  std::vector<double> levels;
  for (double v : g) {
    if (levels.empty() || levels.back() != v) levels.push_back(v);
  }
  std::vector<double> extrema;
  for (std::size_t i = 1; i + 1 < levels.size(); ++i) {
    const bool peak = levels[i] > levels[i - 1] && levels[i] > levels[i + 1];
    const bool nadir = levels[i] < levels[i - 1] && levels[i] < levels[i + 1];
    if (peak || nadir) extrema.push_back(levels[i]);
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < extrema.size(); ++i) {
    const double amplitude = std::abs(extrema[i] - extrema[i - 1]);
    if (amplitude > sd) {
      sum += amplitude;
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

double conga(const SubjectSeries& series, double horizon_hours) {
  if (!(horizon_hours > 0.0)) throw Error("CONGA horizon must be positive");
  const auto& r = series.records;
  const double horizon = horizon_hours * 60.0;
  const double tolerance = 0.5 * series.nominal_interval_minutes;
  std::vector<double> diffs;
  std::size_t j = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double target = minutes_between(r.front().timestamp, r[i].timestamp) - horizon;
    if (target < -tolerance) continue;
    // Advance j to the sample nearest to the target time.
    auto offset = [&](std::size_t k) {
      return minutes_between(r.front().timestamp, r[k].timestamp) - target;
    };
    while (j + 1 < r.size() && std::abs(offset(j + 1)) <= std::abs(offset(j))) ++j;
    if (j < i && std::abs(offset(j)) <= tolerance) diffs.push_back(r[i].glucose - r[j].glucose);
  }
  if (diffs.empty()) {
    throw Error("CONGA for '" + series.subject_id + "': no sample pairs " +
                std::to_string(horizon_hours) + " h apart");
  }
  return sample_sd(diffs);
}

IndexVector compute_indices(const SubjectSeries& series, const IndexOptions& options) {
  IndexVector v;
  v.subject_id = series.subject_id;
  v.basic = basic_indices(series, options);
  v.mage = mage(series);
  v.conga = conga(series, options.conga_horizon_hours);
  return v;
}

const std::vector<std::string>& index_columns() {
  static const std::vector<std::string> cols{"mg",    "sd",    "cv",     "iqr",    "mage",
                                             "conga", "auc",   "tar140", "tar180"};
  return cols;
}

std::vector<double> index_values(const IndexVector& v) {
  return {v.basic.mg,   v.basic.sd,    v.basic.cv,     v.basic.iqr,   v.mage,
          v.conga,      v.basic.auc_index, v.basic.tar140, v.basic.tar180};
}

}  // namespace fcut
