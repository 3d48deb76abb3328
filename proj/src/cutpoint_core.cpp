#include "fcut/cutpoint_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fcut/error.hpp"

namespace fcut {

Criterion parse_criterion(std::string_view name) {
  if (name == "youden") return Criterion::youden;
  if (name == "max_sensitivity") return Criterion::max_sensitivity;
  if (name == "max_specificity") return Criterion::max_specificity;
  throw InputError("unknown criterion '" + std::string(name) +
                   "' (youden|max_sensitivity|max_specificity)");
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::youden: return "youden";
    case Criterion::max_sensitivity: return "max_sensitivity";
    case Criterion::max_specificity: return "max_specificity";
  }
  return "?";
}

Direction parse_direction(std::string_view name) {
  if (name == "higher") return Direction::higher;
  if (name == "lower") return Direction::lower;
  throw InputError("unknown direction '" + std::string(name) + "' (higher|lower)");
}

std::string_view to_string(Direction d) { return d == Direction::higher ? "higher" : "lower"; }

std::size_t ScoredSample::cases() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

std::size_t ScoredSample::controls() const { return labels.size() - cases(); }

void ScoredSample::validate() const {
  if (scores.size() != labels.size()) throw Error("scored sample: scores/labels length mismatch");
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error("scored sample: non-finite score");
  }
  for (int z : labels) {
    if (z != 0 && z != 1) throw Error("scored sample: labels must be 0 or 1");
  }
  if (cases() == 0 || controls() == 0) {
    throw Error("degenerate sample: need at least one case and one control");
  }
}

namespace {

bool is_positive(Direction d, double score, double c) {
  return d == Direction::higher ? score >= c : score <= c;
}

double sentinel_above(double v) {
  const double bumped = v + std::max(1.0, std::abs(v) * 1e-9);
  return bumped > v ? bumped : std::nextafter(v, INFINITY);
}

double sentinel_below(double v) {
  const double bumped = v - std::max(1.0, std::abs(v) * 1e-9);
  return bumped < v ? bumped : std::nextafter(v, -INFINITY);
}

}  // namespace

Confusion confusion_at(const ScoredSample& sample, double c) {
  sample.validate();
  std::size_t tp = 0, tn = 0;
  for (std::size_t i = 0; i < sample.scores.size(); ++i) {
    const bool pos = is_positive(sample.direction, sample.scores[i], c);
    if (sample.labels[i] == 1 && pos) ++tp;
    if (sample.labels[i] == 0 && !pos) ++tn;
  }
  Confusion out;
  out.sensitivity = static_cast<double>(tp) / static_cast<double>(sample.cases());
  out.specificity = static_cast<double>(tn) / static_cast<double>(sample.controls());
  out.youden = out.sensitivity + out.specificity - 1.0;
  return out;
}

std::vector<double> candidate_set(const ScoredSample& sample) {
  std::vector<double> c(sample.scores);
  if (c.empty()) return c;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (sample.direction == Direction::higher) {
    c.push_back(sentinel_above(c.back()));
  } else {
    c.insert(c.begin(), sentinel_below(c.front()));
  }
  return c;
}

std::vector<SweepRow> sweep(const ScoredSample& sample, std::span<const double> candidates) {
  sample.validate();
  const std::size_t n = sample.scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return sample.scores[a] < sample.scores[b]; });
  const double n_cases = static_cast<double>(sample.cases());
  const double n_controls = static_cast<double>(sample.controls());

  std::vector<std::size_t> by_c(candidates.size());
  std::iota(by_c.begin(), by_c.end(), std::size_t{0});
  std::sort(by_c.begin(), by_c.end(), [&](auto a, auto b) { return candidates[a] < candidates[b]; });

  // Walk candidates in ascending order, counting subjects strictly below c
  // (higher direction) or at/below c (lower direction).
  std::vector<SweepRow> rows(candidates.size());
  std::size_t pos = 0, cases_seen = 0, controls_seen = 0;
  for (std::size_t j : by_c) {
    const double c = candidates[j];
    while (pos < n && (sample.direction == Direction::higher ? sample.scores[order[pos]] < c
                                                              : sample.scores[order[pos]] <= c)) {
      (sample.labels[order[pos]] == 1 ? cases_seen : controls_seen)++;
      ++pos;
    }
    SweepRow& row = rows[j];
    row.c = c;
    if (sample.direction == Direction::higher) {
      row.sensitivity = (n_cases - static_cast<double>(cases_seen)) / n_cases;
      row.specificity = static_cast<double>(controls_seen) / n_controls;
    } else {
      row.sensitivity = static_cast<double>(cases_seen) / n_cases;
      row.specificity = (n_controls - static_cast<double>(controls_seen)) / n_controls;
    }
    row.youden = row.sensitivity + row.specificity - 1.0;
  }
  return rows;
}

std::vector<double> linspace(double lower, double upper, std::size_t m) {
  if (m == 0) throw Error("linspace: need at least one point");
  if (m == 1) return {lower};
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(m - 1);
  }
  out.back() = upper;
  return out;
}

namespace {

// Lexicographic key: larger is better, except that smaller c wins last.
bool better(Criterion criterion, const SweepRow& a, const SweepRow& b) {
  double pa = 0, pb = 0, sa = 0, sb = 0;
  switch (criterion) {
    case Criterion::youden:
      pa = a.youden, pb = b.youden;
      break;
    case Criterion::max_sensitivity:
      pa = a.sensitivity, pb = b.sensitivity, sa = a.specificity, sb = b.specificity;
      break;
    case Criterion::max_specificity:
      pa = a.specificity, pb = b.specificity, sa = a.sensitivity, sb = b.sensitivity;
      break;
  }
  if (pa != pb) return pa > pb;
  if (sa != sb) return sa > sb;
  return a.c < b.c;
}

std::vector<RocPoint> roc_from_sweep(const std::vector<SweepRow>& rows) {
  std::vector<RocPoint> roc;
  roc.reserve(rows.size() + 2);
  for (const auto& r : rows) roc.push_back({1.0 - r.specificity, r.sensitivity});
  roc.push_back({0.0, 0.0});
  roc.push_back({1.0, 1.0});
  std::sort(roc.begin(), roc.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.fpr != b.fpr ? a.fpr < b.fpr : a.tpr < b.tpr;
  });
  roc.erase(std::unique(roc.begin(), roc.end(),
                        [](const RocPoint& a, const RocPoint& b) {
                          return a.fpr == b.fpr && a.tpr == b.tpr;
                        }),
            roc.end());
  return roc;
}

double area(const std::vector<RocPoint>& roc) {
  double a = 0.0;
  for (std::size_t i = 1; i < roc.size(); ++i) {
    a += (roc[i].fpr - roc[i - 1].fpr) * (roc[i].tpr + roc[i - 1].tpr) * 0.5;
  }
  return a;
}

}  // namespace

std::vector<RocPoint> roc_curve(const ScoredSample& sample) {
  const auto candidates = candidate_set(sample);
  return roc_from_sweep(sweep(sample, candidates));
}

double auc(const ScoredSample& sample) { return area(roc_curve(sample)); }

CutpointResult optimize(const ScoredSample& sample, Criterion criterion,
                        const OptimizeOptions& options) {
  sample.validate();
  const auto exact = candidate_set(sample);
  std::vector<double> candidates = options.grid ? *options.grid : exact;
  if (options.lower || options.upper) {
    std::erase_if(candidates, [&](double c) {
      return (options.lower && c < *options.lower) || (options.upper && c > *options.upper);
    });
  }
  if (candidates.empty()) throw Error("no candidate cut-points inside the requested range");

  const auto rows = sweep(sample, candidates);
  std::size_t best = 0;
  for (std::size_t j = 1; j < rows.size(); ++j) {
    if (better(criterion, rows[j], rows[best])) best = j;
  }

  CutpointResult result;
  result.criterion = criterion;
  result.c_hat = rows[best].c;
  result.at_c_hat = {rows[best].sensitivity, rows[best].specificity, rows[best].youden};
  if (options.summary_only) return result;

  result.sweep = rows;
  std::sort(result.sweep.begin(), result.sweep.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.c < b.c; });
  const bool restricted = options.grid || options.lower || options.upper;
  result.roc = roc_from_sweep(restricted ? sweep(sample, exact) : rows);
  result.auc = area(result.roc);
  return result;
}

}  // namespace fcut
