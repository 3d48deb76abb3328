#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fcut {

enum class Criterion { youden, max_sensitivity, max_specificity };

Criterion parse_criterion(std::string_view name);
std::string_view to_string(Criterion c);

// Which side of the cut-point is called positive.
enum class Direction { higher, lower };

Direction parse_direction(std::string_view name);
std::string_view to_string(Direction d);

// One score per subject (a margin or a raw biomarker value) with its label.
struct ScoredSample {
  std::vector<double> scores;
  std::vector<int> labels;  // 0 control, 1 case
  Direction direction = Direction::higher;

  std::size_t cases() const;
  std::size_t controls() const;
  // Throws fcut::Error("degenerate sample ...") without both classes, and
  // on length mismatch, non-finite scores or non-binary labels.
  void validate() const;
};

struct Confusion {
  double sensitivity = 0.0;
  double specificity = 0.0;
  double youden = 0.0;
};

// Positive iff score >= c (higher) or score <= c (lower).
Confusion confusion_at(const ScoredSample& sample, double c);

// Distinct score values plus one sentinel past the extreme on the negative
// side (above the maximum for `higher`), sorted ascending. The metrics are
// step functions that only change at these values.
std::vector<double> candidate_set(const ScoredSample& sample);

struct SweepRow {
  double c = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double youden = 0.0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct CutpointResult {
  Criterion criterion = Criterion::youden;
  double c_hat = 0.0;
  Confusion at_c_hat;
  std::vector<SweepRow> sweep;
  std::vector<RocPoint> roc;  // sorted by fpr, then tpr
  double auc = 0.0;
};

struct OptimizeOptions {
  // Restricts candidates to [lower, upper] when set.
  std::optional<double> lower;
  std::optional<double> upper;
  // Replaces the exact candidate set with a user grid (still filtered).
  std::optional<std::vector<double>> grid;
  // Skip building sweep/ROC (bootstrap replicates only need c_hat).
  bool summary_only = false;
};

// Metrics at every candidate, computed with one sort.
std::vector<SweepRow> sweep(const ScoredSample& sample, std::span<const double> candidates);

// Exact maximization over the candidate set. Ties are broken by the
// criterion value, then the secondary metric (specificity for
// max_sensitivity, sensitivity for max_specificity), then the smallest c.
CutpointResult optimize(const ScoredSample& sample, Criterion criterion,
                        const OptimizeOptions& options = {});

// ROC traced over the full candidate sweep, including (0,0) and (1,1).
std::vector<RocPoint> roc_curve(const ScoredSample& sample);

// Trapezoidal area under roc_curve(sample).
double auc(const ScoredSample& sample);

// Evenly spaced values l, ..., u (m >= 2), or {l} when m == 1.
std::vector<double> linspace(double lower, double upper, std::size_t m);

}  // namespace fcut
