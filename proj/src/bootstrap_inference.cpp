#include "fcut/bootstrap_inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fcut/error.hpp"
#include "fcut/parallel.hpp"
#include "fcut/rng.hpp"

namespace fcut {

void BootstrapConfig::validate() const {
  if (replicates < 1) throw Error("bootstrap: replicate count must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("bootstrap: alpha must lie in (0, 1)");
  if (reference_points < 2) throw Error("bootstrap: reference grid needs at least 2 points");
  if (!(split_fraction >= 0.0 && split_fraction < 1.0)) {
    throw Error("bootstrap: split fraction must lie in [0, 1)");
  }
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw Error("percentile of an empty set");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("percentile: p must lie in [0, 1]");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

namespace {

struct Replicate {
  double c_hat = 0.0;
  Confusion metrics;
  double auc = 0.0;
  std::vector<double> cutoff;  // functional path only
  std::vector<double> sens, spec;
  std::size_t redraws = 0;
};

// What a replicate evaluates: scores of the resampled subjects and, on the
// functional path, the family re-estimated from the resample.
struct ReplicateInput {
  ScoredSample scored;
  std::vector<double> mu;
  std::vector<double> sigma;
};

bool has_both_classes(std::span<const int> labels, std::span<const std::size_t> idx) {
  bool seen[2] = {false, false};
  for (auto i : idx) seen[labels[i]] = true;
  return seen[0] && seen[1];
}

// Draws n indices with replacement, redrawing resamples whose scored part
// lacks a class. Returns the number of redraws.
std::size_t draw_indices(std::span<const int> labels, std::size_t scored_from,
                         const BootstrapConfig& cfg, std::size_t replicate,
                         std::vector<std::size_t>& idx) {
  const std::size_t n = labels.size();
  idx.resize(n);
  for (std::size_t attempt = 0;; ++attempt) {
    SplitMix64 rng(derive_seed(cfg.seed, {replicate, attempt}));
    for (auto& i : idx) i = static_cast<std::size_t>(rng.below(n));
    if (has_both_classes(labels, std::span<const std::size_t>(idx).subspan(scored_from))) {
      return attempt;
    }
    if (attempt >= cfg.max_redraws) {
      throw Error("bootstrap infeasible: class too rare (" + std::to_string(attempt + 1) +
                  " consecutive single-class resamples)");
    }
  }
}

template <typename Sample>
void require_both_classes(const Sample& s) {
  if (s.cases() == 0 || s.controls() == 0) {
    throw Error(std::string("bootstrap infeasible: sample has no ") +
                (s.cases() == 0 ? "cases" : "controls"));
  }
}

Interval interval(std::span<const double> values, double alpha) {
  return {percentile(values, alpha / 2.0), percentile(values, 1.0 - alpha / 2.0)};
}

template <typename Evaluate>
BootstrapSummary run(const ScoredSample& original, Criterion criterion,
                     const BootstrapConfig& cfg, const OptimizeOptions& optimize_options,
                     std::size_t scored_from, const Evaluate& evaluate) {
  BootstrapSummary s;
  s.criterion = criterion;
  s.replicates = cfg.replicates;
  s.alpha = cfg.alpha;
  s.seed = cfg.seed;

  const auto point = optimize(original, criterion, optimize_options);
  s.c_hat = point.c_hat;
  s.point = point.at_c_hat;
  s.point_auc = point.auc;

  const auto [lo, hi] = std::minmax_element(original.scores.begin(), original.scores.end());
  s.c_grid = linspace(*lo, *hi, cfg.reference_points);

  OptimizeOptions replicate_options = optimize_options;
  replicate_options.summary_only = true;

  std::vector<Replicate> reps(cfg.replicates);
  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t b) {
    std::vector<std::size_t> idx;
    Replicate& r = reps[b];
    r.redraws = draw_indices(original.labels, scored_from, cfg, b, idx);
    ReplicateInput in = evaluate(idx);
    in.scored.direction = original.direction;
    const auto fit = optimize(in.scored, criterion, replicate_options);
    r.c_hat = fit.c_hat;
    r.metrics = fit.at_c_hat;
    r.auc = auc(in.scored);
    const auto rows = sweep(in.scored, s.c_grid);
    r.sens.resize(rows.size());
    r.spec.resize(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      r.sens[j] = rows[j].sensitivity;
      r.spec[j] = rows[j].specificity;
    }
    if (!in.mu.empty()) {
      r.cutoff.resize(in.mu.size());
      for (std::size_t k = 0; k < in.mu.size(); ++k) {
        r.cutoff[k] = in.mu[k] + r.c_hat * in.sigma[k];
      }
    }
  });

  const std::size_t B = cfg.replicates;
  std::vector<double> sens(B), spec(B), youden(B), aucs(B);
  s.c_hats.resize(B);
  for (std::size_t b = 0; b < B; ++b) {
    s.c_hats[b] = reps[b].c_hat;
    sens[b] = reps[b].metrics.sensitivity;
    spec[b] = reps[b].metrics.specificity;
    youden[b] = reps[b].metrics.youden;
    aucs[b] = reps[b].auc;
    s.redraws += reps[b].redraws;
  }
  s.ci = interval(s.c_hats, cfg.alpha);
  s.sensitivity_ci = interval(sens, cfg.alpha);
  s.specificity_ci = interval(spec, cfg.alpha);
  s.youden_ci = interval(youden, cfg.alpha);
  s.auc_ci = interval(aucs, cfg.alpha);

  std::vector<double> column(B);
  auto band = [&](std::size_t points, auto get, std::vector<double>& lower,
                  std::vector<double>& upper) {
    lower.resize(points);
    upper.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
      for (std::size_t b = 0; b < B; ++b) column[b] = get(reps[b], k);
      const auto iv = interval(column, cfg.alpha);
      lower[k] = iv.lower;
      upper[k] = iv.upper;
    }
  };
  band(s.c_grid.size(), [](const Replicate& r, std::size_t k) { return r.sens[k]; },
       s.sens_lower, s.sens_upper);
  band(s.c_grid.size(), [](const Replicate& r, std::size_t k) { return r.spec[k]; },
       s.spec_lower, s.spec_upper);
  if (!reps.front().cutoff.empty()) {
    band(reps.front().cutoff.size(),
         [](const Replicate& r, std::size_t k) { return r.cutoff[k]; }, s.cutoff_lower,
         s.cutoff_upper);
  }
  return s;
}

}  // namespace

BootstrapSummary bootstrap_cutpoint(const LabeledSample& sample, Criterion criterion,
                                    const FamilyOptions& family, const BootstrapConfig& config,
                                    const OptimizeOptions& optimize_options) {
  config.validate();
  require_both_classes(sample);
  const std::size_t n = sample.size();
  std::size_t n_estimate = 0;
  if (config.split_fraction > 0.0) {
    if (n < 3) throw Error("bootstrap: split fraction needs at least 3 subjects");
    n_estimate = static_cast<std::size_t>(std::lround(config.split_fraction * static_cast<double>(n)));
    n_estimate = std::clamp<std::size_t>(n_estimate, 1, n - 2);
  }

  const auto point_family = estimate_family(sample, family);
  ScoredSample original;
  original.labels = sample.labels;
  for (const auto& c : sample.curves) original.scores.push_back(margin(c.values(), point_family));
  original.validate();

  auto s = run(original, criterion, config, optimize_options, n_estimate,
               [&](const std::vector<std::size_t>& idx) {
                 const std::span<const std::size_t> all(idx);
                 const auto est = n_estimate > 0 ? all.first(n_estimate) : all;
                 const auto scored_idx = n_estimate > 0 ? all.subspan(n_estimate) : all;
                 const auto fam = estimate_family(sample, est, family);
                 ReplicateInput in;
                 in.scored.scores.reserve(scored_idx.size());
                 in.scored.labels.reserve(scored_idx.size());
                 for (auto i : scored_idx) {
                   in.scored.scores.push_back(margin(sample.curves[i].values(), fam));
                   in.scored.labels.push_back(sample.labels[i]);
                 }
                 in.mu.assign(fam.mu().begin(), fam.mu().end());
                 in.sigma.assign(fam.sigma().begin(), fam.sigma().end());
                 return in;
               });
  s.rho.assign(sample.grid->points().begin(), sample.grid->points().end());
  return s;
}

BootstrapSummary bootstrap_scalar(const ScoredSample& sample, Criterion criterion,
                                  const BootstrapConfig& config,
                                  const OptimizeOptions& optimize_options) {
  config.validate();
  require_both_classes(sample);
  sample.validate();
  return run(sample, criterion, config, optimize_options, 0,
             [&](const std::vector<std::size_t>& idx) {
               ReplicateInput in;
               in.scored.scores.reserve(idx.size());
               in.scored.labels.reserve(idx.size());
               for (auto i : idx) {
                 in.scored.scores.push_back(sample.scores[i]);
                 in.scored.labels.push_back(sample.labels[i]);
               }
               return in;
             });
}

}  // namespace fcut
