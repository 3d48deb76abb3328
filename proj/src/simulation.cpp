#include "fcut/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "fcut/bootstrap_inference.hpp"
#include "fcut/error.hpp"
#include "fcut/parallel.hpp"
#include "fcut/rng.hpp"

namespace fcut {

namespace {

constexpr std::size_t kMaxRegenerations = 1000;

}  // namespace

U2Mode parse_u2_mode(std::string_view name) {
  if (name == "literal") return U2Mode::literal;
  if (name == "rho-scaled") return U2Mode::rho_scaled;
  throw InputError("unknown u2 mode '" + std::string(name) + "' (literal|rho-scaled)");
}

std::string_view to_string(U2Mode mode) {
  return mode == U2Mode::literal ? "literal" : "rho-scaled";
}

ShapeMode parse_shape_mode(std::string_view name) {
  if (name == "literal") return ShapeMode::literal;
  if (name == "shared") return ShapeMode::shared;
  throw InputError("unknown shape mode '" + std::string(name) + "' (literal|shared)");
}

std::string_view to_string(ShapeMode mode) {
  return mode == ShapeMode::literal ? "literal" : "shared";
}

void DgpParams::validate() const {
  if (n < 2) throw Error("simulation: n must be at least 2");
  if (!std::isfinite(v) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error("simulation: a, b and v must be finite");
  }
  if (a < 0.0 || b < 0.0) throw Error("simulation: a and b must be nonnegative");
  if (v < 0.0) throw Error("simulation: v must be nonnegative");
  if (!grid) throw Error("simulation: missing probability grid");
}

std::vector<double> base_quantiles(const DgpParams& params) {
  std::vector<double> q0;
  q0.reserve(params.grid->size());
  for (double rho : params.grid->points()) q0.push_back(tn_quantile(params.base, rho));
  return q0;
}

std::vector<double> dgp_curve(const DgpParams& params, const SubjectDraw& d,
                              std::span<const double> q0) {
  const auto rho = params.grid->points();
  const double location = params.a * d.z + d.u1;
  const double scale = params.shape_mode == ShapeMode::literal
                           ? (5.0 + params.b) * d.z * d.u3
                           : (5.0 + params.b * d.z) * d.u3;
  std::vector<double> y(q0.size());
  for (std::size_t k = 0; k < q0.size(); ++k) {
    // rho-scaled uses |U2| so that control curves stay nondecreasing.
    const double u2_term = params.u2_mode == U2Mode::literal
                               ? d.u2 * params.v
                               : std::abs(d.u2) * params.v * rho[k];
    y[k] = location + u2_term + scale * q0[k];
  }
  return y;
}

GeneratedCohort generate(const DgpParams& params) {
  params.validate();
  const auto q0 = base_quantiles(params);
  GeneratedCohort out;
  for (std::size_t attempt = 0;; ++attempt) {
    SplitMix64 rng(derive_seed(params.seed, {attempt}));
    std::vector<SubjectDraw> draws(params.n);
    std::size_t cases = 0;
    for (auto& d : draws) {
      d.z = rng.bernoulli(0.5) ? 1 : 0;
      d.u1 = rng.uniform(-1.0, 1.0);
      d.u2 = rng.uniform(-1.0, 1.0);
      d.u3 = rng.uniform(0.8, 1.2);
      cases += static_cast<std::size_t>(d.z);
    }
    if (cases == 0 || cases == params.n) {
      if (attempt >= kMaxRegenerations) throw Error("simulation: could not draw both classes");
      continue;
    }
    std::vector<QuantileCurve> curves;
    std::vector<int> labels;
    curves.reserve(params.n);
    labels.reserve(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
      curves.emplace_back("sim" + std::to_string(i + 1), params.grid,
                          dgp_curve(params, draws[i], q0));
      labels.push_back(draws[i].z);
    }
    out.sample = LabeledSample(params.grid, std::move(curves), std::move(labels));
    out.draws = std::move(draws);
    out.regenerations = attempt;
    return out;
  }
}

StudyResult run_study(const StudyConfig& config) {
  if (config.replicates < 1) throw Error("simulation: replicate count must be at least 1");
  if (config.criteria.empty()) throw Error("simulation: no criteria requested");
  const auto grid = std::make_shared<const ProbabilityGrid>(
      ProbabilityGrid::interior(config.grid_points));
  const std::size_t n_cells = config.cells.size();
  const std::size_t n_crit = config.criteria.size();
  const std::size_t R = config.replicates;

  StudyResult result;
  result.rows.resize(n_cells * R * n_crit);
  std::vector<std::size_t> regenerations(n_cells * R, 0);

  parallel_for(n_cells * R, config.threads, [&](std::size_t job) {
    const std::size_t cell_index = job / R;
    const std::size_t r = job % R;
    const auto& cell = config.cells[cell_index];
    DgpParams params;
    params.a = cell.a;
    params.b = cell.b;
    params.n = cell.n;
    params.v = config.v;
    params.grid = grid;
    params.u2_mode = config.u2_mode;
    params.shape_mode = config.shape_mode;
    params.seed = derive_seed(config.seed, {cell_index, r});
    const auto cohort = generate(params);
    regenerations[job] = cohort.regenerations;

    const auto family = estimate_family(cohort.sample, config.family);
    ScoredSample scored;
    scored.labels = cohort.sample.labels;
    for (const auto& c : cohort.sample.curves) scored.scores.push_back(margin(c.values(), family));

    OptimizeOptions opts;
    opts.summary_only = true;
    for (std::size_t k = 0; k < n_crit; ++k) {
      const auto fit = optimize(scored, config.criteria[k], opts);
      StudyRow& row = result.rows[job * n_crit + k];
      row.a = cell.a;
      row.b = cell.b;
      row.n = cell.n;
      row.criterion = config.criteria[k];
      row.replicate = r;
      row.sensitivity = fit.at_c_hat.sensitivity;
      row.specificity = fit.at_c_hat.specificity;
    }
  });
  for (auto g : regenerations) result.regenerations += g;

  for (std::size_t ci = 0; ci < n_cells; ++ci) {
    for (std::size_t k = 0; k < n_crit; ++k) {
      std::vector<double> sens(R), spec(R);
      for (std::size_t r = 0; r < R; ++r) {
        const auto& row = result.rows[(ci * R + r) * n_crit + k];
        sens[r] = row.sensitivity;
        spec[r] = row.specificity;
      }
      auto mean = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v;
        return s / static_cast<double>(x.size());
      };
      auto var = [&](const std::vector<double>& x) {
        if (x.size() < 2) return 0.0;
        const double m = mean(x);
        double ss = 0.0;
        for (double v : x) ss += (v - m) * (v - m);
        return ss / static_cast<double>(x.size() - 1);
      };
      StudyCellSummary s;
      s.cell = config.cells[ci];
      s.criterion = config.criteria[k];
      s.replicates = R;
      s.sens_mean = mean(sens);
      s.sens_var = var(sens);
      s.sens_q025 = percentile(sens, 0.025);
      s.sens_median = percentile(sens, 0.5);
      s.sens_q975 = percentile(sens, 0.975);
      s.spec_mean = mean(spec);
      s.spec_var = var(spec);
      s.spec_q025 = percentile(spec, 0.025);
      s.spec_median = percentile(spec, 0.5);
      s.spec_q975 = percentile(spec, 0.975);
      s.youden_mean = s.sens_mean + s.spec_mean - 1.0;
      result.summary.push_back(s);
    }
  }
  return result;
}

}  // namespace fcut
