#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fcut/error.hpp"

namespace {

using namespace fcut::cli;

void add_input_flags(CLI::App* cmd, InputArgs& a, bool with_family = true) {
  cmd->add_option("--curves", a.curves, "quantile curves CSV (grid read from <stem>.grid.json)");
  cmd->add_option("--grid-file", a.grid_file, "grid JSON overriding the curves sidecar");
  cmd->add_option("--labels", a.labels, "subject_id,label CSV")->required();
  cmd->add_option("--scores", a.scores, "scores CSV for a scalar biomarker");
  cmd->add_option("--column", a.column, "score column to use with --scores");
  cmd->add_option("--direction", a.direction, "scalar scores: higher|lower is positive");
  if (!with_family) return;
  cmd->add_option("--center", a.center, "pooled-mean|group-mean|pointwise-median");
  cmd->add_option("--group", a.group, "label defining the center in group-mean mode");
  cmd->add_option("--sigma", a.sigma, "unit|pointwise-sd");
}

void add_fit_flags(CLI::App* cmd, FitArgs& a) {
  add_input_flags(cmd, a.input);
  cmd->add_option("--criterion", a.criterion, "youden|max_sensitivity|max_specificity");
  cmd->add_option("--range", a.range, "restrict c to lower:upper");
  cmd->add_option("--grid", a.grid, "search c on lower:upper:m instead of the exact set");
}

void add_day_filter_flags(CLI::App* cmd, fcut::IngestOptions& o, std::string& gap_mode) {
  cmd->add_option("--max-gap", o.day_filter.max_gap_minutes, "minutes of missing data per day");
  cmd->add_option("--gap-mode", gap_mode, "single|cumulative");
  cmd->add_option("--skip-factor", o.day_filter.skip_factor,
                  "gaps above this multiple of the interval count as missing");
  cmd->add_option("--min-days", o.min_retained_days, "minimum retained days per subject");
  cmd->add_option("--interval", o.nominal_interval_minutes, "nominal sampling interval (minutes)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional cut-off curves for distribution-valued biomarkers"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "random seed");
  app.add_option("--threads", global.threads, "worker threads (0 = all cores)");
  app.add_option("--out", global.out, "output directory");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "CGM series to quantile curves");
  c_ingest->add_option("--series", ingest.series, "subject_id,timestamp,glucose CSV")->required();
  c_ingest->add_option("--labels", ingest.labels, "subject_id,label CSV");
  c_ingest->add_option("--grid-size", ingest.grid_size, "quantile grid points");
  add_day_filter_flags(c_ingest, ingest.ingest, ingest.gap_mode);

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "estimate the optimal cut-off");
  add_fit_flags(c_fit, fit);
  c_fit->add_flag("--smooth", fit.smooth, "add a monotone-smoothed cut-off curve");
  c_fit->add_option("--smooth-window", fit.smooth_window, "odd moving-average width");

  BootstrapArgs boot;
  auto* c_boot = app.add_subcommand("bootstrap", "bootstrap confidence intervals and bands");
  add_fit_flags(c_boot, boot.fit);
  c_boot->add_option("-B,--replicates", boot.replicates, "bootstrap replicates");
  c_boot->add_option("--alpha", boot.alpha, "1 - confidence level");
  c_boot->add_option("--max-redraws", boot.max_redraws, "single-class resamples tolerated");
  c_boot->add_option("--reference-points", boot.reference_points, "c grid for the sweep bands");
  c_boot->add_option("--split-fraction", boot.split_fraction,
                     "share of each resample used to estimate the family");

  ClassifyArgs cls;
  double c_override = 0.0;
  auto* c_cls = app.add_subcommand("classify", "apply a frozen cut-off to new curves");
  c_cls->add_option("--cutoff", cls.cutoff, "cutoff.json from fit")->required();
  c_cls->add_option("--curves", cls.curves, "quantile curves CSV")->required();
  c_cls->add_option("--grid-file", cls.grid_file, "grid JSON overriding the curves sidecar");
  c_cls->add_option("--labels", cls.labels, "optional labels for metrics");
  auto* c_opt = c_cls->add_option("--c", c_override, "override the frozen c");
  c_cls->add_flag("--use-smoothed", cls.use_smoothed, "classify against the smoothed curve");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "synthetic benchmark study");
  c_sim->add_option("--a", sim.a, "location shifts")->delimiter(',');
  c_sim->add_option("--b", sim.b, "shape effects")->delimiter(',');
  c_sim->add_option("--n", sim.n, "sample sizes")->delimiter(',');
  c_sim->add_option("-R,--replicates", sim.replicates, "replicates per cell");
  c_sim->add_option("--criteria", sim.criteria, "criteria")->delimiter(',');
  c_sim->add_option("--v", sim.v, "U2 scale");
  c_sim->add_option("--grid-size", sim.grid_size, "quantile grid points");
  c_sim->add_option("--u2-mode", sim.u2_mode, "literal|rho-scaled");
  c_sim->add_option("--shape-mode", sim.shape_mode, "literal|shared");
  c_sim->add_option("--center", sim.center, "pooled-mean|group-mean|pointwise-median");
  c_sim->add_option("--sigma", sim.sigma, "unit|pointwise-sd");

  IndicesArgs idx;
  auto* c_idx = app.add_subcommand("indices", "classic glycemic indices");
  c_idx->add_option("--series", idx.series, "subject_id,timestamp,glucose CSV")->required();
  add_day_filter_flags(c_idx, idx.ingest, idx.gap_mode);
  c_idx->add_flag("--no-day-filter", idx.no_day_filter, "use every record");
  c_idx->add_option("--conga-hours", idx.index.conga_horizon_hours, "CONGA horizon");
  c_idx->add_option("--max-bridge", idx.index.max_bridge_minutes,
                    "longest gap bridged by the time-weighted mean (minutes)");
  c_idx->add_flag("--tar-exclusive", idx.tar_exclusive, "TAR counts x > threshold");

  RocArgs roc;
  auto* c_roc = app.add_subcommand("roc", "ROC curve and AUC");
  add_input_flags(c_roc, roc.input);
  c_roc->add_option("--cutoff", roc.cutoff, "score margins against a frozen family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::string> args(argv, argv + argc);
  auto* sub = app.get_subcommands().front();
  try {
    Run run(sub->get_name(), args, global);
    if (sub == c_ingest) cmd_ingest(run, ingest);
    if (sub == c_fit) cmd_fit(run, fit);
    if (sub == c_boot) cmd_bootstrap(run, boot);
    if (sub == c_cls) {
      if (c_opt->count() > 0) cls.c = c_override;
      cmd_classify(run, cls);
    }
    if (sub == c_sim) cmd_simulate(run, sim);
    if (sub == c_idx) cmd_indices(run, idx);
    if (sub == c_roc) cmd_roc(run, roc);
    run.finish();
  } catch (const fcut::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fcut::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
