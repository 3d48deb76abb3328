#include "commands.hpp"

#include <iostream>
#include <map>
#include <sstream>

#include "fcut/csv.hpp"
#include "fcut/error.hpp"
#include "fcut/monotone_smooth.hpp"
#include "fcut/parallel.hpp"
#include "fcut/quantile_repr.hpp"

namespace fcut::cli {

namespace art = fcut::artifacts;
using art::Json;

namespace {

CohortLabels load_labels(Run& run, const std::string& path) {
  const auto f = run.read(path);
  auto in = f.stream();
  return parse_labels(in, path);
}

Json load_json(Run& run, const std::string& path) {
  const auto f = run.read(path);
  try {
    return Json::parse(f.bytes);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

GridPtr load_grid(Run& run, const std::string& curves, const std::string& grid_file) {
  const std::string path = grid_file.empty() ? grid_sidecar(curves) : grid_file;
  try {
    return art::grid_from_json(load_json(run, path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad grid file '" + path + "': " + e.what());
  }
}

std::vector<QuantileCurve> load_curves(Run& run, const std::string& path, const GridPtr& grid) {
  const auto f = run.read(path);
  auto in = f.stream();
  return art::read_curves(in, path, grid);
}

FamilyOptions family_options(const InputArgs& a) {
  FamilyOptions o;
  o.center = parse_center_mode(a.center);
  o.group = a.group;
  o.scale = parse_scale_mode(a.sigma);
  if (a.group != 0 && a.group != 1) throw InputError("--group must be 0 or 1");
  return o;
}

double parse_number(const std::string& text, const std::string& flag) {
  const auto v = csv::parse_double(text);
  if (!v) throw InputError(flag + ": '" + text + "' is not a number");
  return *v;
}

std::vector<std::string> split_colon(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  return parts;
}

// Labeled input ready for optimization.
struct Loaded {
  bool functional = false;
  LabeledSample sample;
  FamilyOptions family;
  std::optional<ThresholdFamily> fitted;
  ScoredSample scored;
  std::vector<std::string> ids;
  std::size_t unlabeled = 0;
  std::size_t missing = 0;
};

void note_missing(const CohortLabels& labels, const std::vector<std::string>& ids,
                  std::size_t& missing) {
  std::map<std::string, bool> present;
  for (const auto& id : ids) present[id] = true;
  for (const auto& [id, z] : labels) {
    if (!present.count(id)) ++missing;
  }
}

Loaded load_input(Run& run, const InputArgs& a, const ThresholdFamily* frozen = nullptr) {
  if (a.curves.empty() == a.scores.empty()) {
    throw InputError("give exactly one of --curves or --scores");
  }
  if (a.labels.empty()) throw InputError("--labels is required");
  Loaded out;
  out.family = family_options(a);
  if (!a.curves.empty()) {
    out.functional = true;
    const GridPtr grid = frozen ? frozen->grid() : load_grid(run, a.curves, a.grid_file);
    auto curves = load_curves(run, a.curves, grid);
    const auto labels = load_labels(run, a.labels);
    std::vector<QuantileCurve> kept;
    std::vector<int> z;
    std::vector<std::string> all_ids;
    for (auto& c : curves) {
      all_ids.push_back(c.subject_id());
      const auto it = labels.find(c.subject_id());
      if (it == labels.end()) {
        ++out.unlabeled;
        continue;
      }
      out.ids.push_back(c.subject_id());
      z.push_back(it->second);
      kept.push_back(std::move(c));
    }
    note_missing(labels, all_ids, out.missing);
    if (kept.empty()) throw Error("no labeled curves");
    out.sample = LabeledSample(grid, std::move(kept), std::move(z));
    out.fitted = frozen ? *frozen : estimate_family(out.sample, out.family);
    for (const auto& c : out.sample.curves) out.scored.scores.push_back(margin(c, *out.fitted));
    out.scored.labels = out.sample.labels;
  } else {
    if (a.column.empty()) throw InputError("--scores needs --column");
    const auto f = run.read(a.scores);
    auto in = f.stream();
    const auto table = art::read_score_column(in, a.scores, a.column);
    const auto labels = load_labels(run, a.labels);
    for (std::size_t i = 0; i < table.subject_ids.size(); ++i) {
      const auto it = labels.find(table.subject_ids[i]);
      if (it == labels.end()) {
        ++out.unlabeled;
        continue;
      }
      out.ids.push_back(table.subject_ids[i]);
      out.scored.scores.push_back(table.values[i]);
      out.scored.labels.push_back(it->second);
    }
    note_missing(labels, table.subject_ids, out.missing);
  }
  out.scored.direction = parse_direction(a.direction);
  if (out.functional && out.scored.direction != Direction::higher) {
    throw InputError("--direction applies to --scores only");
  }
  if (out.unlabeled > 0) {
    std::cerr << "note: " << out.unlabeled << " subject(s) without a label were skipped\n";
  }
  if (out.missing > 0) {
    std::cerr << "note: " << out.missing << " labeled subject(s) have no scores\n";
  }
  return out;
}

Json describe(const Loaded& d, const InputArgs& a) {
  Json j;
  j["input"] = d.functional ? "functional" : "scalar";
  j["n"] = d.scored.scores.size();
  j["cases"] = d.scored.cases();
  j["controls"] = d.scored.controls();
  j["skipped_unlabeled"] = d.unlabeled;
  if (d.functional) {
    j["grid_size"] = d.sample.grid->size();
    j["center"] = std::string(to_string(d.family.center));
    if (d.family.center == CenterMode::group_mean) j["group"] = d.family.group;
    j["sigma_mode"] = std::string(to_string(d.family.scale));
  } else {
    j["column"] = a.column;
    j["direction"] = std::string(to_string(d.scored.direction));
  }
  return j;
}

OptimizeOptions optimize_options(const FitArgs& a) {
  OptimizeOptions o;
  if (!a.range.empty()) {
    const auto p = split_colon(a.range);
    if (p.size() != 2) throw InputError("--range expects lower:upper");
    o.lower = parse_number(p[0], "--range");
    o.upper = parse_number(p[1], "--range");
    if (*o.lower > *o.upper) throw InputError("--range: lower exceeds upper");
  }
  if (!a.grid.empty()) {
    const auto p = split_colon(a.grid);
    if (p.size() != 3) throw InputError("--grid expects lower:upper:m");
    const double lo = parse_number(p[0], "--grid");
    const double hi = parse_number(p[1], "--grid");
    const double m = parse_number(p[2], "--grid");
    if (!(m >= 1) || m != static_cast<double>(static_cast<std::size_t>(m)) || lo > hi) {
      throw InputError("--grid: need lower <= upper and a positive integer m");
    }
    o.grid = linspace(lo, hi, static_cast<std::size_t>(m));
  }
  return o;
}

std::string to_csv(const auto& write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace

void cmd_ingest(Run& run, const IngestArgs& args) {
  IngestOptions opts = args.ingest;
  opts.day_filter.gap_mode = parse_gap_mode(args.gap_mode);
  if (args.grid_size < 1) throw InputError("--grid-size must be positive");
  const auto series_file = run.read(args.series);
  auto series_in = series_file.stream();
  Cohort cohort;
  if (!args.labels.empty()) {
    const auto labels_file = run.read(args.labels);
    auto labels_in = labels_file.stream();
    cohort = ingest_cohort(series_in, args.series, labels_in, args.labels, opts);
  } else {
    cohort = ingest_series(series_in, args.series, opts);
  }
  const auto grid =
      std::make_shared<const ProbabilityGrid>(ProbabilityGrid::interior(args.grid_size));
  std::vector<QuantileCurve> curves;
  for (const auto& s : cohort.series) {
    curves.push_back(empirical_quantile(s.subject_id, s.glucose(), grid));
  }
  run.write_text("curves.csv",
                 to_csv([&](std::ostream& o) { art::write_curves(o, curves, grid->size()); }));
  run.write_json("curves.grid.json", art::grid_to_json(*grid));
  auto report = art::ingest_report_to_json(cohort.report, opts);
  report["retained_subjects"] = curves.size();
  report["excluded_count"] = cohort.report.excluded_count();
  run.write_json("ingest_report.json", report);
  run.write_text("series_clean.csv",
                 to_csv([&](std::ostream& o) { write_series(o, cohort.series); }));
  std::cerr << "ingest: " << curves.size() << " subject(s) retained, "
            << cohort.report.excluded_count() << " excluded\n";
}

void cmd_fit(Run& run, const FitArgs& args) {
  const auto criterion = parse_criterion(args.criterion);
  const auto opts = optimize_options(args);
  if (args.smooth && args.input.curves.empty()) throw InputError("--smooth needs --curves");
  if (args.smooth_window % 2 == 0) throw InputError("--smooth-window must be odd");
  const auto data = load_input(run, args.input);
  const auto result = optimize(data.scored, criterion, opts);

  Json j = describe(data, args.input);
  Json r = art::result_to_json(result);
  r.erase("sweep");
  r.erase("roc");
  for (auto it = r.begin(); it != r.end(); ++it) j[it.key()] = it.value();
  if (opts.lower || opts.upper) j["range"] = {opts.lower.value_or(-INFINITY), opts.upper.value_or(INFINITY)};
  if (opts.grid) j["c_grid_points"] = opts.grid->size();

  if (data.functional) {
    art::FrozenCutoff frozen;
    frozen.grid = data.sample.grid;
    frozen.mu.assign(data.fitted->mu().begin(), data.fitted->mu().end());
    frozen.sigma.assign(data.fitted->sigma().begin(), data.fitted->sigma().end());
    frozen.c_hat = result.c_hat;
    frozen.criterion = criterion;
    frozen.center = data.family.center;
    frozen.scale = data.family.scale;
    const auto h = data.fitted->cutoff_curve(result.c_hat);
    const auto rho = frozen.grid->points();
    if (args.smooth) {
      const auto sm = monotone_smooth(h, {args.smooth_window});
      frozen.smoothed_curve = sm.values;
      j["smoothing"] = {{"window", args.smooth_window}, {"max_abs_change", sm.max_abs_change}};
      run.write_text("cutoff_curve_smoothed.csv", to_csv([&](std::ostream& o) {
                       art::write_curve_values(o, rho, sm.values);
                     }));
    }
    run.write_json("cutoff.json", art::frozen_to_json(frozen));
    run.write_text("cutoff_curve.csv",
                   to_csv([&](std::ostream& o) { art::write_curve_values(o, rho, h); }));
  }
  run.write_json("fit.json", j);
  run.write_text("sweep.csv", to_csv([&](std::ostream& o) { art::write_sweep(o, result.sweep); }));
  run.write_text("roc.csv", to_csv([&](std::ostream& o) { art::write_roc(o, result.roc); }));
}

void cmd_bootstrap(Run& run, const BootstrapArgs& args) {
  const auto criterion = parse_criterion(args.fit.criterion);
  const auto opts = optimize_options(args.fit);
  BootstrapConfig cfg;
  cfg.replicates = args.replicates;
  cfg.alpha = args.alpha;
  cfg.seed = run.global().seed;
  cfg.threads = run.global().threads;
  cfg.max_redraws = args.max_redraws;
  cfg.reference_points = args.reference_points;
  cfg.split_fraction = args.split_fraction;
  cfg.validate();
  const auto data = load_input(run, args.fit.input);
  if (cfg.split_fraction > 0.0 && !data.functional) {
    throw InputError("--split-fraction needs --curves");
  }
  const auto s = data.functional
                     ? bootstrap_cutpoint(data.sample, criterion, data.family, cfg, opts)
                     : bootstrap_scalar(data.scored, criterion, cfg, opts);
  Json j = describe(data, args.fit.input);
  const Json b = art::bootstrap_to_json(s);
  for (auto it = b.begin(); it != b.end(); ++it) j[it.key()] = it.value();
  if (data.functional) j["split_fraction"] = cfg.split_fraction;
  run.write_json("bootstrap.json", j);
  run.write_text("sweep_band.csv",
                 to_csv([&](std::ostream& o) { art::write_sweep_band(o, s); }));
  if (data.functional) {
    run.write_text("cutoff_band.csv",
                   to_csv([&](std::ostream& o) { art::write_cutoff_band(o, s); }));
  }
}

void cmd_classify(Run& run, const ClassifyArgs& args) {
  art::FrozenCutoff frozen;
  try {
    frozen = art::frozen_from_json(load_json(run, args.cutoff));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad cut-off file '" + args.cutoff + "': " + e.what());
  }
  // A grid beside the curves must agree with the frozen one.
  const std::string grid_path = args.grid_file.empty() ? grid_sidecar(args.curves) : args.grid_file;
  if (!args.grid_file.empty() || std::filesystem::exists(grid_path)) {
    const auto g = load_grid(run, args.curves, args.grid_file);
    if (!(*g == *frozen.grid)) {
      throw Error("grid mismatch: '" + grid_path + "' differs from the frozen cut-off grid");
    }
  }
  const auto curves = load_curves(run, args.curves, frozen.grid);

  double c = args.c.value_or(frozen.c_hat);
  std::optional<ThresholdFamily> family;
  if (args.use_smoothed) {
    if (!frozen.smoothed_curve) throw InputError("cut-off has no smoothed curve (fit with --smooth)");
    if (args.c) throw InputError("--c cannot be combined with --use-smoothed");
    family.emplace(frozen.grid, *frozen.smoothed_curve);
    c = 0.0;
  } else {
    family.emplace(frozen.family());
  }

  std::optional<CohortLabels> labels;
  if (!args.labels.empty()) labels = load_labels(run, args.labels);

  std::ostringstream pred;
  pred << "subject_id,margin,prediction" << (labels ? ",label" : "") << '\n';
  ScoredSample scored;
  std::size_t positives = 0;
  for (const auto& curve : curves) {
    const double m = margin(curve, *family);
    const int p = classify(m, c);
    positives += static_cast<std::size_t>(p);
    pred << curve.subject_id() << ',' << csv::format_number(m) << ',' << p;
    if (labels) {
      const auto it = labels->find(curve.subject_id());
      if (it != labels->end()) {
        pred << ',' << it->second;
        scored.scores.push_back(m);
        scored.labels.push_back(it->second);
      } else {
        pred << ',';
      }
    }
    pred << '\n';
  }
  Json j;
  j["c"] = c;
  j["curve"] = args.use_smoothed ? "smoothed" : "family";
  j["n"] = curves.size();
  j["positives"] = positives;
  if (labels) {
    j["labeled"] = scored.scores.size();
    if (scored.cases() > 0 && scored.controls() > 0) {
      const auto m = confusion_at(scored, c);
      j["sensitivity"] = m.sensitivity;
      j["specificity"] = m.specificity;
      j["youden"] = m.youden;
      j["auc"] = auc(scored);
    } else {
      j["metrics"] = "unavailable: labeled subjects do not include both classes";
    }
  }
  run.write_text("predictions.csv", pred.str());
  run.write_json("classify.json", j);
}

void cmd_simulate(Run& run, const SimulateArgs& args) {
  StudyConfig cfg;
  for (double a : args.a) {
    for (double b : args.b) {
      for (std::size_t n : args.n) cfg.cells.push_back({a, b, n});
    }
  }
  cfg.criteria.clear();
  for (const auto& c : args.criteria) cfg.criteria.push_back(parse_criterion(c));
  if (args.replicates == 0) throw InputError("-R must be positive");
  if (args.grid_size == 0) throw InputError("--grid-size must be positive");
  cfg.replicates = args.replicates;
  cfg.seed = run.global().seed;
  cfg.threads = run.global().threads;
  cfg.v = args.v;
  cfg.grid_points = args.grid_size;
  cfg.u2_mode = parse_u2_mode(args.u2_mode);
  cfg.shape_mode = parse_shape_mode(args.shape_mode);
  cfg.family.center = parse_center_mode(args.center);
  cfg.family.scale = parse_scale_mode(args.sigma);
  const auto r = run_study(cfg);
  run.write_text("study.csv", to_csv([&](std::ostream& o) { art::write_study(o, r); }));
  run.write_text("study_summary.csv",
                 to_csv([&](std::ostream& o) { art::write_study_summary(o, r); }));
  Json j;
  j["cells"] = cfg.cells.size();
  j["replicates"] = cfg.replicates;
  j["criteria"] = args.criteria;
  j["v"] = cfg.v;
  j["grid_size"] = cfg.grid_points;
  j["u2_mode"] = std::string(to_string(cfg.u2_mode));
  j["shape_mode"] = std::string(to_string(cfg.shape_mode));
  j["regenerations"] = r.regenerations;
  j["rows"] = r.rows.size();
  run.write_json("simulate.json", j);
}

void cmd_indices(Run& run, const IndicesArgs& args) {
  IngestOptions opts = args.ingest;
  opts.day_filter.gap_mode = parse_gap_mode(args.gap_mode);
  IndexOptions iopts = args.index;
  iopts.tar_inclusive = !args.tar_exclusive;
  const auto f = run.read(args.series);
  auto in = f.stream();
  std::vector<SubjectSeries> series;
  std::vector<std::string> excluded;
  if (args.no_day_filter) {
    series = parse_series(in, args.series).series;
    for (auto& s : series) s.nominal_interval_minutes = opts.nominal_interval_minutes;
  } else {
    auto cohort = ingest_series(in, args.series, opts);
    series = std::move(cohort.series);
    for (const auto& [id, r] : cohort.report.subjects) {
      if (r.excluded) excluded.push_back(id);
    }
  }
  std::vector<IndexVector> rows(series.size());
  std::vector<std::string> failures(series.size());
  parallel_for(series.size(), run.global().threads, [&](std::size_t i) {
    try {
      rows[i] = compute_indices(series[i], iopts);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });
  std::vector<IndexVector> ok;
  Json skipped = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (failures[i].empty()) {
      ok.push_back(rows[i]);
    } else {
      skipped.push_back({{"subject_id", series[i].subject_id}, {"reason", failures[i]}});
      std::cerr << "note: " << failures[i] << "\n";
    }
  }
  run.write_text("indices.csv", to_csv([&](std::ostream& o) { art::write_indices(o, ok); }));
  Json j;
  j["convention"] = "classic";
  j["options"] = {{"conga_horizon_hours", iopts.conga_horizon_hours},
                  {"tar_inclusive", iopts.tar_inclusive},
                  {"max_bridge_minutes", iopts.max_bridge_minutes},
                  {"day_filter", !args.no_day_filter}};
  j["columns"] = index_columns();
  Json subjects = Json::array();
  for (const auto& v : ok) {
    Json s;
    s["subject_id"] = v.subject_id;
    const auto values = index_values(v);
    for (std::size_t k = 0; k < values.size(); ++k) s[index_columns()[k]] = values[k];
    subjects.push_back(s);
  }
  j["subjects"] = subjects;
  j["excluded"] = excluded;
  j["skipped"] = skipped;
  run.write_json("indices.json", j);
}

void cmd_roc(Run& run, const RocArgs& args) {
  std::optional<ThresholdFamily> frozen;
  if (!args.cutoff.empty()) {
    if (args.input.curves.empty()) throw InputError("--cutoff needs --curves");
    try {
      frozen = art::frozen_from_json(load_json(run, args.cutoff)).family();
    } catch (const nlohmann::json::exception& e) {
      throw InputError("bad cut-off file '" + args.cutoff + "': " + e.what());
    }
  }
  const auto data = load_input(run, args.input, frozen ? &*frozen : nullptr);
  const auto roc = roc_curve(data.scored);
  Json j = describe(data, args.input);
  if (frozen) j["family"] = "frozen";
  const double a = auc(data.scored);
  j["auc"] = a;
  Json points = Json::array();
  for (const auto& p : roc) points.push_back({{"fpr", p.fpr}, {"tpr", p.tpr}});
  j["roc"] = points;
  run.write_json("roc.json", j);
  run.write_text("roc.csv", to_csv([&](std::ostream& o) { art::write_roc(o, roc); }));
}

}  // namespace fcut::cli
