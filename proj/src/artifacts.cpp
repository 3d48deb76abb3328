#include "fcut/artifacts.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "fcut/csv.hpp"
#include "fcut/error.hpp"

namespace fcut::artifacts {

using csv::format_number;

namespace {

std::vector<double> to_vector(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InputError(std::string("artifact is missing array '") + key + "'");
  }
  return j.at(key).get<std::vector<double>>();
}

Json interval_json(const Interval& iv) { return Json::array({iv.lower, iv.upper}); }

}  // namespace

Json grid_to_json(const ProbabilityGrid& grid) {
  Json j;
  j["m"] = grid.size();
  j["points"] = std::vector<double>(grid.points().begin(), grid.points().end());
  return j;
}

GridPtr grid_from_json(const Json& j) {
  auto points = to_vector(j, "points");
  if (j.contains("m") && j.at("m").get<std::size_t>() != points.size()) {
    throw InputError("grid sidecar: m does not match the number of points");
  }
  return std::make_shared<const ProbabilityGrid>(std::move(points));
}

void write_curves(std::ostream& out, std::span<const QuantileCurve> curves, std::size_t m) {
  out << "subject_id";
  for (std::size_t k = 1; k <= m; ++k) out << ",rho_" << k;
  out << '\n';
  for (const auto& c : curves) {
    out << c.subject_id();
    for (double v : c.values()) out << ',' << format_number(v);
    out << '\n';
  }
}

std::vector<QuantileCurve> read_curves(std::istream& in, const std::string& name,
                                       const GridPtr& grid) {
  const auto header = csv::next_line(in, true);
  if (!header) throw ParseError(name, 1, "header", "file is empty");
  const auto cols = csv::split(*header);
  if (cols.empty() || cols[0] != "subject_id") {
    throw ParseError(name, 1, "header", "first column must be subject_id");
  }
  if (cols.size() != grid->size() + 1) {
    throw Error("grid mismatch: " + name + " has " + std::to_string(cols.size() - 1) +
                " quantile columns, grid has " + std::to_string(grid->size()) + " points");
  }
  std::vector<QuantileCurve> curves;
  std::size_t line_no = 1;
  while (auto line = csv::next_line(in)) {
    ++line_no;
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = csv::split(*line);
    if (fields.size() != cols.size()) {
      throw ParseError(name, line_no, "row", "expected " + std::to_string(cols.size()) + " fields");
    }
    std::vector<double> values(grid->size());
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto v = csv::parse_double(fields[k + 1]);
      if (!v) throw ParseError(name, line_no, cols[k + 1], "not a number: '" + fields[k + 1] + "'");
      values[k] = *v;
    }
    curves.emplace_back(fields[0], grid, std::move(values));
  }
  return curves;
}

Json ingest_report_to_json(const IngestReport& report, const IngestOptions& options) {
  Json j;
  j["options"] = {{"max_gap_minutes", options.day_filter.max_gap_minutes},
                  {"gap_mode", std::string(to_string(options.day_filter.gap_mode))},
                  {"min_retained_days", options.min_retained_days},
                  {"nominal_interval_minutes", options.nominal_interval_minutes}};
  Json subjects = Json::object();
  std::vector<std::string> excluded;
  for (const auto& [id, r] : report.subjects) {
    subjects[id] = {{"retained_days", r.retained_days},
                    {"dropped_days", r.dropped_days},
                    {"clamped", r.clamped},
                    {"deduped", r.deduped},
                    {"excluded", r.excluded},
                    {"records_read", r.records_read},
                    {"records_dropped_day_filter", r.dropped_records},
                    {"records_retained", r.retained_records}};
    if (r.excluded) excluded.push_back(id);
  }
  j["subjects"] = subjects;
  j["excluded"] = excluded;
  j["missing_series"] = report.missing_series;
  j["unlabeled"] = report.unlabeled;
  return j;
}

ThresholdFamily FrozenCutoff::family() const { return ThresholdFamily(grid, mu, sigma); }

Json frozen_to_json(const FrozenCutoff& f) {
  Json j;
  j["grid"] = std::vector<double>(f.grid->points().begin(), f.grid->points().end());
  j["mu"] = f.mu;
  j["sigma"] = f.sigma;
  j["c_hat"] = f.c_hat;
  j["criterion"] = std::string(to_string(f.criterion));
  j["center"] = std::string(to_string(f.center));
  j["sigma_mode"] = std::string(to_string(f.scale));
  if (f.smoothed_curve) j["smoothed_curve"] = *f.smoothed_curve;
  return j;
}

FrozenCutoff frozen_from_json(const Json& j) {
  FrozenCutoff f;
  f.grid = std::make_shared<const ProbabilityGrid>(to_vector(j, "grid"));
  f.mu = to_vector(j, "mu");
  f.sigma = to_vector(j, "sigma");
  if (!j.contains("c_hat") || !j.at("c_hat").is_number()) {
    throw InputError("frozen cut-off is missing 'c_hat'");
  }
  f.c_hat = j.at("c_hat").get<double>();
  f.criterion = parse_criterion(j.value("criterion", std::string("youden")));
  f.center = parse_center_mode(j.value("center", std::string("pooled-mean")));
  f.scale = parse_scale_mode(j.value("sigma_mode", std::string("unit")));
  if (j.contains("smoothed_curve")) f.smoothed_curve = to_vector(j, "smoothed_curve");
  f.family();  // validates lengths and sigma > 0
  return f;
}

Json result_to_json(const CutpointResult& r) {
  Json j;
  j["criterion"] = std::string(to_string(r.criterion));
  j["c_hat"] = r.c_hat;
  j["sensitivity"] = r.at_c_hat.sensitivity;
  j["specificity"] = r.at_c_hat.specificity;
  j["youden"] = r.at_c_hat.youden;
  j["auc"] = r.auc;
  Json sweep = Json::array();
  for (const auto& row : r.sweep) {
    sweep.push_back({{"c", row.c},
                     {"sensitivity", row.sensitivity},
                     {"specificity", row.specificity},
                     {"youden", row.youden}});
  }
  j["sweep"] = sweep;
  Json roc = Json::array();
  for (const auto& p : r.roc) roc.push_back({{"fpr", p.fpr}, {"tpr", p.tpr}});
  j["roc"] = roc;
  return j;
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows) {
  out << "c,sensitivity,specificity,youden\n";
  for (const auto& r : rows) {
    out << format_number(r.c) << ',' << format_number(r.sensitivity) << ','
        << format_number(r.specificity) << ',' << format_number(r.youden) << '\n';
  }
}

void write_roc(std::ostream& out, std::span<const RocPoint> roc) {
  out << "fpr,tpr\n";
  for (const auto& p : roc) out << format_number(p.fpr) << ',' << format_number(p.tpr) << '\n';
}

Json bootstrap_to_json(const BootstrapSummary& s) {
  Json j;
  j["criterion"] = std::string(to_string(s.criterion));
  j["c_hat"] = s.c_hat;
  j["ci"] = interval_json(s.ci);
  j["B"] = s.replicates;
  j["alpha"] = s.alpha;
  j["seed"] = s.seed;
  j["redraws"] = s.redraws;
  j["point"] = {{"sensitivity", s.point.sensitivity},
                {"specificity", s.point.specificity},
                {"youden", s.point.youden},
                {"auc", s.point_auc}};
  j["metric_cis"] = {{"sensitivity", interval_json(s.sensitivity_ci)},
                     {"specificity", interval_json(s.specificity_ci)},
                     {"youden", interval_json(s.youden_ci)},
                     {"auc", interval_json(s.auc_ci)}};
  j["c_hats"] = s.c_hats;
  return j;
}

void write_cutoff_band(std::ostream& out, const BootstrapSummary& s) {
  out << "rho,lower,upper\n";
  for (std::size_t k = 0; k < s.cutoff_lower.size(); ++k) {
    out << format_number(s.rho[k]) << ',' << format_number(s.cutoff_lower[k]) << ','
        << format_number(s.cutoff_upper[k]) << '\n';
  }
}

void write_sweep_band(std::ostream& out, const BootstrapSummary& s) {
  out << "c,sens_lo,sens_hi,spec_lo,spec_hi\n";
  for (std::size_t k = 0; k < s.c_grid.size(); ++k) {
    out << format_number(s.c_grid[k]) << ',' << format_number(s.sens_lower[k]) << ','
        << format_number(s.sens_upper[k]) << ',' << format_number(s.spec_lower[k]) << ','
        << format_number(s.spec_upper[k]) << '\n';
  }
}

void write_curve_values(std::ostream& out, std::span<const double> rho,
                        std::span<const double> values) {
  if (rho.size() != values.size()) throw Error("curve CSV: rho/value length mismatch");
  out << "rho,value\n";
  for (std::size_t k = 0; k < rho.size(); ++k) {
    out << format_number(rho[k]) << ',' << format_number(values[k]) << '\n';
  }
}

CurveValues read_curve_values(std::istream& in, const std::string& name) {
  const auto header = csv::next_line(in, true);
  if (!header || csv::split(*header) != std::vector<std::string>{"rho", "value"}) {
    throw ParseError(name, 1, "header", "expected header 'rho,value'");
  }
  CurveValues cv;
  std::size_t line_no = 1;
  while (auto line = csv::next_line(in)) {
    ++line_no;
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = csv::split(*line);
    if (fields.size() != 2) throw ParseError(name, line_no, "row", "expected 2 fields");
    const auto rho = csv::parse_double(fields[0]);
    const auto value = csv::parse_double(fields[1]);
    if (!rho) throw ParseError(name, line_no, "rho", "not a number");
    if (!value) throw ParseError(name, line_no, "value", "not a number");
    cv.rho.push_back(*rho);
    cv.value.push_back(*value);
  }
  return cv;
}

void write_study(std::ostream& out, const StudyResult& r) {
  out << "a,b,n,criterion,replicate,sensitivity,specificity\n";
  for (const auto& row : r.rows) {
    out << format_number(row.a) << ',' << format_number(row.b) << ',' << row.n << ','
        << to_string(row.criterion) << ',' << row.replicate + 1 << ','
        << format_number(row.sensitivity) << ',' << format_number(row.specificity) << '\n';
  }
}

void write_study_summary(std::ostream& out, const StudyResult& r) {
  out << "a,b,n,criterion,replicates,sens_mean,sens_var,sens_q025,sens_median,sens_q975,"
         "spec_mean,spec_var,spec_q025,spec_median,spec_q975,youden_mean\n";
  for (const auto& s : r.summary) {
    out << format_number(s.cell.a) << ',' << format_number(s.cell.b) << ',' << s.cell.n << ','
        << to_string(s.criterion) << ',' << s.replicates;
    for (double v : {s.sens_mean, s.sens_var, s.sens_q025, s.sens_median, s.sens_q975,
                     s.spec_mean, s.spec_var, s.spec_q025, s.spec_median, s.spec_q975,
                     s.youden_mean}) {
      out << ',' << format_number(v);
    }
    out << '\n';
  }
}

void write_indices(std::ostream& out, std::span<const IndexVector> rows) {
  out << "subject_id";
  for (const auto& c : index_columns()) out << ',' << c;
  out << '\n';
  for (const auto& r : rows) {
    out << r.subject_id;
    for (double v : index_values(r)) out << ',' << format_number(v);
    out << '\n';
  }
}

ScoreTable read_score_column(std::istream& in, const std::string& name,
                             const std::string& column) {
  const auto header = csv::next_line(in, true);
  if (!header) throw ParseError(name, 1, "header", "file is empty");
  const auto cols = csv::split(*header);
  if (cols.empty() || cols[0] != "subject_id") {
    throw ParseError(name, 1, "header", "first column must be subject_id");
  }
  const auto it = std::find(cols.begin(), cols.end(), column);
  if (it == cols.end() || it == cols.begin()) {
    throw ParseError(name, 1, "header", "no column named '" + column + "'");
  }
  const auto col = static_cast<std::size_t>(it - cols.begin());
  ScoreTable t;
  std::size_t line_no = 1;
  while (auto line = csv::next_line(in)) {
    ++line_no;
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = csv::split(*line);
    if (fields.size() != cols.size()) {
      throw ParseError(name, line_no, "row", "expected " + std::to_string(cols.size()) + " fields");
    }
    const auto v = csv::parse_double(fields[col]);
    if (!v) throw ParseError(name, line_no, column, "not a number: '" + fields[col] + "'");
    t.subject_ids.push_back(fields[0]);
    t.values.push_back(*v);
  }
  return t;
}

}  // namespace fcut::artifacts
