#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fcut/bootstrap_inference.hpp"
#include "fcut/cgm_ingest.hpp"
#include "fcut/cutpoint_core.hpp"
#include "fcut/glycemic_indices.hpp"
#include "fcut/simulation.hpp"
#include "fcut/threshold_family.hpp"

// File formats exchanged between pipeline stages. JSON keys are written in a
// fixed order so that identical results serialize to identical bytes.
namespace fcut::artifacts {

using Json = nlohmann::ordered_json;

// Grid sidecar: {"m": m, "points": [...]}
Json grid_to_json(const ProbabilityGrid& grid);
GridPtr grid_from_json(const Json& j);

// Wide curves CSV: subject_id,rho_1,...,rho_m
void write_curves(std::ostream& out, std::span<const QuantileCurve> curves, std::size_t m);
// Throws fcut::Error("grid mismatch ...") when the column count disagrees
// with the grid.
std::vector<QuantileCurve> read_curves(std::istream& in, const std::string& name,
                                       const GridPtr& grid);

Json ingest_report_to_json(const IngestReport& report, const IngestOptions& options);

// Frozen cut-off: the unit shipped to external validation.
struct FrozenCutoff {
  GridPtr grid;
  std::vector<double> mu;
  std::vector<double> sigma;
  double c_hat = 0.0;
  Criterion criterion = Criterion::youden;
  CenterMode center = CenterMode::pooled_mean;
  ScaleMode scale = ScaleMode::unit;
  std::optional<std::vector<double>> smoothed_curve;

  ThresholdFamily family() const;
};

Json frozen_to_json(const FrozenCutoff& f);
FrozenCutoff frozen_from_json(const Json& j);

Json result_to_json(const CutpointResult& r);
void write_sweep(std::ostream& out, std::span<const SweepRow> rows);
void write_roc(std::ostream& out, std::span<const RocPoint> roc);

Json bootstrap_to_json(const BootstrapSummary& s);
void write_cutoff_band(std::ostream& out, const BootstrapSummary& s);
void write_sweep_band(std::ostream& out, const BootstrapSummary& s);

// rho,value
void write_curve_values(std::ostream& out, std::span<const double> rho,
                        std::span<const double> values);
struct CurveValues {
  std::vector<double> rho;
  std::vector<double> value;
};
CurveValues read_curve_values(std::istream& in, const std::string& name);

void write_study(std::ostream& out, const StudyResult& r);
void write_study_summary(std::ostream& out, const StudyResult& r);

void write_indices(std::ostream& out, std::span<const IndexVector> rows);

// Generic scores table: subject_id plus named numeric columns.
struct ScoreTable {
  std::vector<std::string> subject_ids;
  std::vector<double> values;
};
ScoreTable read_score_column(std::istream& in, const std::string& name,
                             const std::string& column);

}  // namespace fcut::artifacts
