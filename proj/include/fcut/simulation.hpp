#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fcut/cutpoint_core.hpp"
#include "fcut/normal.hpp"
#include "fcut/threshold_family.hpp"

namespace fcut {

// How the U2 * v term enters the curve: as a constant (literal) or scaled by rho.
enum class U2Mode { literal, rho_scaled };

U2Mode parse_u2_mode(std::string_view name);
std::string_view to_string(U2Mode mode);

// How Z enters the shape term: (5 + b) Z U3 Q0 (literal, controls are flat)
// or (5 + b Z) U3 Q0 (shared, both groups carry the shape and b only
// scales cases).
enum class ShapeMode { literal, shared };

ShapeMode parse_shape_mode(std::string_view name);
std::string_view to_string(ShapeMode mode);

// Synthetic distributional data:
//   Q(rho) = a Z + U1 + U2 v + (5 + b) Z U3 Q0(rho)
// with Z ~ Ber(0.5), U1, U2 ~ U(-1, 1), U3 ~ U(0.8, 1.2) and Q0 the quantile
// function of a truncated normal.
struct DgpParams {
  double a = 0.0;
  double b = 0.0;
  double v = 2.0;
  std::size_t n = 100;
  GridPtr grid;
  std::uint64_t seed = 0;
  TruncNormalSpec base;
  U2Mode u2_mode = U2Mode::literal;
  ShapeMode shape_mode = ShapeMode::literal;

  void validate() const;
};

struct SubjectDraw {
  int z = 0;
  double u1 = 0.0, u2 = 0.0, u3 = 1.0;
};

// Evaluates the formula for one subject's draws on a precomputed Q0 grid.
std::vector<double> dgp_curve(const DgpParams& params, const SubjectDraw& draw,
                              std::span<const double> q0);

// Q0 evaluated on every grid point.
std::vector<double> base_quantiles(const DgpParams& params);

struct GeneratedCohort {
  LabeledSample sample;
  std::vector<SubjectDraw> draws;
  std::size_t regenerations = 0;  // single-class cohorts redrawn
};

// Cohort stream = derive_seed(seed, {attempt}); per subject the draws are
// taken in the order Z, U1, U2, U3. Single-class cohorts are regenerated.
GeneratedCohort generate(const DgpParams& params);

struct StudyCell {
  double a = 0.0;
  double b = 0.0;
  std::size_t n = 100;
};

struct StudyConfig {
  std::vector<StudyCell> cells;
  std::vector<Criterion> criteria{Criterion::youden, Criterion::max_sensitivity,
                                  Criterion::max_specificity};
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  double v = 2.0;
  std::size_t grid_points = 100;
  U2Mode u2_mode = U2Mode::literal;
  ShapeMode shape_mode = ShapeMode::literal;
  FamilyOptions family;
  unsigned threads = 1;
};

struct StudyRow {
  double a = 0.0;
  double b = 0.0;
  std::size_t n = 0;
  Criterion criterion = Criterion::youden;
  std::size_t replicate = 0;
  double sensitivity = 0.0;
  double specificity = 0.0;
};

struct StudyCellSummary {
  StudyCell cell;
  Criterion criterion = Criterion::youden;
  std::size_t replicates = 0;
  double sens_mean = 0, sens_var = 0, sens_q025 = 0, sens_median = 0, sens_q975 = 0;
  double spec_mean = 0, spec_var = 0, spec_q025 = 0, spec_median = 0, spec_q975 = 0;
  double youden_mean = 0;
};

struct StudyResult {
  std::vector<StudyRow> rows;  // cell-major, then replicate, then criterion
  std::vector<StudyCellSummary> summary;
  std::size_t regenerations = 0;
};

// For each cell and replicate: generate a cohort from stream (seed, cell,
// replicate), fit every criterion on it and record in-sample metrics.
StudyResult run_study(const StudyConfig& config);

}  // namespace fcut
