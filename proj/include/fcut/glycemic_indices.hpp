#pragma once

#include <string>
#include <vector>

#include "fcut/cgm_ingest.hpp"

namespace fcut {

struct IndexOptions {
  double conga_horizon_hours = 1.0;
  bool tar_inclusive = true;  // TAR counts x >= threshold (x > threshold when false)
  // Consecutive samples further apart than this are not bridged by the
  // time-weighted mean.
  double max_bridge_minutes = 120.0;
};

struct BasicIndices {
  double mg = 0.0;         // mean glucose, mg/dL
  double sd = 0.0;         // sample SD (n - 1), mg/dL
  double cv = 0.0;         // percent
  double iqr = 0.0;        // mg/dL
  double tar140 = 0.0;     // fraction
  double tar180 = 0.0;     // fraction
  double auc_index = 0.0;  // time-weighted mean glucose, mg/dL
};

// Throws with fewer than 2 records.
BasicIndices basic_indices(const SubjectSeries& series, const IndexOptions& options = {});

// Mean amplitude of excursions between consecutive interior turning points
// that exceed one sample SD of the series. Throws with fewer than 3 records.
double mage(const SubjectSeries& series);

// Sample SD of G(t) - G(t - horizon), pairing each sample with the nearest
// sample to t - horizon within half the nominal interval. Throws when no
// pair exists.
double conga(const SubjectSeries& series, double horizon_hours = 1.0);

struct IndexVector {
  std::string subject_id;
  BasicIndices basic;
  double mage = 0.0;
  double conga = 0.0;
};

IndexVector compute_indices(const SubjectSeries& series, const IndexOptions& options = {});

// Column order used by the indices CSV.
const std::vector<std::string>& index_columns();
std::vector<double> index_values(const IndexVector& v);

}  // namespace fcut
