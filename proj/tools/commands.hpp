#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcut/bootstrap_inference.hpp"
#include "fcut/cgm_ingest.hpp"
#include "fcut/glycemic_indices.hpp"
#include "fcut/simulation.hpp"
#include "run_io.hpp"

namespace fcut::cli {

struct IngestArgs {
  std::string series;
  std::string labels;
  std::size_t grid_size = 100;
  IngestOptions ingest;
  std::string gap_mode = "cumulative";
};

// Where per-subject scores come from: functional curves or one column of a
// scores table (e.g. an index from `indices`).
struct InputArgs {
  std::string curves;
  std::string grid_file;
  std::string labels;
  std::string scores;
  std::string column;
  std::string direction = "higher";
  std::string center = "pooled-mean";
  int group = 0;
  std::string sigma = "unit";
};

struct FitArgs {
  InputArgs input;
  std::string criterion = "youden";
  std::string range;  // l:u
  std::string grid;   // l:u:m
  bool smooth = false;
  std::size_t smooth_window = 1;
};

struct BootstrapArgs {
  FitArgs fit;
  std::size_t replicates = 1000;
  double alpha = 0.05;
  std::size_t max_redraws = 100;
  std::size_t reference_points = 512;
  double split_fraction = 0.0;
};

struct ClassifyArgs {
  std::string cutoff;
  std::string curves;
  std::string grid_file;
  std::string labels;
  std::optional<double> c;
  bool use_smoothed = false;
};

struct SimulateArgs {
  std::vector<double> a{0.0};
  std::vector<double> b{0.0};
  std::vector<std::size_t> n{100};
  std::size_t replicates = 1000;
  std::vector<std::string> criteria{"youden", "max_sensitivity", "max_specificity"};
  double v = 2.0;
  std::size_t grid_size = 100;
  std::string u2_mode = "literal";
  std::string shape_mode = "literal";
  std::string center = "pooled-mean";
  std::string sigma = "unit";
};

struct IndicesArgs {
  std::string series;
  IngestOptions ingest;
  std::string gap_mode = "cumulative";
  bool no_day_filter = false;
  IndexOptions index;
  bool tar_exclusive = false;
};

struct RocArgs {
  InputArgs input;
  std::string cutoff;
};

void cmd_ingest(Run& run, const IngestArgs& args);
void cmd_fit(Run& run, const FitArgs& args);
void cmd_bootstrap(Run& run, const BootstrapArgs& args);
void cmd_classify(Run& run, const ClassifyArgs& args);
void cmd_simulate(Run& run, const SimulateArgs& args);
void cmd_indices(Run& run, const IndicesArgs& args);
void cmd_roc(Run& run, const RocArgs& args);

}  // namespace fcut::cli
