#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "tascap/channel.hpp"

namespace tascap {

// dB <-> linear, power scale.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// One experiment as described by a config file. Composite ratios (INR,
// SIR_Q, SIR_P, SNR_Q, SNR_P, PQR) are expanded to primitive parameters at
// parse time; specifying a ratio whose two primitives are both already
// pinned is a conflict and fails the parse.
struct ExperimentConfig {
  SystemParams params{1.0, 1.0, 1.0, 0.1, 1.0, 1.0, 1.0};
  std::vector<int> antenna_counts;

  std::string sweep_var;  // "Q", "P_max" or "N"
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 0;

  std::vector<std::string> methods;  // exact, evt, iplr, tplr, tplr_low, mc
  std::string metric = "mean";       // mean | outage
  double epsilon = 0.1;

  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  int workers = 1;
  bool unit_db = true;
  std::string out_path;

  // verify-mode extras
  std::string distribution = "sinr";  // sinr | exponential
  double grid_max = 0.0;              // 0 = auto
  int grid_points = 120;

  // Sweep grid in the config's unit (dB points for Q/P_max when unit=db,
  // antenna counts for N).
  std::vector<double> sweep_grid() const;

  // Params with the swept variable replaced by the given grid value.
  SystemParams params_at(double sweep_value) const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace tascap
