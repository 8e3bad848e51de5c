#pragma once

#include <ostream>
#include <string>

#include "tascap/config.hpp"

namespace tascap {

// Fixed CSV schema:
//   sweep_var,sweep_value,n_antennas,method,value_nats,ci_low,ci_high,status,reason
// Floats carry 12 significant digits; CI cells are empty for analytic rows.
// Out-of-regime evaluations become rows with an empty value and a reason,
// never an aborted sweep.
void run_experiment(const ExperimentConfig& config, std::ostream& csv_out,
                    std::ostream& diag_out);

// Human-readable MDA tail report; returns true when both tail conditions
// hold.
bool verify_report(const ExperimentConfig& config, std::ostream& out);

// Single capacity value for one (params, N, method) triple; the epsilon
// toggle selects outage instead of mean capacity.
double point_capacity(const SystemParams& params, int n_antennas,
                      const std::string& method, bool outage, double epsilon,
                      std::uint64_t trials, std::uint64_t seed, int workers);

// 12-significant-digit float formatting used for every CSV cell.
std::string format_csv_number(double v);

}  // namespace tascap
