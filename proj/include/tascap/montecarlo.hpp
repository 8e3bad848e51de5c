#pragma once

#include <cstdint>
#include <vector>

#include "tascap/channel.hpp"

namespace tascap {

struct CapacityEstimate {
  double point;       // nats/s/Hz
  double ci_low;
  double ci_high;
  double confidence;
  std::uint64_t trials;
};

// Trials are partitioned into fixed-size blocks; each block owns the RNG
// stream keyed by its block index, so results are bit-identical for any
// worker count.
struct SimulationPlan {
  SystemParams params;
  int n_antennas = 1;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  int workers = 1;
  double confidence = 0.99;
};

inline constexpr std::uint64_t kTrialsPerBlock = 1u << 16;

// R_max = ln(1 + gamma_max) for every trial, in block order.
std::vector<double> max_rate_samples(const SimulationPlan& plan);

// Sample mean of R_max with a normal-approximation confidence interval.
CapacityEstimate estimate_mean_capacity(const SimulationPlan& plan);

// Empirical epsilon-quantile of R_max (lower order statistic) with binomial
// order-statistic confidence bounds.
CapacityEstimate estimate_outage_capacity(const SimulationPlan& plan,
                                          double epsilon);

// Lower order statistic at index ceil(eps * n) of the sorted samples.
double empirical_quantile(std::vector<double> samples, double epsilon);

// Right-continuous empirical CDF evaluated on a grid.
std::vector<double> empirical_cdf(const std::vector<double>& samples,
                                  const std::vector<double>& x_grid);

// Inverse standard normal CDF (used for the confidence intervals).
double inverse_normal_cdf(double p);

}  // namespace tascap
