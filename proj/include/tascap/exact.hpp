#pragma once

#include "tascap/channel.hpp"

namespace tascap {

struct QuantileSolverConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  int max_bracket_doublings = 200;
};

// Survival function 1 - F of the per-antenna SINR, evaluated as the sum of
// two positive terms. Accurate deep into the tail where 1 - F underflows a
// naive F-then-subtract evaluation.
double sinr_survival(double x, const SystemParams& params);

// CDF of the per-antenna SINR. Returns 0 for x <= 0, clamped to [0, 1].
double sinr_cdf(double x, const SystemParams& params);

// CDF of the selected-antenna SINR: [sinr_cdf(x)]^N.
double sinr_cdf_max(double x, const SystemParams& params, int n_antennas);

// Survival of the selected-antenna SINR, 1 - F^N, cancellation-free.
double sinr_survival_max(double x, const SystemParams& params, int n_antennas);

// Inverse CDF by geometric bracketing plus bisection, solved in survival
// space so quantiles arbitrarily close to 1 stay well conditioned.
double sinr_quantile(double p, const SystemParams& params,
                     const QuantileSolverConfig& cfg = {});

// E[ln(1 + gamma_max)] by adaptive quadrature of (1 - F_max(x)) / (1 + x),
// absolute tolerance 1e-8. nats/s/Hz.
double exact_mean_capacity(const SystemParams& params, int n_antennas);

// epsilon-outage capacity ln(1 + F^-1(epsilon^(1/N))). nats/s/Hz.
double exact_outage_capacity(const SystemParams& params, int n_antennas,
                             double epsilon);

}  // namespace tascap
