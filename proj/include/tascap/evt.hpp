#pragma once

#include <vector>

#include "tascap/channel.hpp"

namespace tascap {

// Which analytical variant a caller asked for. Regimes are always explicit
// caller input; nothing here auto-detects IPLR vs TPLR from the parameters.
enum class Regime { exact, iplr, tplr, tplr_low };

// Gumbel location/scale pair for a given N. The family tag records whether
// the constants normalize the SINR maximum or the rate maximum ln(1+gamma).
struct GumbelConstants {
  double a_n;
  double b_n;
  int n_antennas;
  enum class Family { sinr, rate } family;
};

// Constants for the SINR maximum: a_N = F^-1(1-1/N), b_N = F^-1(1-1/(Ne)) - a_N.
GumbelConstants gumbel_constants_sinr(const SystemParams& params,
                                      int n_antennas);

// Constants for the rate maximum via the exact SINR quantile. n_antennas >= 2.
GumbelConstants gumbel_constants_rate(const SystemParams& params,
                                      int n_antennas);

// a_N + b_N * E0 (rate-family constants required). nats/s/Hz.
double asymptotic_mean_capacity(const GumbelConstants& constants);

// a_N - b_N * ln ln(1/epsilon). For epsilon = 1/e this is exactly a_N.
double asymptotic_outage_capacity(const GumbelConstants& constants,
                                  double epsilon);

// Closed-form constants for the interference-power-limited regime.
GumbelConstants iplr_constants(const SystemParams& params, int n_antennas);
double iplr_mean_capacity(const SystemParams& params, int n_antennas);
// Finite-N form uses b_N; the large-N form takes b_N -> 1.
double iplr_outage_capacity(const SystemParams& params, int n_antennas,
                            double epsilon, bool large_n = false);

// Closed-form constants for the transmit-power-limited regime (Lambert W
// route). Throws out_of_regime_error when the tail approximation produces a
// non-positive log argument.
GumbelConstants tplr_constants(const SystemParams& params, int n_antennas);
double tplr_mean_capacity(const SystemParams& params, int n_antennas);
double tplr_outage_capacity(const SystemParams& params, int n_antennas,
                            double epsilon);

// TPLR with negligible PU interference; requires c_q * N > 1.
GumbelConstants tplr_low_constants(const SystemParams& params, int n_antennas);
double tplr_low_mean_capacity(const SystemParams& params, int n_antennas);
double tplr_low_outage_capacity(const SystemParams& params, int n_antennas,
                                double epsilon);

// Numerical check that the SINR distribution sits in the Gumbel domain of
// attraction: (1-F)/f flattens out and its tail value approaches
// P_max * mean_g / noise.
struct MdaDiagnostics {
  std::vector<double> x_grid;
  std::vector<double> hazard_reciprocal;   // (1-F)/f at each grid point
  std::vector<double> derivative_of_ratio; // d/dx of the above
  double limit_estimate;                   // hazard reciprocal at the last point
  double expected_limit;
  bool derivative_ok;  // |derivative| <= 0.05 at the last point
  bool limit_ok;       // within 5% of expected_limit
};

MdaDiagnostics verify_mda_condition(const SystemParams& params,
                                    const std::vector<double>& x_grid);

// Same diagnostics for an arbitrary survival function; used for sanity
// checks against distributions with a known hazard (e.g. the exponential).
template <typename Survival>
MdaDiagnostics mda_diagnostics(Survival&& survival,
                               const std::vector<double>& x_grid,
                               double expected_limit);

namespace detail {
MdaDiagnostics mda_diagnostics_impl(const std::vector<double>& x_grid,
                                    double expected_limit,
                                    double (*survival)(double, const void*),
                                    const void* ctx);
}

template <typename Survival>
MdaDiagnostics mda_diagnostics(Survival&& survival,
                               const std::vector<double>& x_grid,
                               double expected_limit) {
  const auto thunk = [](double x, const void* ctx) {
    return (*static_cast<const std::remove_reference_t<Survival>*>(ctx))(x);
  };
  return detail::mda_diagnostics_impl(x_grid, expected_limit, thunk,
                                      &survival);
}

}  // namespace tascap
