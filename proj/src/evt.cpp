#include "tascap/evt.hpp"

#include <cmath>
#include <stdexcept>

#include "tascap/errors.hpp"
#include "tascap/exact.hpp"
#include "tascap/special_functions.hpp"

namespace tascap {
namespace {

double log_log_inv(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("outage threshold must satisfy 0 < epsilon < 1");
  }
  return std::log(std::log(1.0 / epsilon));
}

// c_p = e^{sigma^2/(P_p q)} Gamma(0, sigma^2/(P_p q)) / (P_p q).
double iplr_noise_factor(const SystemParams& params) {
  const double pp_q = params.p_p * params.mean_q;
  return upper_incomplete_gamma_zero_scaled(params.noise / pp_q) / pp_q;
}

double tplr_fraction(const SystemParams& params) {
  const double rho = params.q_limit / params.p_max;
  return -std::expm1(-rho / params.mean_h);  // c_q = 1 - e^{-rho/h}
}

}  // namespace

GumbelConstants gumbel_constants_sinr(const SystemParams& params,
                                      int n_antennas) {
  if (n_antennas < 2) {
    throw std::invalid_argument("gumbel constants require n_antennas >= 2");
  }
  const double n = n_antennas;
  const double a = sinr_quantile(1.0 - 1.0 / n, params);
  const double b = sinr_quantile(1.0 - 1.0 / (n * std::exp(1.0)), params) - a;
  return {a, b, n_antennas, GumbelConstants::Family::sinr};
}

GumbelConstants gumbel_constants_rate(const SystemParams& params,
                                      int n_antennas) {
  if (n_antennas < 2) {
    throw std::invalid_argument("gumbel constants require n_antennas >= 2");
  }
  const double n = n_antennas;
  const double a = std::log1p(sinr_quantile(1.0 - 1.0 / n, params));
  const double b =
      std::log1p(sinr_quantile(1.0 - 1.0 / (n * std::exp(1.0)), params)) - a;
  return {a, b, n_antennas, GumbelConstants::Family::rate};
}

double asymptotic_mean_capacity(const GumbelConstants& constants) {
  if (constants.family != GumbelConstants::Family::rate) {
    throw std::invalid_argument(
        "asymptotic_mean_capacity requires rate-family constants");
  }
  return constants.a_n + constants.b_n * kEulerGamma;
}

double asymptotic_outage_capacity(const GumbelConstants& constants,
                                  double epsilon) {
  if (constants.family != GumbelConstants::Family::rate) {
    throw std::invalid_argument(
        "asymptotic_outage_capacity requires rate-family constants");
  }
  return constants.a_n - constants.b_n * log_log_inv(epsilon);
}

GumbelConstants iplr_constants(const SystemParams& params, int n_antennas) {
  if (n_antennas < 1) {
    throw std::invalid_argument("iplr_constants requires n_antennas >= 1");
  }
  params.validate();
  const double k = iplr_noise_factor(params) * params.q_limit * params.mean_g /
                   params.mean_h;
  const double n = n_antennas;
  const double a = std::log1p(k * n);
  const double b = std::log((1.0 + k * n * std::exp(1.0)) / (1.0 + k * n));
  return {a, b, n_antennas, GumbelConstants::Family::rate};
}

double iplr_mean_capacity(const SystemParams& params, int n_antennas) {
  return iplr_constants(params, n_antennas).a_n + kEulerGamma;
}

double iplr_outage_capacity(const SystemParams& params, int n_antennas,
                            double epsilon, bool large_n) {
  const GumbelConstants c = iplr_constants(params, n_antennas);
  const double b = large_n ? 1.0 : c.b_n;
  return c.a_n - b * log_log_inv(epsilon);
}

GumbelConstants tplr_constants(const SystemParams& params, int n_antennas) {
  if (n_antennas < 1) {
    throw std::invalid_argument("tplr_constants requires n_antennas >= 1");
  }
  params.validate();
  const double pp_q = params.p_p * params.mean_q;
  const double snr_gain = params.p_max * params.mean_g / params.noise;
  const double int_gain = params.p_max * params.mean_g / pp_q;
  const double base_arg = n_antennas * tplr_fraction(params) *
                          std::exp(params.noise / pp_q) / (pp_q / params.noise);
  const double inner_a = 1.0 + snr_gain * lambert_w0(base_arg) - int_gain;
  const double inner_b =
      1.0 + snr_gain * lambert_w0(std::exp(1.0) * base_arg) - int_gain;
  if (!(inner_a > 0.0) || !(inner_b > 0.0)) {
    throw out_of_regime_error(
        "tplr_constants: tail approximation invalid at these parameters "
        "(non-positive log argument); larger N or Q >> P_max required");
  }
  const double a = std::log(inner_a);
  return {a, std::log(inner_b) - a, n_antennas, GumbelConstants::Family::rate};
}

double tplr_mean_capacity(const SystemParams& params, int n_antennas) {
  return asymptotic_mean_capacity(tplr_constants(params, n_antennas));
}

double tplr_outage_capacity(const SystemParams& params, int n_antennas,
                            double epsilon) {
  return asymptotic_outage_capacity(tplr_constants(params, n_antennas),
                                    epsilon);
}

GumbelConstants tplr_low_constants(const SystemParams& params, int n_antennas) {
  if (n_antennas < 1) {
    throw std::invalid_argument("tplr_low_constants requires n_antennas >= 1");
  }
  params.validate();
  const double snr_gain = params.p_max * params.mean_g / params.noise;
  const double scaled_n = tplr_fraction(params) * n_antennas;
  if (!(scaled_n > 1.0)) {
    throw out_of_regime_error(
        "tplr_low_constants: c_q * N must exceed 1 for the inner logarithm "
        "to be positive");
  }
  const double grow = snr_gain * std::log(scaled_n);
  const double a = std::log1p(grow);
  const double b = std::log1p(snr_gain / (1.0 + grow));
  return {a, b, n_antennas, GumbelConstants::Family::rate};
}

double tplr_low_mean_capacity(const SystemParams& params, int n_antennas) {
  return asymptotic_mean_capacity(tplr_low_constants(params, n_antennas));
}

double tplr_low_outage_capacity(const SystemParams& params, int n_antennas,
                                double epsilon) {
  return asymptotic_outage_capacity(tplr_low_constants(params, n_antennas),
                                    epsilon);
}

namespace detail {

MdaDiagnostics mda_diagnostics_impl(const std::vector<double>& x_grid,
                                    double expected_limit,
                                    double (*survival)(double, const void*),
                                    const void* ctx) {
  if (x_grid.size() < 2) {
    throw std::invalid_argument("mda diagnostics require at least 2 points");
  }
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0) || (i > 0 && x_grid[i] <= x_grid[i - 1])) {
      throw std::invalid_argument("mda grid must be positive and increasing");
    }
  }
  constexpr double kRelStep = 1e-5;
  const auto hazard_reciprocal = [&](double x) {
    const double h = x * kRelStep;
    const double s = survival(x, ctx);
    const double f = (survival(x - h, ctx) - survival(x + h, ctx)) / (2.0 * h);
    if (s <= 0.0 || !(f > 0.0) || !std::isfinite(f)) {
      throw numerical_error(
          "mda diagnostics: grid too short or survival underflowed; the "
          "numerical density is unusable at x = " + std::to_string(x));
    }
    return s / f;
  };

  MdaDiagnostics diag;
  diag.x_grid = x_grid;
  diag.expected_limit = expected_limit;
  diag.hazard_reciprocal.reserve(x_grid.size());
  diag.derivative_of_ratio.reserve(x_grid.size());
  for (double x : x_grid) {
    const double h = x * kRelStep;
    diag.hazard_reciprocal.push_back(hazard_reciprocal(x));
    diag.derivative_of_ratio.push_back(
        (hazard_reciprocal(x + h) - hazard_reciprocal(x - h)) / (2.0 * h));
  }
  diag.limit_estimate = diag.hazard_reciprocal.back();
  diag.derivative_ok = std::fabs(diag.derivative_of_ratio.back()) <= 0.05;
  diag.limit_ok = std::fabs(diag.limit_estimate - expected_limit) <=
                  0.05 * std::fabs(expected_limit);
  return diag;
}

}  // namespace detail

MdaDiagnostics verify_mda_condition(const SystemParams& params,
                                    const std::vector<double>& x_grid) {
  params.validate();
  const double scale = params.p_max * params.mean_g / params.noise;
  if (x_grid.empty() || x_grid.back() < 50.0 * scale) {
    throw std::invalid_argument(
        "mda grid must extend to at least 50 * P_max * mean_g / noise");
  }
  const auto survival = [&](double x) { return sinr_survival(x, params); };
  return mda_diagnostics(survival, x_grid, scale);
}

}  // namespace tascap
