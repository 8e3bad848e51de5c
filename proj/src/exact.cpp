#include "tascap/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tascap/errors.hpp"
#include "tascap/special_functions.hpp"

namespace tascap {
namespace {

// 15-point Kronrod extension of 7-point Gauss.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double a, b, value, error;
};

PanelResult gauss_kronrod(const std::function<double(double)>& f, double a,
                          double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kXgk[i]);
    fv[14 - i] = f(center + half * kXgk[i]);
  }
  fv[7] = f(center);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 7; ++i) {
    kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  kronrod += kWgk[7] * fv[7];
  gauss += kWg[3] * fv[7];
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double abs_tol) {
  // Seed with geometrically spaced panels toward the left endpoint so a
  // feature much narrower than b - a cannot fall between the sample points
  // of a single wide panel and fake instant convergence.
  std::vector<double> cuts{b};
  for (double x = 0.5 * (b - a); x > 1e-9 && x > 1e-14 * (b - a); x *= 0.5) {
    cuts.push_back(a + x);
  }
  cuts.push_back(a);
  std::vector<PanelResult> panels;
  panels.reserve(cuts.size() - 1);
  for (std::size_t i = cuts.size() - 1; i > 0; --i) {
    panels.push_back(gauss_kronrod(f, cuts[i], cuts[i - 1]));
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double total_error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total_error += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (total_error <= abs_tol) {
      double sum = 0.0;
      for (const auto& p : panels) sum += p.value;
      return sum;
    }
    const PanelResult split = panels[worst];
    const double mid = 0.5 * (split.a + split.b);
    panels[worst] = gauss_kronrod(f, split.a, mid);
    panels.push_back(gauss_kronrod(f, mid, split.b));
  }
  throw numerical_error("adaptive quadrature did not converge");
}

}  // namespace

double sinr_survival(double x, const SystemParams& params) {
  params.validate();
  if (!(x > 0.0)) return 1.0;
  const double pp_q = params.p_p * params.mean_q;
  const double gp = params.mean_g * params.p_max;
  const double k = params.q_limit * params.mean_g / (x * pp_q * params.mean_h);
  // Exponent of the paired e^A * Gamma(0, B) factor. B expands to
  // A + Q/(h P_max) + x sigma^2/(g P_max), so A - B is available without
  // forming either large exponent.
  const double b_arg = (x / gp + 1.0 / pp_q) *
                       (params.q_limit * params.mean_g / (x * params.mean_h) +
                        params.noise);
  const double a_minus_b =
      -(params.q_limit / (params.mean_h * params.p_max) + x * params.noise / gp);
  const double term1 =
      k * std::exp(a_minus_b) * upper_incomplete_gamma_zero_scaled(b_arg);
  const double term2 = -std::expm1(-params.q_limit / (params.mean_h * params.p_max)) *
                       gp / (x * pp_q + gp) * std::exp(-x * params.noise / gp);
  return std::fmin(term1 + term2, 1.0);
}

double sinr_cdf(double x, const SystemParams& params) {
  return std::clamp(1.0 - sinr_survival(x, params), 0.0, 1.0);
}

double sinr_cdf_max(double x, const SystemParams& params, int n_antennas) {
  if (n_antennas < 1) {
    throw std::invalid_argument("sinr_cdf_max requires n_antennas >= 1");
  }
  return std::pow(sinr_cdf(x, params), n_antennas);
}

double sinr_survival_max(double x, const SystemParams& params, int n_antennas) {
  if (n_antennas < 1) {
    throw std::invalid_argument("sinr_survival_max requires n_antennas >= 1");
  }
  const double s = sinr_survival(x, params);
  if (s >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n_antennas) * std::log1p(-s));
}

double sinr_quantile(double p, const SystemParams& params,
                     const QuantileSolverConfig& cfg) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("sinr_quantile requires 0 < p < 1");
  }
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
    throw std::invalid_argument("quantile tolerances must be positive");
  }
  const double target = 1.0 - p;  // survival value at the quantile
  double lo = params.q_limit * params.mean_g / params.mean_h;
  double hi = lo;
  int budget = cfg.max_bracket_doublings;
  while (sinr_survival(hi, params) > target) {
    hi *= 2.0;
    if (--budget < 0) {
      throw numerical_error("sinr_quantile: upper bracket not found");
    }
  }
  budget = cfg.max_bracket_doublings;
  while (sinr_survival(lo, params) < target) {
    lo *= 0.5;
    if (--budget < 0) {
      throw numerical_error("sinr_quantile: lower bracket not found");
    }
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double s = sinr_survival(mid, params);
    if (std::fabs(s - target) <= cfg.abs_tol || (hi - lo) <= cfg.rel_tol * mid) {
      return mid;
    }
    if (s > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double exact_mean_capacity(const SystemParams& params, int n_antennas) {
  if (n_antennas < 1) {
    throw std::invalid_argument("exact_mean_capacity requires n_antennas >= 1");
  }
  params.validate();
  // Truncate where the maximum's survival drops below 1e-12; the discarded
  // tail contributes less than 1e-12 * ln-tail, inside the error budget.
  double x_cut = params.q_limit * params.mean_g / params.mean_h;
  int budget = 400;
  while (sinr_survival_max(x_cut, params, n_antennas) > 1e-12) {
    x_cut *= 2.0;
    if (--budget < 0) {
      throw numerical_error("exact_mean_capacity: tail cutoff not found");
    }
  }
  const auto integrand = [&](double x) {
    return sinr_survival_max(x, params, n_antennas) / (1.0 + x);
  };
  return adaptive_quadrature(integrand, 0.0, x_cut, 1e-8);
}

double exact_outage_capacity(const SystemParams& params, int n_antennas,
                             double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("exact_outage_capacity requires 0 < epsilon < 1");
  }
  const double p = std::pow(epsilon, 1.0 / n_antennas);
  return std::log1p(sinr_quantile(p, params));
}

}  // namespace tascap
