#include "tascap/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tascap/errors.hpp"

namespace tascap {
namespace {

constexpr int kMaxSeriesTerms = 10000;
constexpr int kMaxLentzIterations = 500;

// Alternating series E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k/(k k!).
// Converges fast below the switch point x = 1.
double gamma0_series(double x) {
  double term = x;  // k = 1
  double sum = x;
  for (int k = 2; k <= kMaxSeriesTerms; ++k) {
    term *= -x * (k - 1) / (static_cast<double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) {
      return -kEulerGamma - std::log(x) + sum;
    }
  }
  throw numerical_error("gamma0 series did not converge");
}

// Modified Lentz evaluation of the continued fraction
//   E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))),
// returned in the scaled form e^x E1(x). Used for x >= 1.
double gamma0_cf_scaled(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxLentzIterations; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    // One ulp of 1.0 is 2.2e-16; a tighter threshold can spin forever when
    // delta oscillates between adjacent representable values around 1.
    if (std::fabs(delta - 1.0) < 1e-15) return h;
  }
  throw numerical_error("gamma0 continued fraction did not converge");
}

}  // namespace

double upper_incomplete_gamma_zero(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("upper_incomplete_gamma_zero requires x > 0");
  }
  if (x < 1.0) return gamma0_series(x);
  if (x > 700.0) return 0.0;  // below double underflow threshold anyway
  return std::exp(-x) * gamma0_cf_scaled(x);
}

double upper_incomplete_gamma_zero_scaled(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("upper_incomplete_gamma_zero_scaled requires x > 0");
  }
  if (x < 1.0) return std::exp(x) * gamma0_series(x);
  return gamma0_cf_scaled(x);
}

double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144232160;
  if (std::isnan(x) || x < -kInvE - 1e-15) {
    throw std::domain_error("lambert_w0 requires x >= -1/e");
  }
  if (x == 0.0) return 0.0;
  if (x <= -kInvE) return -1.0;

  double w;
  if (x < -0.3) {
    // Branch-point series in p = sqrt(2(1 + e x)).
    const double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    if (p < 1e-8) return w;
  } else if (x < 3.0) {
    w = std::log1p(x);
  } else {
    w = std::log(x) - std::log(std::log(x));
  }

  // Residual tolerance proportional to |x|: since dw/df ~ 1/(e^w (1+w)),
  // an absolute cutoff would leave w with a large *relative* error when x
  // (and hence w) is small.
  const double tol = 1e-15 * std::fabs(x);
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) <= tol) return w;
    // Halley step.
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    w -= step;
    // Once the step is below one ulp of w the iteration has converged to
    // rounding noise even if the residual test cannot be met.
    if (std::fabs(step) <= 4e-16 * std::fabs(w)) return w;
  }
  throw numerical_error("lambert_w0 did not converge");
}

}  // namespace tascap
