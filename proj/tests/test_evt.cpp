#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tascap/errors.hpp"
#include "tascap/evt.hpp"
#include "tascap/exact.hpp"
#include "tascap/special_functions.hpp"

using namespace tascap;

namespace {

const SystemParams kRefParams{1.0, 1.0, 1.0, 0.1, 1.0, 1.0, 1.0};

// Interference-power-limited setup: P_max/Q = +35 dB.
const SystemParams kIplrParams{1000.0, std::pow(10.0, -0.5), 1.0, 0.1,
                               1.0,    1.0,                  1.0};

// Transmit-power-limited setup: P_max/Q = -20 dB, P_p/noise = +10 dB.
const SystemParams kTplrParams{1.0, 100.0, 1.0, 0.1, 1.0, 1.0, 1.0};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> grid;
  grid.reserve(n);
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) grid.push_back(std::exp(la + (lb - la) * i / (n - 1)));
  return grid;
}

}  // namespace

TEST_CASE("gumbel constants round trip through the quantile definition") {
  for (int n : {2, 10, 100, 1000}) {
    const GumbelConstants c = gumbel_constants_sinr(kRefParams, n);
    CHECK(c.b_n > 0.0);
    CHECK(std::fabs(sinr_survival(c.a_n, kRefParams) - 1.0 / n) <= 1e-8 / n);
    CHECK(std::fabs(sinr_survival(c.a_n + c.b_n, kRefParams) -
                    1.0 / (n * std::exp(1.0))) <= 1e-8 / n);

    const GumbelConstants r = gumbel_constants_rate(kRefParams, n);
    CHECK(r.a_n == doctest::Approx(std::log1p(c.a_n)).epsilon(1e-12));
    CHECK(r.a_n + r.b_n ==
          doctest::Approx(std::log1p(c.a_n + c.b_n)).epsilon(1e-12));
  }
}

TEST_CASE("the selection cdf at a_n equals (1 - 1/N)^N, near 1/e") {
  for (int n : {4, 20, 100}) {
    const GumbelConstants c = gumbel_constants_sinr(kRefParams, n);
    CHECK(sinr_cdf_max(c.a_n, kRefParams, n) ==
          doctest::Approx(std::pow(1.0 - 1.0 / n, n)).epsilon(1e-8));
  }
  const GumbelConstants big = gumbel_constants_sinr(kRefParams, 1000);
  CHECK(sinr_cdf_max(big.a_n, kRefParams, 1000) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("mean and outage arithmetic on the Gumbel constants") {
  GumbelConstants unit{1.0, 1.0, 10, GumbelConstants::Family::rate};
  CHECK(asymptotic_mean_capacity(unit) ==
        doctest::Approx(1.5772156649015329).epsilon(1e-12));
  // epsilon = 1/e collapses the outage expression to the location a_n.
  CHECK(asymptotic_outage_capacity(unit, std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(asymptotic_outage_capacity(unit, 0.1) ==
        doctest::Approx(1.0 - std::log(std::log(10.0))).epsilon(1e-12));
  // The sinr-family constants must be converted before capacity arithmetic.
  GumbelConstants sinr_family{1.0, 1.0, 10, GumbelConstants::Family::sinr};
  CHECK_THROWS_AS(asymptotic_mean_capacity(sinr_family), std::invalid_argument);
}

TEST_CASE("mean minus 1/e-outage equals b_n * EulerGamma in every regime") {
  const int n = 100;
  const double eps = std::exp(-1.0);
  const GumbelConstants rate = gumbel_constants_rate(kRefParams, n);
  CHECK(asymptotic_mean_capacity(rate) - asymptotic_outage_capacity(rate, eps) ==
        doctest::Approx(rate.b_n * kEulerGamma).epsilon(1e-12));
  CHECK(iplr_mean_capacity(kIplrParams, n) -
            iplr_outage_capacity(kIplrParams, n, eps) ==
        doctest::Approx(kEulerGamma).epsilon(1e-12));
  const GumbelConstants tp = tplr_constants(kTplrParams, n);
  CHECK(tplr_mean_capacity(kTplrParams, n) -
            tplr_outage_capacity(kTplrParams, n, eps) ==
        doctest::Approx(tp.b_n * kEulerGamma).epsilon(1e-12));
  const GumbelConstants tl = tplr_low_constants(kTplrParams, n);
  CHECK(tplr_low_mean_capacity(kTplrParams, n) -
            tplr_low_outage_capacity(kTplrParams, n, eps) ==
        doctest::Approx(tl.b_n * kEulerGamma).epsilon(1e-12));
}

TEST_CASE("iplr scale converges to 1 and location steps by ln 2") {
  CHECK(iplr_constants(kIplrParams, 1000000).b_n ==
        doctest::Approx(1.0).epsilon(1e-5));
  const double a1 = iplr_constants(kIplrParams, 10000).a_n;
  const double a2 = iplr_constants(kIplrParams, 20000).a_n;
  CHECK(a2 - a1 == doctest::Approx(std::log(2.0)).epsilon(1e-3));
  // large_n outage takes b_n -> 1 exactly.
  const double eps = 0.1;
  const GumbelConstants c = iplr_constants(kIplrParams, 100);
  CHECK(iplr_outage_capacity(kIplrParams, 100, eps, true) ==
        doctest::Approx(c.a_n - std::log(std::log(1.0 / eps))).epsilon(1e-12));
  CHECK(iplr_outage_capacity(kIplrParams, 100, eps, false) ==
        doctest::Approx(c.a_n - c.b_n * std::log(std::log(1.0 / eps)))
            .epsilon(1e-12));
}

TEST_CASE("iplr mean tracks the exact mean within 0.1 nats at N = 100") {
  const double closed = iplr_mean_capacity(kIplrParams, 100);
  const double exact = exact_mean_capacity(kIplrParams, 100);
  CHECK(std::fabs(closed - exact) < 0.1);
  CHECK(std::fabs(closed - exact) / exact < 0.02);
}

TEST_CASE("tplr location is consistent with the per-antenna tail") {
  // exp(a_N) - 1 should sit near the 1 - 1/N quantile of the per-antenna
  // SINR when the system is transmit-power limited.
  for (int n : {100, 1000}) {
    const GumbelConstants c = tplr_constants(kTplrParams, n);
    const double s = sinr_survival(std::expm1(c.a_n), kTplrParams);
    CHECK(s == doctest::Approx(1.0 / n).epsilon(0.02));
  }
}

TEST_CASE("tplr scale decays monotonically (slower than 1/N)") {
  double prev = tplr_constants(kTplrParams, 100).b_n;
  CHECK(prev > 0.0);
  for (int n : {1000, 10000, 100000}) {
    const double cur = tplr_constants(kTplrParams, n).b_n;
    CHECK(cur > 0.0);
    CHECK(cur < prev);
    // Logarithmic decay: halving takes far more than a decade of N.
    CHECK(cur > prev / 10.0);
    prev = cur;
  }
}

TEST_CASE("tplr mean tracks the exact mean within 0.1 nats at N = 100") {
  SystemParams params = kTplrParams;
  params.q_limit = 10.0;
  const double closed = tplr_mean_capacity(params, 100);
  const double exact = exact_mean_capacity(params, 100);
  CHECK(std::fabs(closed - exact) < 0.1);
}

TEST_CASE("tplr throws out_of_regime when the tail argument collapses") {
  // Interference-power-limited parameters push the inner logarithm
  // non-positive; the closed form must refuse rather than emit NaN.
  CHECK_THROWS_AS(tplr_constants(kIplrParams, 4), out_of_regime_error);
}

TEST_CASE("tplr_low location obeys its closed-form identity") {
  const double c_q = -std::expm1(-kTplrParams.q_limit /
                                 (kTplrParams.p_max * kTplrParams.mean_h));
  const double scale = kTplrParams.p_max * kTplrParams.mean_g / kTplrParams.noise;
  for (int n : {10, 100, 10000}) {
    const GumbelConstants c = tplr_low_constants(kTplrParams, n);
    CHECK(std::expm1(c.a_n) ==
          doctest::Approx(scale * std::log(c_q * n)).epsilon(1e-12));
  }
  // Growth ratio of exp(a)-1 follows ln(c_q N2)/ln(c_q N1).
  const double g1 = std::expm1(tplr_low_constants(kTplrParams, 100).a_n);
  const double g2 = std::expm1(tplr_low_constants(kTplrParams, 10000).a_n);
  CHECK(g2 / g1 == doctest::Approx(std::log(c_q * 10000.0) /
                                   std::log(c_q * 100.0))
                       .epsilon(1e-12));
}

TEST_CASE("tplr_low scale decays monotonically toward zero") {
  double prev = tplr_low_constants(kTplrParams, 10).b_n;
  for (int n : {100, 1000, 10000, 100000}) {
    const double cur = tplr_low_constants(kTplrParams, n).b_n;
    CHECK(cur > 0.0);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(tplr_low_constants(kTplrParams, 1000000).b_n < 0.2);
}

TEST_CASE("tplr_low refuses c_q * N <= 1") {
  SystemParams tiny = kTplrParams;
  tiny.q_limit = 1e-4;  // c_q ~ 1e-4, so N = 100 leaves ln(c_q N) <= 0
  CHECK_THROWS_AS(tplr_low_constants(tiny, 100), out_of_regime_error);
}

TEST_CASE("mda verification passes for the sinr distribution") {
  const MdaDiagnostics diag =
      verify_mda_condition(kRefParams, log_grid(1.0, 1000.0, 400));
  CHECK(diag.expected_limit ==
        doctest::Approx(kRefParams.p_max * kRefParams.mean_g / kRefParams.noise)
            .epsilon(1e-12));
  CHECK(diag.limit_ok);
  CHECK(diag.derivative_ok);
  CHECK(diag.limit_estimate == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("mda diagnostics sanity on the exponential distribution") {
  const auto survival = [](double x) { return std::exp(-x); };
  const MdaDiagnostics diag =
      mda_diagnostics(survival, log_grid(0.1, 50.0, 200), 1.0);
  CHECK(diag.limit_ok);
  CHECK(diag.derivative_ok);
  for (double r : diag.hazard_reciprocal) {
    CHECK(r == doctest::Approx(1.0).epsilon(1e-4));
  }
  for (double d : diag.derivative_of_ratio) {
    CHECK(std::fabs(d) < 1e-4);
  }
}

TEST_CASE("grid not reaching deep enough into the tail is rejected") {
  CHECK_THROWS_AS(verify_mda_condition(kRefParams, log_grid(1.0, 20.0, 50)),
                  std::invalid_argument);
}

TEST_CASE("gumbel approximation error of F^N shrinks as N grows") {
  double prev_sup = 2.0;
  for (int n : {4, 10, 20, 50, 100}) {
    const GumbelConstants c = gumbel_constants_sinr(kRefParams, n);
    double sup = 0.0;
    for (int i = 0; i < 200; ++i) {
      // Scan the Gumbel bulk: a_n + b_n * t for t in [-2, 5].
      const double t = -2.0 + 7.0 * i / 199.0;
      const double x = c.a_n + c.b_n * t;
      if (x <= 0.0) continue;
      const double gumbel = std::exp(-std::exp(-t));
      sup = std::fmax(sup,
                      std::fabs(gumbel - sinr_cdf_max(x, kRefParams, n)));
    }
    CHECK(sup < prev_sup);
    prev_sup = sup;
  }
  // Convergence is logarithmic in N, so only a loose absolute cap applies.
  CHECK(prev_sup < 0.05);
}

TEST_CASE("closed forms agree with the quantile-route constants in regime") {
  const int n = 100;
  const double iplr = iplr_mean_capacity(kIplrParams, n);
  const double iplr_ref =
      asymptotic_mean_capacity(gumbel_constants_rate(kIplrParams, n));
  CHECK(std::fabs(iplr - iplr_ref) / iplr_ref < 0.02);

  const double tplr = tplr_mean_capacity(kTplrParams, n);
  const double tplr_ref =
      asymptotic_mean_capacity(gumbel_constants_rate(kTplrParams, n));
  CHECK(std::fabs(tplr - tplr_ref) / tplr_ref < 0.02);
}

TEST_CASE("antenna-count validation") {
  // Quantile-route constants need N >= 2; closed forms are defined at N = 1.
  CHECK_THROWS_AS(gumbel_constants_rate(kRefParams, 1), std::invalid_argument);
  CHECK_THROWS_AS(gumbel_constants_sinr(kRefParams, 1), std::invalid_argument);
  CHECK_THROWS_AS(iplr_constants(kRefParams, 0), std::invalid_argument);
  CHECK_NOTHROW(iplr_constants(kIplrParams, 1));
}
