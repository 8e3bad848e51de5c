#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tascap/channel.hpp"
#include "tascap/exact.hpp"

using namespace tascap;

namespace {

const SystemParams kRefParams{1.0, 1.0, 1.0, 0.1, 1.0, 1.0, 1.0};

}  // namespace

TEST_CASE("exponential sampling hits the configured mean") {
  RngStream rng(7, 0);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += rng.exponential(1.0);
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.005));
}

TEST_CASE("identical (seed, stream) reproduces identical draws") {
  RngStream a(42, 0), b(42, 0);
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform() == b.uniform());
  RngStream c(42, 1);
  RngStream d(42, 0);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) any_diff |= (c.uniform() != d.uniform());
  CHECK(any_diff);
}

TEST_CASE("empirical exponential CDF matches the closed form") {
  SystemParams params = kRefParams;
  params.mean_h = 2.0;
  RngStream rng(11, 0);
  int below = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (rng.exponential(params.mean_h) <= 2.0) ++below;
  }
  CHECK(static_cast<double>(below) / n ==
        doctest::Approx(-std::expm1(-1.0)).epsilon(0.01 / 0.632));
}

TEST_CASE("transmit power rule branches") {
  CHECK(transmit_power(10.0, kRefParams) == doctest::Approx(0.1));
  CHECK(transmit_power(0.5, kRefParams) == doctest::Approx(1.0));
  CHECK(transmit_power(1.0, kRefParams) == doctest::Approx(1.0));
  CHECK_THROWS_AS(transmit_power(0.0, kRefParams), std::domain_error);
}

TEST_CASE("sinr matches the minimum form and the power-rule identity") {
  CHECK(sinr(1.0, 1.0, 0.0, kRefParams) == doctest::Approx(10.0));
  SystemParams params{10.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(sinr(2.0, 4.0, 1.0, params) == doctest::Approx(0.25));

  RngStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const ChannelDraw draw = sample_channel(kRefParams, 1, rng);
    const double direct = sinr(draw.g[0], draw.h[0], draw.q, kRefParams);
    const double via_power = transmit_power(draw.h[0], kRefParams) * draw.g[0] /
                             (kRefParams.p_p * draw.q + kRefParams.noise);
    CHECK(direct == via_power);
  }
}

TEST_CASE("best antenna selection") {
  RngStream rng(5, 0);
  ChannelDraw one = sample_channel(kRefParams, 1, rng);
  auto [idx1, s1] = best_antenna(one, kRefParams);
  CHECK(idx1 == 0);
  CHECK(s1 == sinr(one.g[0], one.h[0], one.q, kRefParams));

  ChannelDraw two;
  two.g = {0.3, 0.7};
  two.h = {1.0, 1.0};
  two.q = 0.0;
  auto [idx2, s2] = best_antenna(two, kRefParams);
  CHECK(idx2 == 1);
  CHECK(s2 == doctest::Approx(7.0));

  // Duplicated draw: measure-zero tie resolves to the lowest index.
  ChannelDraw tie;
  tie.g = {0.5, 0.5};
  tie.h = {2.0, 2.0};
  tie.q = 0.1;
  CHECK(best_antenna(tie, kRefParams).first == 0);
}

TEST_CASE("interference safety holds for every sampled draw") {
  RngStream rng(9, 0);
  for (int i = 0; i < 5000; ++i) {
    const ChannelDraw draw = sample_channel(kRefParams, 4, rng);
    for (double h : draw.h) {
      CHECK(transmit_power(h, kRefParams) * h <= kRefParams.q_limit * (1 + 1e-12));
    }
  }
}

TEST_CASE("max SINR is nondecreasing in any g_i") {
  RngStream rng(13, 0);
  for (int i = 0; i < 200; ++i) {
    ChannelDraw draw = sample_channel(kRefParams, 4, rng);
    const double before = best_antenna(draw, kRefParams).second;
    draw.g[i % 4] *= 1.5;
    CHECK(best_antenna(draw, kRefParams).second >= before);
  }
}

TEST_CASE("per-antenna SINR empirical CDF sits in the DKW band of Eq-level CDF") {
  const int n = 100000;
  RngStream rng(21, 0);
  std::vector<double> samples;
  samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    const ChannelDraw draw = sample_channel(kRefParams, 1, rng);
    samples.push_back(sinr(draw.g[0], draw.h[0], draw.q, kRefParams));
  }
  std::sort(samples.begin(), samples.end());
  // 99% DKW envelope.
  const double band = std::sqrt(std::log(2.0 / 0.01) / (2.0 * n));
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(std::log(1e-3) +
                              (std::log(100.0) - std::log(1e-3)) * i / 199.0);
    const double ecdf =
        static_cast<double>(std::upper_bound(samples.begin(), samples.end(), x) -
                            samples.begin()) /
        n;
    CHECK(std::fabs(ecdf - sinr_cdf(x, kRefParams)) < band);
  }
}

TEST_CASE("invalid parameters are rejected") {
  SystemParams bad = kRefParams;
  bad.noise = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample_channel(kRefParams, 0, rng), std::invalid_argument);
}
