#include "tascap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tascap/errors.hpp"

namespace tascap {
namespace {

struct BlockTally {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> samples;
};

// Runs every block of the plan, parallel across blocks, and returns the
// per-block tallies indexed by block. Aggregation over this vector in index
// order is what keeps results independent of the worker count.
std::vector<BlockTally> run_blocks(const SimulationPlan& plan,
                                   bool keep_samples) {
  plan.params.validate();
  if (plan.n_antennas < 1) {
    throw std::invalid_argument("simulation requires n_antennas >= 1");
  }
  if (plan.workers < 1) {
    throw std::invalid_argument("simulation requires workers >= 1");
  }
  const std::uint64_t n_blocks =
      (plan.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<BlockTally> tallies(n_blocks);

  std::atomic<std::uint64_t> next_block{0};
  const auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      const std::uint64_t begin = b * kTrialsPerBlock;
      const std::uint64_t end = std::min(begin + kTrialsPerBlock, plan.trials);
      RngStream rng(plan.seed, b);
      BlockTally& tally = tallies[b];
      if (keep_samples) tally.samples.reserve(end - begin);
      for (std::uint64_t t = begin; t < end; ++t) {
        // Selection statistics are over i.i.d. per-antenna SINRs: every
        // antenna sees its own interference realization, matching the
        // [F(x)]^N order statistic the analytic side is built on.
        double best = 0.0;
        for (int i = 0; i < plan.n_antennas; ++i) {
          const double g = rng.exponential(plan.params.mean_g);
          const double h = rng.exponential(plan.params.mean_h);
          const double q = rng.exponential(plan.params.mean_q);
          best = std::fmax(best, sinr(g, h, q, plan.params));
        }
        const double rate = std::log1p(best);
        tally.sum += rate;
        tally.sum_sq += rate * rate;
        if (keep_samples) tally.samples.push_back(rate);
      }
    }
  };

  if (plan.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(plan.workers);
    for (int i = 0; i < plan.workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return tallies;
}

}  // namespace

std::vector<double> max_rate_samples(const SimulationPlan& plan) {
  const auto tallies = run_blocks(plan, true);
  std::vector<double> samples;
  samples.reserve(plan.trials);
  for (const auto& tally : tallies) {
    samples.insert(samples.end(), tally.samples.begin(), tally.samples.end());
  }
  return samples;
}

CapacityEstimate estimate_mean_capacity(const SimulationPlan& plan) {
  if (plan.trials < 100) {
    throw std::invalid_argument("estimate_mean_capacity requires >= 100 trials");
  }
  const auto tallies = run_blocks(plan, false);
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& tally : tallies) {
    sum += tally.sum;
    sum_sq += tally.sum_sq;
  }
  const double n = static_cast<double>(plan.trials);
  const double mean = sum / n;
  const double var = std::fmax(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double z = inverse_normal_cdf(0.5 + 0.5 * plan.confidence);
  const double half = z * std::sqrt(var / n);
  return {mean, mean - half, mean + half, plan.confidence, plan.trials};
}

CapacityEstimate estimate_outage_capacity(const SimulationPlan& plan,
                                          double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::domain_error("estimate_outage_capacity requires 0 < epsilon < 1");
  }
  const double n = static_cast<double>(plan.trials);
  if (n * std::fmin(epsilon, 1.0 - epsilon) < 50.0) {
    throw std::invalid_argument(
        "estimate_outage_capacity: insufficient trials for this epsilon");
  }
  std::vector<double> samples = max_rate_samples(plan);
  std::sort(samples.begin(), samples.end());

  const auto order_stat = [&](double rank) {
    const auto idx = static_cast<std::uint64_t>(
        std::clamp(rank, 1.0, n) - 1.0);
    return samples[idx];
  };
  const double k = std::ceil(epsilon * n);
  const double z = inverse_normal_cdf(0.5 + 0.5 * plan.confidence);
  const double spread = z * std::sqrt(n * epsilon * (1.0 - epsilon));
  return {order_stat(k),
          order_stat(std::floor(n * epsilon - spread)),
          order_stat(std::ceil(n * epsilon + spread)),
          plan.confidence, plan.trials};
}

double empirical_quantile(std::vector<double> samples, double epsilon) {
  if (samples.empty() || !(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("empirical_quantile: bad samples or epsilon");
  }
  const auto k = static_cast<std::size_t>(
      std::ceil(epsilon * static_cast<double>(samples.size())));
  std::nth_element(samples.begin(), samples.begin() + (k - 1), samples.end());
  return samples[k - 1];
}

std::vector<double> empirical_cdf(const std::vector<double>& samples,
                                  const std::vector<double>& x_grid) {
  if (x_grid.empty()) return {};
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cdf requires samples");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    const auto count =
        std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    out.push_back(static_cast<double>(count) /
                  static_cast<double>(sorted.size()));
  }
  return out;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("inverse_normal_cdf requires 0 < p < 1");
  }
  // Acklam's rational approximation, then one Newton step through erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return x - err / pdf;
}

}  // namespace tascap
