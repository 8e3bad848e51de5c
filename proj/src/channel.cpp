#include "tascap/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace tascap {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

void SystemParams::validate() const {
  const double fields[] = {p_max, q_limit, p_p, noise, mean_g, mean_h, mean_q};
  for (double v : fields) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "SystemParams: all fields must be finite and strictly positive");
    }
  }
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t state = seed;
  (void)splitmix64(state);
  state ^= stream_id * 0xD1342543DE82EF95ULL;
  gen_.seed(splitmix64(state));
}

double RngStream::uniform() {
  const std::uint64_t bits = gen_() >> 11;  // top 53 bits
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
  return -mean * std::log(uniform());
}

ChannelDraw sample_channel(const SystemParams& params, int n_antennas,
                           RngStream& rng) {
  if (n_antennas < 1) {
    throw std::invalid_argument("sample_channel requires n_antennas >= 1");
  }
  params.validate();
  ChannelDraw draw;
  draw.g.resize(n_antennas);
  draw.h.resize(n_antennas);
  for (int i = 0; i < n_antennas; ++i) draw.g[i] = rng.exponential(params.mean_g);
  for (int i = 0; i < n_antennas; ++i) draw.h[i] = rng.exponential(params.mean_h);
  draw.q = rng.exponential(params.mean_q);
  return draw;
}

double transmit_power(double h_i, const SystemParams& params) {
  if (!(h_i > 0.0)) {
    throw std::domain_error("transmit_power requires h_i > 0");
  }
  return std::fmin(params.q_limit / h_i, params.p_max);
}

double sinr(double g_i, double h_i, double q, const SystemParams& params) {
  if (!(g_i > 0.0) || !(q >= 0.0)) {
    throw std::domain_error("sinr requires positive gains");
  }
  return transmit_power(h_i, params) * g_i / (params.p_p * q + params.noise);
}

std::pair<int, double> best_antenna(const ChannelDraw& draw,
                                    const SystemParams& params) {
  if (draw.g.empty() || draw.g.size() != draw.h.size()) {
    throw std::invalid_argument("best_antenna requires a non-empty draw");
  }
  int best = 0;
  double best_sinr = sinr(draw.g[0], draw.h[0], draw.q, params);
  for (std::size_t i = 1; i < draw.g.size(); ++i) {
    const double s = sinr(draw.g[i], draw.h[i], draw.q, params);
    if (s > best_sinr) {
      best = static_cast<int>(i);
      best_sinr = s;
    }
  }
  return {best, best_sinr};
}

}  // namespace tascap
