#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace tascap {

// All physical parameters of the link, in linear scale. dB conversion is a
// CLI concern only.
struct SystemParams {
  double p_max;   // maximum ST transmit power
  double q_limit; // peak interference power constraint toward the PR
  double p_p;     // PU transmit power
  double noise;   // noise power at the SR
  double mean_g;  // mean channel power gain ST -> SR
  double mean_h;  // mean channel power gain ST -> PR
  double mean_q;  // mean channel power gain PT -> SR

  // Throws std::invalid_argument unless every field is finite and > 0.
  void validate() const;
};

// One block-fading realization of all channel power gains.
struct ChannelDraw {
  std::vector<double> g;  // per-antenna ST -> SR gains
  std::vector<double> h;  // per-antenna ST -> PR gains
  double q = 0.0;         // PT -> SR gain
};

// Deterministic counter-keyed random stream: identical (seed, stream_id)
// reproduces the identical draw sequence bit-exactly on any platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  // Uniform on (0, 1], 53-bit resolution. The open lower end keeps the
  // inverse-transform exponential away from log(0).
  double uniform();

  // Exponential with the given mean, by inverse transform.
  double exponential(double mean);

 private:
  std::mt19937_64 gen_;
};

// Draws the 2N+1 gains of one fading block: g[0..N), h[0..N), then q.
ChannelDraw sample_channel(const SystemParams& params, int n_antennas,
                           RngStream& rng);

// Power rule min{Q/h_i, P_max}. Throws std::domain_error for h_i <= 0.
double transmit_power(double h_i, const SystemParams& params);

// Received SINR when antenna i is active: transmit_power(h_i) * g_i / (P_p q + noise).
double sinr(double g_i, double h_i, double q, const SystemParams& params);

// Selected antenna index and the maximum SINR. Ties break to the lowest index.
std::pair<int, double> best_antenna(const ChannelDraw& draw,
                                    const SystemParams& params);

}  // namespace tascap
