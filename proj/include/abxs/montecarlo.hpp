#pragma once

// Seeded Monte-Carlo sampling of the alpha-Beaulieu-Xie shadowed SNR and
// sample-mean estimators of ABER and capacity.
//
// The generator is Philox4x32-10 keyed by the seed, with the stream index in
// the upper counter words. Stream i owns trials [i T / S, (i + 1) T / S);
// per-stream partial results are merged in stream order, so estimates depend
// only on (seed, streams, trials) and never on the thread count.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "abxs/channel.hpp"
#include "abxs/metrics.hpp"

namespace abxs::mc {

struct SimulationConfig {
  std::uint64_t seed = 1;
  std::int64_t trials = 1'000'000;
  int streams = 64;
  int histogram_bins = 100;
  /// OpenMP team size for the parallel kernels; 0 keeps the runtime default.
  int threads = 0;

  void validate() const;
};

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  double normal();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Gamma(shape, scale) for any shape > 0.
double sample_gamma(StreamRng& rng, double shape, double scale);
/// Poisson(lambda) for lambda >= 0.
std::int64_t sample_poisson(StreamRng& rng, double lambda);

/// One draw of the envelope power W = R^2 through the Gamma-Poisson-Gamma
/// mixture: S ~ Gamma(m_y, mean omega_y), N ~ Poisson(m_x S / omega_x),
/// W ~ Gamma(m_x + N, scale omega_x / m_x).
double sample_bxs_power(const ChannelParams& params, StreamRng& rng);
/// gamma = gamma_bar (C_alpha m_x W / omega_x)^(2/alpha).
double sample_snr(const Channel& ch, StreamRng& rng);

struct Estimate {
  double estimate = 0.0;
  /// Standard error of the mean; NaN for a single trial.
  double std_error = 0.0;
  std::int64_t trials = 0;
};

/// Sample mean of delta1 sum_j Q(sqrt(2 delta2[j] gamma)).
Estimate mc_aber(const Channel& ch, const ModulationScheme& mod, const SimulationConfig& cfg);
/// Sample mean of log2(1 + gamma).
Estimate mc_capacity(const Channel& ch, const SimulationConfig& cfg);
/// Sample mean of an arbitrary statistic of gamma.
Estimate mc_mean(const Channel& ch, const SimulationConfig& cfg, const std::function<double(double)>& stat);
/// Sample mean of a statistic of the envelope power W.
Estimate mc_power_mean(const ChannelParams& params, const SimulationConfig& cfg,
                       const std::function<double(double)>& stat);

/// All SNR draws, in stream order.
std::vector<double> sample_snr_batch(const Channel& ch, const SimulationConfig& cfg);
std::vector<double> sample_power_batch(const ChannelParams& params, const SimulationConfig& cfg);

/// Single-threaded references with identical stream layout; the parallel
/// kernels must reproduce them bit for bit.
namespace serial {
Estimate mc_aber(const Channel& ch, const ModulationScheme& mod, const SimulationConfig& cfg);
Estimate mc_capacity(const Channel& ch, const SimulationConfig& cfg);
std::vector<double> sample_snr_batch(const Channel& ch, const SimulationConfig& cfg);
}  // namespace serial

/// sup_x |F_n(x) - cdf(x)|. Throws std::invalid_argument on empty input.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic critical value of the one-sample KS statistic at level 0.01.
double ks_critical_1pct(std::size_t n);

struct Histogram {
  std::vector<double> edges;    // bins + 1 entries
  std::vector<double> density;  // count / (n * width)
  std::int64_t outside = 0;     // samples beyond the last edge
};

Histogram histogram(const std::vector<double>& samples, int bins, double lo, double hi);

}  // namespace abxs::mc
