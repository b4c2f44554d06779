#include "abxs/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "abxs/errors.hpp"

namespace abxs::mc {

void SimulationConfig::validate() const {
  if (trials < 1) throw ValidationError("trials", "must be >= 1");
  if (streams < 1) throw ValidationError("streams", "must be >= 1");
  if (histogram_bins < 1) throw ValidationError("histogram_bins", "must be >= 1");
  if (threads < 0) throw ValidationError("threads", "must be >= 0");
}

// ---------------------------------------------------------------------------
// Philox

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

std::uint64_t StreamRng::next_u64() {
  if (used_ >= 4) {
    buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                             static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                            key_);
    ++block_;
    used_ = 0;
  }
  const std::uint64_t v = (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
  used_ += 2;
  return v;
}

double StreamRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double StreamRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

// ---------------------------------------------------------------------------
// Variates

double sample_gamma(StreamRng& rng, double shape, double scale) {
  if (shape < 1) {
    // Boost: Gamma(a) = Gamma(a + 1) * U^(1/a).
    const double g = sample_gamma(rng, shape + 1, 1.0);
    return scale * g * std::exp(std::log(rng.uniform()) / shape);
  }
  // Marsaglia-Tsang squeeze/rejection.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

std::int64_t sample_poisson(StreamRng& rng, double lambda) {
  if (lambda <= 0) return 0;
  if (lambda < 10) {
    // Sequential-search inversion.
    double p = std::exp(-lambda);
    double cdf = p;
    const double u = rng.uniform();
    std::int64_t k = 0;
    while (u > cdf && p > 0) {
      ++k;
      p *= lambda / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // Hoermann's transformed rejection with squeeze (PTRS).
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

double sample_bxs_power(const ChannelParams& p, StreamRng& rng) {
  std::int64_t n = 0;
  if (p.omega_y > 0) {
    const double s = sample_gamma(rng, p.m_y, p.omega_y / p.m_y);
    n = sample_poisson(rng, p.m_x * s / p.omega_x);
  }
  return sample_gamma(rng, p.m_x + static_cast<double>(n), p.omega_x / p.m_x);
}

double sample_snr(const Channel& ch, StreamRng& rng) {
  const auto& p = ch.params();
  const double w = sample_bxs_power(p, rng);
  return p.gamma_bar * std::pow(ch.constants().c_alpha * p.m_x * w / p.omega_x, 2.0 / p.alpha);
}

// ---------------------------------------------------------------------------
// Kernels

namespace {

// Welford running moments; merged with Chan's pairwise update.
struct Moments {
  double n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

std::int64_t stream_begin(std::int64_t trials, int streams, int i) {
  return static_cast<std::int64_t>(static_cast<__int128>(trials) * i / streams);
}

template <class Draw, class Stat>
Moments run_stream(const SimulationConfig& cfg, int i, Draw draw, Stat stat) {
  StreamRng rng(cfg.seed, static_cast<std::uint64_t>(i));
  Moments m;
  const std::int64_t end = stream_begin(cfg.trials, cfg.streams, i + 1);
  for (std::int64_t t = stream_begin(cfg.trials, cfg.streams, i); t < end; ++t) m.add(stat(draw(rng)));
  return m;
}

Estimate finish(const std::vector<Moments>& per_stream) {
  Moments total;
  for (const auto& m : per_stream) total.merge(m);
  Estimate e;
  e.trials = static_cast<std::int64_t>(total.n);
  e.estimate = total.mean;
  e.std_error = total.n > 1 ? std::sqrt(total.m2 / (total.n - 1) / total.n)
                            : std::numeric_limits<double>::quiet_NaN();
  return e;
}

template <class Draw, class Stat>
Estimate parallel_mean(const SimulationConfig& cfg, Draw draw, Stat stat) {
  cfg.validate();
  std::vector<Moments> parts(cfg.streams);
  const int team = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (int i = 0; i < cfg.streams; ++i) parts[i] = run_stream(cfg, i, draw, stat);
  return finish(parts);
}

template <class Draw, class Stat>
Estimate serial_mean(const SimulationConfig& cfg, Draw draw, Stat stat) {
  cfg.validate();
  std::vector<Moments> parts(cfg.streams);
  for (int i = 0; i < cfg.streams; ++i) parts[i] = run_stream(cfg, i, draw, stat);
  return finish(parts);
}

template <class Draw>
std::vector<double> parallel_batch(const SimulationConfig& cfg, Draw draw, bool parallel) {
  cfg.validate();
  std::vector<double> out(static_cast<std::size_t>(cfg.trials));
  auto fill = [&](int i) {
    StreamRng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const std::int64_t end = stream_begin(cfg.trials, cfg.streams, i + 1);
    for (std::int64_t t = stream_begin(cfg.trials, cfg.streams, i); t < end; ++t) out[t] = draw(rng);
  };
  if (parallel) {
    const int team = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (int i = 0; i < cfg.streams; ++i) fill(i);
  } else {
    for (int i = 0; i < cfg.streams; ++i) fill(i);
  }
  return out;
}

struct SnrDraw {
  const Channel* ch;
  double operator()(StreamRng& rng) const { return sample_snr(*ch, rng); }
};

struct AberStat {
  const ModulationScheme* mod;
  double operator()(double g) const {
    double s = 0;
    for (double d : mod->delta2) s += gaussian_q(std::sqrt(2 * d * g));
    return mod->delta1 * s;
  }
};

struct CapacityStat {
  double operator()(double g) const { return std::log1p(g) / std::numbers::ln2; }
};

}  // namespace

Estimate mc_aber(const Channel& ch, const ModulationScheme& mod, const SimulationConfig& cfg) {
  mod.validate();
  return parallel_mean(cfg, SnrDraw{&ch}, AberStat{&mod});
}

Estimate mc_capacity(const Channel& ch, const SimulationConfig& cfg) {
  return parallel_mean(cfg, SnrDraw{&ch}, CapacityStat{});
}

Estimate mc_mean(const Channel& ch, const SimulationConfig& cfg, const std::function<double(double)>& stat) {
  return parallel_mean(cfg, SnrDraw{&ch}, stat);
}

Estimate mc_power_mean(const ChannelParams& params, const SimulationConfig& cfg,
                       const std::function<double(double)>& stat) {
  const ChannelParams p = validate(params);
  return parallel_mean(cfg, [&p](StreamRng& rng) { return sample_bxs_power(p, rng); }, stat);
}

std::vector<double> sample_snr_batch(const Channel& ch, const SimulationConfig& cfg) {
  return parallel_batch(cfg, SnrDraw{&ch}, true);
}

std::vector<double> sample_power_batch(const ChannelParams& params, const SimulationConfig& cfg) {
  const ChannelParams p = validate(params);
  return parallel_batch(cfg, [&p](StreamRng& rng) { return sample_bxs_power(p, rng); }, true);
}

namespace serial {

Estimate mc_aber(const Channel& ch, const ModulationScheme& mod, const SimulationConfig& cfg) {
  mod.validate();
  return serial_mean(cfg, SnrDraw{&ch}, AberStat{&mod});
}

Estimate mc_capacity(const Channel& ch, const SimulationConfig& cfg) {
  return serial_mean(cfg, SnrDraw{&ch}, CapacityStat{});
}

std::vector<double> sample_snr_batch(const Channel& ch, const SimulationConfig& cfg) {
  return parallel_batch(cfg, SnrDraw{&ch}, false);
}

}  // namespace serial

// ---------------------------------------------------------------------------
// Goodness of fit

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

Histogram histogram(const std::vector<double>& samples, int bins, double lo, double hi) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("histogram: need bins >= 1 and hi > lo");
  Histogram h;
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(lo + width * i);
  std::vector<std::int64_t> counts(bins, 0);
  for (double x : samples) {
    if (x < lo || x >= hi) {
      if (x >= hi) ++h.outside;
      continue;
    }
    const int b = std::min(bins - 1, static_cast<int>((x - lo) / width));
    ++counts[b];
  }
  const double n = static_cast<double>(samples.size());
  for (int i = 0; i < bins; ++i) h.density.push_back(static_cast<double>(counts[i]) / (n * width));
  return h;
}

}  // namespace abxs::mc
