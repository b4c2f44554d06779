#pragma once

// Average bit error rate, ergodic capacity, diversity order and coding gain
// over the alpha-Beaulieu-Xie shadowed channel. Every closed form has an
// independent adaptive-quadrature counterpart over the SNR density.

#include <string>
#include <vector>

#include "abxs/channel.hpp"
#include "abxs/quadrature.hpp"
#include "abxs/specfun.hpp"

namespace abxs {

enum class ModulationKind { BPSK, MPSK, MQAM, MFSKCoherent };

/// BER ~ delta1 * sum_j Q(sqrt(2 delta2[j] gamma)); delta3 = delta2.size().
struct ModulationScheme {
  std::string name;
  double delta1 = 1.0;
  std::vector<double> delta2{1.0};

  int delta3() const { return static_cast<int>(delta2.size()); }
  void validate() const;
};

/// Throws ValidationError for unsupported (kind, order) pairs, e.g. a
/// non-square QAM order.
ModulationScheme modulation_coeffs(ModulationKind kind, int order);

/// Parses "bpsk", "qam16", "psk8", "fsk4" (case-insensitive).
ModulationScheme parse_modulation(const std::string& text);

enum class EvalPath {
  MeijerG,            // closed form through Meijer G terms
  SeriesQuadrature,   // mixture series with per-term numerical integrals
  Oracle,             // adaptive quadrature over the SNR density
  Asymptotic,         // high-SNR single-term form
};

const char* to_string(EvalPath path);

struct MetricResult {
  double value = 0.0;
  /// Mixture-series terms summed.
  int terms_used = 0;
  EvalPath path = EvalPath::Oracle;
  /// A Meijer G term came from the contour fallback.
  bool precision_warning = false;
  /// The mixture series hit SeriesControl::max_terms before meeting rel_tol;
  /// value is the truncated sum.
  bool truncated = false;
};

using AberResult = MetricResult;
using CapacityResult = MetricResult;

struct ExactOptions {
  specfun::SeriesControl series{1e-7, 64};
  /// Largest rationalization denominator handled through Meijer G; larger
  /// ones use the series-quadrature path.
  long max_q = 8;
  double rationalize_tol = 1e-9;
  specfun::MeijerGOptions meijer{};
  /// Used by the series-quadrature path.
  quad::Options quadrature{0.0, 1e-11, 4000};
};

/// Q(x) = erfc(x / sqrt 2) / 2.
double gaussian_q(double x);

quad::Options default_oracle_options();

/// Integral of snr_pdf over [0, gamma]; the oracle for snr_cdf.
double cdf_quadrature(const Channel& ch, double gamma,
                      const quad::Options& opts = default_oracle_options());

AberResult aber_quadrature(const Channel& ch, const ModulationScheme& mod,
                           const quad::Options& opts = default_oracle_options());
AberResult aber_exact(const Channel& ch, const ModulationScheme& mod, const ExactOptions& opts = {});
/// Per-mixture-term contributions (k = 0 .. count - 1) to the closed-form
/// ABER, each already summed over the modulation terms and scaled by delta1.
std::vector<double> aber_exact_terms(const Channel& ch, const ModulationScheme& mod, int count,
                                     const specfun::MeijerGOptions& meijer = {});
/// The same contributions from per-term numerical integrals.
std::vector<double> aber_series_quadrature_terms(const Channel& ch, const ModulationScheme& mod,
                                                 int count, const quad::Options& opts = {0.0, 1e-12, 4000});
AberResult aber_series_quadrature(const Channel& ch, const ModulationScheme& mod,
                                  const ExactOptions& opts = {});
AberResult aber_asymptotic(const Channel& ch, const ModulationScheme& mod);

double diversity_order(const ChannelParams& params);
/// G_c with aber_asymptotic = G_c * gamma_bar^(-G_d).
double coding_gain(const ChannelParams& params, const ModulationScheme& mod);

CapacityResult capacity_quadrature(const Channel& ch,
                                   const quad::Options& opts = default_oracle_options());
CapacityResult capacity_exact(const Channel& ch, const ExactOptions& opts = {});
std::vector<double> capacity_exact_terms(const Channel& ch, int count,
                                         const specfun::MeijerGOptions& meijer = {});
/// (1/ln 2) * integral of ccdf(gamma) / (1 + gamma); the capacity fallback.
CapacityResult capacity_ccdf_quadrature(const Channel& ch, const ExactOptions& opts = {});
double capacity_asymptotic(const Channel& ch);

}  // namespace abxs
