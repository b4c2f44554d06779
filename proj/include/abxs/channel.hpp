#pragma once

// The alpha-Beaulieu-Xie shadowed fading model: parameters, derived
// constants, exact and high-SNR statistics of the instantaneous SNR, and the
// baseline (alpha = 2) Beaulieu-Xie shadowed envelope density.

#include <optional>

#include "abxs/specfun.hpp"

namespace abxs {

/// All quantities are linear; dB conversion happens at the CLI boundary.
struct ChannelParams {
  double m_x = 1.0;        ///< overall fading severity
  double m_y = 1.0;        ///< LoS shadowing severity
  double omega_x = 1.0;    ///< NLoS power
  double omega_y = 0.0;    ///< LoS power (0 disables the LoS component)
  double alpha = 2.0;      ///< propagation nonlinearity exponent
  double gamma_bar = 1.0;  ///< average SNR
};

/// Returns `params` unchanged or throws ValidationError naming the field.
ChannelParams validate(const ChannelParams& params);

double db_to_linear(double db);

/// alpha / 2 = p / q with gcd(p, q) = 1.
struct Rational {
  long p = 1;
  long q = 1;
};

/// Smallest-denominator fraction within `tol` of alpha / 2. Throws
/// DomainError when no denominator up to `max_q` qualifies.
Rational rationalize_alpha(double alpha, double tol = 1e-9, long max_q = 32);
std::optional<Rational> try_rationalize_alpha(double alpha, double tol = 1e-9, long max_q = 32);

double beta_bar(const ChannelParams& params);
double c_alpha(const ChannelParams& params);
/// E{R^k} of the (alpha-free) Beaulieu-Xie shadowed envelope.
double envelope_moment(const ChannelParams& params, double k);
/// Beaulieu-Xie shadowed envelope pdf; alpha and gamma_bar are ignored.
double bxs_envelope_pdf(const ChannelParams& params, double r);

struct DerivedConstants {
  double c_alpha = 1.0;
  double beta_bar = 0.0;
  /// Mean square of the alpha-root envelope, (omega_x / (m_x c_alpha))^(2/alpha).
  /// Kept for reference; the SNR-domain expressions do not use it.
  double mho_alpha = 1.0;
  /// Empty when alpha / 2 has no small-denominator rational form.
  std::optional<Rational> pq;
};

/// Validated parameters together with their cached derived constants.
/// Immutable after construction.
class Channel {
 public:
  explicit Channel(const ChannelParams& params);

  const ChannelParams& params() const noexcept { return params_; }
  const DerivedConstants& constants() const noexcept { return constants_; }

  /// Same fading parameters at another average SNR. C_alpha and beta_bar do
  /// not depend on gamma_bar, so nothing is recomputed.
  Channel with_gamma_bar(double gamma_bar) const;

  /// u = (gamma / gamma_bar)^(alpha/2) / C_alpha, the Gamma-mixture variable.
  specfun::real normalized(specfun::real gamma) const;
  /// Inverse of normalized().
  double snr_from_normalized(double u) const;

  /// (1 - beta_bar)^m_y, the k = 0 mixture weight.
  specfun::real los_weight() const;

 private:
  Channel(const ChannelParams& params, const DerivedConstants& constants)
      : params_(params), constants_(constants) {}

  ChannelParams params_;
  DerivedConstants constants_;
};

/// f_gamma. At gamma = 0 returns 0 (alpha m_x > 2), the finite limit
/// (alpha m_x = 2), or +infinity for the integrable pole (alpha m_x < 2).
double snr_pdf(const Channel& ch, double gamma);
/// F_gamma via the incomplete-gamma mixture series.
double snr_cdf(const Channel& ch, double gamma, specfun::SeriesControl ctl = {});
/// 1 - F_gamma via upper incomplete gammas (no cancellation in the tail).
double snr_ccdf(const Channel& ch, double gamma, specfun::SeriesControl ctl = {});
/// F_gamma via the confluent Appell function; cross-check route for snr_cdf.
double snr_cdf_phi2(const Channel& ch, double gamma, specfun::SeriesControl ctl = {});

double snr_pdf_asymptotic(const Channel& ch, double gamma);
double snr_cdf_asymptotic(const Channel& ch, double gamma);

}  // namespace abxs
