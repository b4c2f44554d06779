#include "abxs/channel.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "abxs/errors.hpp"

namespace abxs {

namespace sf = specfun;
using sf::real;

namespace {

void require_field(bool ok, const char* field, const char* what, double value) {
  if (!ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " (got " << value << ")";
    throw ValidationError(field, msg.str());
  }
}

// Argument of the 2F1 inside C_alpha and envelope_moment; always <= 0.
real shadowing_argument(const ChannelParams& p) {
  return -static_cast<real>(p.m_x) * p.omega_y / (static_cast<real>(p.m_y) * p.omega_x);
}

}  // namespace

ChannelParams validate(const ChannelParams& p) {
  require_field(std::isfinite(p.m_x) && p.m_x > 0, "m_x", "must be finite and > 0", p.m_x);
  require_field(std::isfinite(p.m_y) && p.m_y > 0, "m_y", "must be finite and > 0", p.m_y);
  require_field(std::isfinite(p.omega_x) && p.omega_x > 0, "omega_x", "must be finite and > 0",
                p.omega_x);
  require_field(std::isfinite(p.omega_y) && p.omega_y >= 0, "omega_y", "must be finite and >= 0",
                p.omega_y);
  require_field(std::isfinite(p.alpha) && p.alpha > 0, "alpha", "must be finite and > 0", p.alpha);
  require_field(std::isfinite(p.gamma_bar) && p.gamma_bar > 0, "gamma_bar",
                "must be finite and > 0", p.gamma_bar);
  return p;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::optional<Rational> try_rationalize_alpha(double alpha, double tol, long max_q) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("rationalize_alpha: alpha must be > 0");
  if (!(tol > 0)) throw DomainError("rationalize_alpha: tol must be > 0");
  const real x = static_cast<real>(alpha) / 2;
  // Scanning q upward returns the first (hence smallest) denominator within
  // tolerance, which is the continued-fraction best approximation at that
  // tolerance and is automatically in lowest terms.
  for (long q = 1; q <= max_q; ++q) {
    const long p = std::lround(x * q);
    if (p < 1) continue;
    if (std::fabs(static_cast<real>(p) / q - x) <= tol) {
      const long g = std::gcd(p, q);
      return Rational{p / g, q / g};
    }
  }
  return std::nullopt;
}

Rational rationalize_alpha(double alpha, double tol, long max_q) {
  if (auto r = try_rationalize_alpha(alpha, tol, max_q)) return *r;
  std::ostringstream msg;
  msg.precision(17);
  msg << "rationalize_alpha: alpha/2 = " << alpha / 2 << " needs a denominator above " << max_q;
  throw DomainError(msg.str());
}

double beta_bar(const ChannelParams& p) {
  validate(p);
  if (p.omega_y == 0) return 0.0;
  return p.m_x * p.omega_y / (p.m_y * p.omega_x + p.m_x * p.omega_y);
}

double c_alpha(const ChannelParams& p) {
  validate(p);
  const real mx = p.m_x;
  const real two_over_alpha = 2.0L / p.alpha;
  real log_c = sf::detail::lgamma_ld(mx) - sf::detail::lgamma_ld(mx + two_over_alpha);
  if (p.omega_y > 0) {
    const real f = sf::detail::gauss_2f1_ld(p.m_y, -two_over_alpha, mx, shadowing_argument(p), {});
    if (!(f > 0)) throw DomainError("c_alpha: nonpositive 2F1 factor");
    log_c -= std::log(f);
  }
  return static_cast<double>(std::exp(static_cast<real>(p.alpha) / 2 * log_c));
}

double envelope_moment(const ChannelParams& p, double k) {
  validate(p);
  if (!(k > 0)) throw DomainError("envelope_moment: k must be > 0");
  const real mx = p.m_x;
  const real half_k = static_cast<real>(k) / 2;
  real log_m = sf::detail::lgamma_ld(mx + half_k) - sf::detail::lgamma_ld(mx) +
               half_k * std::log(static_cast<real>(p.omega_x) / mx);
  real f = 1;
  if (p.omega_y > 0) f = sf::detail::gauss_2f1_ld(p.m_y, -half_k, mx, shadowing_argument(p), {});
  return static_cast<double>(std::exp(log_m) * f);
}

double bxs_envelope_pdf(const ChannelParams& p, double r) {
  validate(p);
  if (!(r >= 0)) throw DomainError("bxs_envelope_pdf: r must be >= 0");
  const real mx = p.m_x, my = p.m_y, ox = p.omega_x, oy = p.omega_y;
  const real power = 2 * mx - 1;
  const real denom = my * ox + mx * oy;
  const real log_norm = std::log(2.0L) - sf::detail::lgamma_ld(mx) + my * std::log(my * ox / denom) +
                        mx * std::log(mx / ox);
  if (r == 0) {
    if (power > 0) return 0.0;
    if (power == 0) return static_cast<double>(std::exp(log_norm));
    return std::numeric_limits<double>::infinity();
  }
  const real rr = r;
  const real r2 = rr * rr;
  real log_f = log_norm + power * std::log(rr) - mx * r2 / ox;
  if (oy > 0) log_f += sf::detail::log_kummer_1f1_ld(my, mx, mx * mx * oy * r2 / (ox * denom), {});
  return static_cast<double>(std::exp(log_f));
}

// ---------------------------------------------------------------------------

Channel::Channel(const ChannelParams& params) : params_(validate(params)) {
  constants_.beta_bar = beta_bar(params_);
  constants_.c_alpha = c_alpha(params_);
  constants_.mho_alpha = std::pow(params_.omega_x / (params_.m_x * constants_.c_alpha),
                                  2.0 / params_.alpha);
  constants_.pq = try_rationalize_alpha(params_.alpha);
}

Channel Channel::with_gamma_bar(double gamma_bar) const {
  ChannelParams p = params_;
  p.gamma_bar = gamma_bar;
  return Channel(validate(p), constants_);
}

real Channel::normalized(real gamma) const {
  return std::pow(gamma / static_cast<real>(params_.gamma_bar), static_cast<real>(params_.alpha) / 2) /
         static_cast<real>(constants_.c_alpha);
}

double Channel::snr_from_normalized(double u) const {
  return params_.gamma_bar * std::pow(constants_.c_alpha * u, 2.0 / params_.alpha);
}

real Channel::los_weight() const {
  if (constants_.beta_bar == 0) return 1;
  return std::pow(1 - static_cast<real>(constants_.beta_bar), static_cast<real>(params_.m_y));
}

// ---------------------------------------------------------------------------

namespace {

void require_gamma(double gamma, const char* who) {
  if (!(gamma >= 0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << who << ": gamma must be >= 0 (got " << gamma << ")";
    throw DomainError(msg.str());
  }
}

// log of alpha (1 - beta_bar)^m_y / (2 C^m_x Gamma(m_x) gamma_bar), the pdf
// prefactor shared by the exact and asymptotic forms.
real log_pdf_prefactor(const Channel& ch) {
  const auto& p = ch.params();
  const auto& c = ch.constants();
  return std::log(static_cast<real>(p.alpha) / 2) + std::log(ch.los_weight()) -
         static_cast<real>(p.m_x) * std::log(static_cast<real>(c.c_alpha)) -
         sf::detail::lgamma_ld(p.m_x) - std::log(static_cast<real>(p.gamma_bar));
}

// Value at gamma = 0 of a density behaving like gamma^(nu - 1).
double pdf_at_zero(const Channel& ch) {
  const real nu = static_cast<real>(ch.params().alpha) * ch.params().m_x / 2;
  if (std::fabs(nu - 1) <= 1e-12L) return static_cast<double>(std::exp(log_pdf_prefactor(ch)));
  if (nu > 1) return 0.0;
  return std::numeric_limits<double>::infinity();
}

// Negative-binomial mixture weights w_k = (1 - b)^m_y (m_y)_k b^k / k!.
class MixtureWeights {
 public:
  explicit MixtureWeights(const Channel& ch)
      : m_y_(ch.params().m_y), b_(ch.constants().beta_bar), w_(ch.los_weight()) {}
  real current() const { return w_; }
  /// True once the weights are nonincreasing from here on.
  bool past_mode() const { return k_ + 1 >= (m_y_ - 1) * b_ / (1 - b_); }
  void advance() {
    w_ *= (m_y_ + k_) * b_ / (k_ + 1);
    ++k_;
  }

 private:
  real m_y_, b_, w_;
  int k_ = 0;
};

template <class IncGamma>
double mixture_series(const Channel& ch, real u, sf::SeriesControl ctl, IncGamma inc, const char* who) {
  const real mx = ch.params().m_x;
  if (ch.constants().beta_bar == 0) return static_cast<double>(inc(mx, u));
  MixtureWeights w(ch);
  sf::SeriesSum sum(ctl);
  for (int k = 0;; ++k) {
    const real term = w.current() * inc(mx + k, u);
    // Small terms before the weights peak say nothing about convergence.
    if (sum.add(term) && w.past_mode()) break;
    if (sum.exhausted()) {
      std::ostringstream msg;
      msg << who << ": series not converged within " << ctl.max_terms << " terms";
      throw ConvergenceError(msg.str());
    }
    w.advance();
  }
  return static_cast<double>(sum.value());
}

}  // namespace

double snr_pdf(const Channel& ch, double gamma) {
  require_gamma(gamma, "snr_pdf");
  if (gamma == 0) return pdf_at_zero(ch);
  if (std::isinf(gamma)) return 0.0;
  const auto& p = ch.params();
  const real nu = static_cast<real>(p.alpha) * p.m_x / 2;
  const real u = ch.normalized(gamma);
  real log_f = log_pdf_prefactor(ch) + (nu - 1) * std::log(gamma / static_cast<real>(p.gamma_bar)) - u;
  if (ch.constants().beta_bar > 0) {
    log_f += sf::detail::log_kummer_1f1_ld(p.m_y, p.m_x, ch.constants().beta_bar * u, {});
  }
  return static_cast<double>(std::exp(log_f));
}

double snr_cdf(const Channel& ch, double gamma, sf::SeriesControl ctl) {
  require_gamma(gamma, "snr_cdf");
  if (gamma == 0) return 0.0;
  if (std::isinf(gamma)) return 1.0;
  return mixture_series(ch, ch.normalized(gamma), ctl, sf::detail::reg_lower_inc_gamma_ld, "snr_cdf");
}

double snr_ccdf(const Channel& ch, double gamma, sf::SeriesControl ctl) {
  require_gamma(gamma, "snr_ccdf");
  if (gamma == 0) return 1.0;
  if (std::isinf(gamma)) return 0.0;
  return mixture_series(ch, ch.normalized(gamma), ctl, sf::detail::reg_upper_inc_gamma_ld, "snr_ccdf");
}

double snr_cdf_phi2(const Channel& ch, double gamma, sf::SeriesControl ctl) {
  require_gamma(gamma, "snr_cdf_phi2");
  if (gamma == 0) return 0.0;
  if (std::isinf(gamma)) return 1.0;
  const auto& p = ch.params();
  const real mx = p.m_x;
  const real u = ch.normalized(gamma);
  const real bb = ch.constants().beta_bar;
  const real log_pref = std::log(ch.los_weight()) + mx * std::log(u) - u - sf::detail::lgamma_ld(mx + 1);
  const real phi2 = sf::detail::appell_phi2_ld(1, p.m_y, mx + 1, u, bb * u, ctl);
  return static_cast<double>(std::exp(log_pref) * phi2);
}

double snr_pdf_asymptotic(const Channel& ch, double gamma) {
  require_gamma(gamma, "snr_pdf_asymptotic");
  if (gamma == 0) return pdf_at_zero(ch);
  const auto& p = ch.params();
  const real nu = static_cast<real>(p.alpha) * p.m_x / 2;
  return static_cast<double>(
      std::exp(log_pdf_prefactor(ch) + (nu - 1) * std::log(gamma / static_cast<real>(p.gamma_bar))));
}

double snr_cdf_asymptotic(const Channel& ch, double gamma) {
  require_gamma(gamma, "snr_cdf_asymptotic");
  if (gamma == 0) return 0.0;
  const auto& p = ch.params();
  const real mx = p.m_x;
  const real nu = static_cast<real>(p.alpha) * mx / 2;
  // (1 - beta_bar)^m_y (gamma / gamma_bar)^nu / (C^m_x Gamma(m_x + 1))
  const real log_f = std::log(ch.los_weight()) + nu * std::log(gamma / static_cast<real>(p.gamma_bar)) -
                     mx * std::log(static_cast<real>(ch.constants().c_alpha)) - sf::detail::lgamma_ld(mx + 1);
  return static_cast<double>(std::exp(log_f));
}

}  // namespace abxs
