#include "abxs/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "abxs/errors.hpp"

namespace abxs {

namespace sf = specfun;
using sf::real;

namespace {

constexpr real kPi = std::numbers::pi_v<real>;
constexpr real kLn2 = std::numbers::ln2_v<real>;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_int(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

[[noreturn]] void bad_modulation(const std::string& what) {
  throw ValidationError("modulation", what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Modulation schemes

void ModulationScheme::validate() const {
  if (!(delta1 > 0) || !std::isfinite(delta1)) bad_modulation("delta1 must be > 0");
  if (delta2.empty()) bad_modulation("delta2 must not be empty");
  for (double d : delta2) {
    if (!(d > 0) || !std::isfinite(d)) bad_modulation("every delta2 entry must be > 0");
  }
}

ModulationScheme modulation_coeffs(ModulationKind kind, int order) {
  ModulationScheme s;
  switch (kind) {
    case ModulationKind::BPSK:
      if (order != 2) bad_modulation("BPSK has order 2");
      s.name = "BPSK";
      s.delta1 = 1.0;
      s.delta2 = {1.0};
      break;
    case ModulationKind::MPSK: {
      if (order < 2 || !is_power_of_two(order)) bad_modulation("PSK order must be a power of two >= 2");
      s.name = "PSK-" + std::to_string(order);
      s.delta1 = 2.0 / std::max(log2_int(order), 2);
      const int terms = std::max(order / 4, 1);
      s.delta2.clear();
      for (int j = 1; j <= terms; ++j) {
        const double sn = std::sin((2 * j - 1) * std::numbers::pi / order);
        s.delta2.push_back(sn * sn);
      }
      break;
    }
    case ModulationKind::MQAM: {
      const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
      if (order < 4 || root * root != order || !is_power_of_two(order)) {
        bad_modulation("QAM order must be a square power of two >= 4");
      }
      s.name = "QAM-" + std::to_string(order);
      s.delta1 = 4.0 * (1.0 - 1.0 / root) / log2_int(order);
      s.delta2.clear();
      for (int j = 1; j <= root / 2; ++j) {
        s.delta2.push_back(3.0 * (2 * j - 1) * (2 * j - 1) / (2.0 * (order - 1)));
      }
      break;
    }
    case ModulationKind::MFSKCoherent:
      if (order < 2 || !is_power_of_two(order)) bad_modulation("FSK order must be a power of two >= 2");
      s.name = "FSK-" + std::to_string(order);
      s.delta1 = order / 2.0;
      s.delta2 = {0.5};
      break;
  }
  return s;
}

ModulationScheme parse_modulation(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != '-' && c != '_') t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (t == "bpsk") return modulation_coeffs(ModulationKind::BPSK, 2);
  if (t == "qpsk") return modulation_coeffs(ModulationKind::MPSK, 4);
  struct Prefix {
    const char* text;
    ModulationKind kind;
  };
  for (const Prefix& p : {Prefix{"qam", ModulationKind::MQAM}, Prefix{"psk", ModulationKind::MPSK},
                          Prefix{"fsk", ModulationKind::MFSKCoherent}}) {
    const std::string prefix = p.text;
    std::string digits;
    if (t.rfind(prefix, 0) == 0) {
      digits = t.substr(prefix.size());
    } else if (t.size() > prefix.size() && t.compare(t.size() - prefix.size(), prefix.size(), prefix) == 0) {
      digits = t.substr(0, t.size() - prefix.size());
    } else {
      continue;
    }
    int order = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty()) break;
    return modulation_coeffs(p.kind, order);
  }
  bad_modulation("unknown scheme '" + text + "' (expected bpsk, qpsk, qamM, pskM or fskM)");
}

const char* to_string(EvalPath path) {
  switch (path) {
    case EvalPath::MeijerG:
      return "meijer-g";
    case EvalPath::SeriesQuadrature:
      return "series-quadrature";
    case EvalPath::Oracle:
      return "oracle";
    case EvalPath::Asymptotic:
      return "asymptotic";
  }
  return "?";
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

quad::Options default_oracle_options() { return {0.0, 1e-10, 4000}; }

// ---------------------------------------------------------------------------
// Shared machinery

namespace {

// Delta(n, x) = {x/n, (x+1)/n, ..., (x+n-1)/n}.
void append_delta(std::vector<double>& out, long n, double x) {
  for (long i = 0; i < n; ++i) out.push_back((x + static_cast<double>(i)) / static_cast<double>(n));
}

real log_mixture_weight(const Channel& ch, int k) {
  const real my = ch.params().m_y;
  const real b = ch.constants().beta_bar;
  real lw = std::log(ch.los_weight());
  if (k > 0) {
    lw += sf::detail::lgamma_ld(my + k) - sf::detail::lgamma_ld(my) - sf::detail::lgamma_ld(k + 1.0L) +
          k * std::log(b);
  }
  return lw;
}

bool past_weight_mode(const Channel& ch, int k) {
  const real b = ch.constants().beta_bar;
  return k + 1 >= (static_cast<real>(ch.params().m_y) - 1) * b / (1 - b);
}

// Sums term(k) for k = 0, 1, ... under the series control. Stops only past
// the mode of the mixture weights, so a slowly rising weight sequence cannot
// end the sum early.
template <class Term>
MetricResult mixture_sum(const Channel& ch, const sf::SeriesControl& ctl, Term term) {
  MetricResult out;
  if (ch.constants().beta_bar == 0) {
    out.value = static_cast<double>(term(0));
    out.terms_used = 1;
    return out;
  }
  sf::SeriesSum sum(ctl);
  for (int k = 0;; ++k) {
    const bool small = sum.add(term(k));
    if (small && past_weight_mode(ch, k)) break;
    if (sum.exhausted()) {
      out.truncated = true;
      break;
    }
  }
  out.value = static_cast<double>(sum.value());
  out.terms_used = sum.terms();
  return out;
}

// Snapshot of what the Meijer G route needs for one channel.
struct MeijerSetup {
  long p = 1;
  long q = 1;
  real log_scale = 0;  // log(q C_alpha gamma_bar^(alpha/2))
};

std::optional<MeijerSetup> meijer_setup(const Channel& ch, const ExactOptions& opts) {
  auto pq = try_rationalize_alpha(ch.params().alpha, opts.rationalize_tol, opts.max_q);
  if (!pq) return std::nullopt;
  MeijerSetup s;
  s.p = pq->p;
  s.q = pq->q;
  s.log_scale = std::log(static_cast<real>(s.q)) + std::log(static_cast<real>(ch.constants().c_alpha)) +
                static_cast<real>(ch.params().alpha) / 2 * std::log(static_cast<real>(ch.params().gamma_bar));
  return s;
}

// k-th mixture term of the ABER for one modulation term delta, without the
// mixture weight and without delta1.
real aber_meijer_term(const MeijerSetup& s, real a, real delta, const sf::MeijerGOptions& mopts,
                      bool* warned) {
  const long p = s.p, q = s.q;
  sf::MeijerGSpec spec;
  spec.m = static_cast<int>(q);
  spec.n = static_cast<int>(p + 1);
  append_delta(spec.a, p, 0.5);
  spec.a.push_back(1.0);
  append_delta(spec.b, q, static_cast<double>(a));
  spec.b.push_back(0.0);
  const real log_z = p * std::log(p / delta) - q * s.log_scale;
  const auto g = sf::meijer_g_log(spec, log_z, mopts);
  if (g.precision_warning) *warned = true;
  const real log_pref = 0.5L * std::log(kPi) + (a - 0.5L) * std::log(static_cast<real>(q)) -
                        sf::detail::lgamma_ld(a) - (p + q) / 2.0L * std::log(2 * kPi);
  return std::exp(log_pref) * g.value;
}

real capacity_meijer_term(const MeijerSetup& s, real a, const sf::MeijerGOptions& mopts, bool* warned) {
  const long p = s.p, q = s.q;
  sf::MeijerGSpec spec;
  spec.m = static_cast<int>(q + p + 1);
  spec.n = static_cast<int>(p);
  append_delta(spec.a, p, 0.0);
  spec.a.push_back(1.0);
  append_delta(spec.b, p, 0.0);
  append_delta(spec.b, q, static_cast<double>(a));
  spec.b.push_back(0.0);
  const real log_z = -q * s.log_scale;
  const auto g = sf::meijer_g_log(spec, log_z, mopts);
  if (g.precision_warning) *warned = true;
  const real log_pref = ((3.0L - q) / 2 - p) * std::log(2 * kPi) + (a - 0.5L) * std::log(static_cast<real>(q)) -
                        sf::detail::lgamma_ld(a) - std::log(kLn2);
  return std::exp(log_pref) * g.value;
}

// Layout for integrals over the SNR density: the [0, split] piece absorbs the
// gamma^(nu - 1) endpoint, breakpoints sit at the density's and the
// integrand's natural scales.
quad::SemiInfinite snr_layout(const Channel& ch, const std::vector<double>& scales, double endpoint_power) {
  quad::SemiInfinite layout;
  const double body = ch.snr_from_normalized(1.0);
  double split = body;
  for (double s : scales) split = std::min(split, s);
  layout.split = split;
  layout.endpoint_power = endpoint_power;
  layout.tail_scale = split;
  for (double u : {0.25, 1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) {
    layout.breakpoints.push_back(ch.snr_from_normalized(u));
  }
  for (double s : scales) {
    for (double f : {1.0, 4.0, 16.0, 64.0}) layout.breakpoints.push_back(s * f);
  }
  return layout;
}

void require_converged(const quad::Result<double>& r, const char* who) {
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(3);
    msg << who << ": quadrature did not converge (error estimate " << r.error << " for value " << r.value
        << ")";
    throw ConvergenceError(msg.str());
  }
}

double aber_q_sum(const ModulationScheme& mod, double gamma) {
  double s = 0;
  for (double d : mod.delta2) s += gaussian_q(std::sqrt(2 * d * gamma));
  return mod.delta1 * s;
}

// Integral over u ~ Gamma(a, 1) of sum_j Q(sqrt(2 delta_j gamma(u))).
double aber_gamma_component(const Channel& ch, const ModulationScheme& mod, double a,
                            const quad::Options& opts) {
  const real lg = sf::detail::lgamma_ld(a);
  auto integrand = [&](double u) {
    if (u <= 0) return 0.0;
    const double dens = static_cast<double>(std::exp((a - 1) * std::log(static_cast<real>(u)) - u - lg));
    return dens == 0 ? 0.0 : aber_q_sum(mod, ch.snr_from_normalized(u)) * dens;
  };
  quad::SemiInfinite layout;
  double split = std::min(1.0, a);
  std::vector<double> bps{1.0, a, 4 * a, 16 * a, a + 10 * std::sqrt(a) + 10};
  for (double d : mod.delta2) {
    const double u_knee = static_cast<double>(ch.normalized(1.0 / d));
    split = std::min(split, u_knee);
    for (double f : {1.0, 4.0, 16.0}) bps.push_back(u_knee * f);
  }
  layout.split = split;
  layout.endpoint_power = a;
  layout.tail_scale = std::max(split, 1.0);
  layout.breakpoints = bps;
  auto r = quad::integrate_semi_infinite(integrand, layout, opts);
  require_converged(r, "aber_series_quadrature");
  return r.value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Distribution oracle

double cdf_quadrature(const Channel& ch, double gamma, const quad::Options& opts) {
  if (!(gamma >= 0)) throw DomainError("cdf_quadrature: gamma must be >= 0");
  if (gamma == 0) return 0.0;
  if (std::isinf(gamma)) return 1.0;
  // x = gamma v^(1/nu) absorbs the x^(nu - 1) endpoint; beyond the density
  // body the rest is split at the natural scale points.
  const double nu = ch.params().alpha * ch.params().m_x / 2;
  const double head = std::min(gamma, ch.snr_from_normalized(1.0));
  std::vector<quad::Segment<double>> segs;
  segs.push_back({[&](double v) {
                    if (v <= 0) return 0.0;
                    const double x = head * std::pow(v, 1.0 / nu);
                    const double f = snr_pdf(ch, x);
                    return f == 0 ? 0.0 : f * x / (nu * v);
                  },
                  0.0, 1.0});
  double lo = head;
  for (double u : {4.0, 16.0, 64.0, 256.0}) {
    const double x = std::min(gamma, ch.snr_from_normalized(u));
    if (x > lo) segs.push_back({[&](double g) { return snr_pdf(ch, g); }, lo, x});
    lo = std::max(lo, x);
  }
  if (gamma > lo) segs.push_back({[&](double g) { return snr_pdf(ch, g); }, lo, gamma});
  auto r = quad::integrate_segments<double>(segs, opts);
  require_converged(r, "cdf_quadrature");
  return r.value;
}

// ---------------------------------------------------------------------------
// ABER

AberResult aber_quadrature(const Channel& ch, const ModulationScheme& mod, const quad::Options& opts) {
  mod.validate();
  std::vector<double> scales;
  for (double d : mod.delta2) scales.push_back(1.0 / d);
  const double nu = ch.params().alpha * ch.params().m_x / 2;
  auto r = quad::integrate_semi_infinite(
      [&](double g) {
        const double f = snr_pdf(ch, g);
        return f == 0 ? 0.0 : aber_q_sum(mod, g) * f;
      },
      snr_layout(ch, scales, nu), opts);
  require_converged(r, "aber_quadrature");
  AberResult out;
  out.value = r.value;
  out.path = EvalPath::Oracle;
  return out;
}

std::vector<double> aber_exact_terms(const Channel& ch, const ModulationScheme& mod, int count,
                                     const sf::MeijerGOptions& meijer) {
  mod.validate();
  ExactOptions eo;
  eo.meijer = meijer;
  eo.max_q = 1 << 20;
  const auto setup = meijer_setup(ch, eo);
  if (!setup) throw DomainError("aber_exact_terms: alpha/2 has no rational form");
  std::vector<double> out;
  bool warned = false;
  for (int k = 0; k < count; ++k) {
    if (ch.constants().beta_bar == 0 && k > 0) {
      out.push_back(0.0);
      continue;
    }
    const real a = static_cast<real>(ch.params().m_x) + k;
    real s = 0;
    for (double d : mod.delta2) s += aber_meijer_term(*setup, a, d, meijer, &warned);
    out.push_back(static_cast<double>(std::exp(log_mixture_weight(ch, k)) * mod.delta1 * s));
  }
  return out;
}

std::vector<double> aber_series_quadrature_terms(const Channel& ch, const ModulationScheme& mod, int count,
                                                 const quad::Options& opts) {
  mod.validate();
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    if (ch.constants().beta_bar == 0 && k > 0) {
      out.push_back(0.0);
      continue;
    }
    const double c = aber_gamma_component(ch, mod, ch.params().m_x + k, opts);
    out.push_back(static_cast<double>(std::exp(log_mixture_weight(ch, k))) * c);
  }
  return out;
}

AberResult aber_series_quadrature(const Channel& ch, const ModulationScheme& mod, const ExactOptions& opts) {
  mod.validate();
  auto out = mixture_sum(ch, opts.series, [&](int k) -> real {
    return std::exp(log_mixture_weight(ch, k)) *
           aber_gamma_component(ch, mod, ch.params().m_x + k, opts.quadrature);
  });
  out.path = EvalPath::SeriesQuadrature;
  return out;
}

AberResult aber_exact(const Channel& ch, const ModulationScheme& mod, const ExactOptions& opts) {
  mod.validate();
  const auto setup = meijer_setup(ch, opts);
  if (!setup) return aber_series_quadrature(ch, mod, opts);
  try {
    bool warned = false;
    auto out = mixture_sum(ch, opts.series, [&](int k) -> real {
      const real a = static_cast<real>(ch.params().m_x) + k;
      real s = 0;
      for (double d : mod.delta2) s += aber_meijer_term(*setup, a, d, opts.meijer, &warned);
      return std::exp(log_mixture_weight(ch, k)) * mod.delta1 * s;
    });
    out.path = EvalPath::MeijerG;
    out.precision_warning = warned;
    return out;
  } catch (const NumericalError&) {
    return aber_series_quadrature(ch, mod, opts);
  }
}

namespace {

real coding_gain_ld(const Channel& ch, const ModulationScheme& mod) {
  const auto& p = ch.params();
  const real mx = p.m_x;
  const real nu = static_cast<real>(p.alpha) * mx / 2;
  real s = 0;
  for (double d : mod.delta2) s += std::pow(static_cast<real>(d), -nu);
  const real log_g = std::log(ch.los_weight()) + sf::detail::lgamma_ld(nu + 0.5L) -
                     std::log(2 * std::sqrt(kPi)) -
                     mx * std::log(static_cast<real>(ch.constants().c_alpha)) - sf::detail::lgamma_ld(mx + 1);
  return mod.delta1 * std::exp(log_g) * s;
}

}  // namespace

AberResult aber_asymptotic(const Channel& ch, const ModulationScheme& mod) {
  mod.validate();
  const auto& p = ch.params();
  const real gd = static_cast<real>(p.alpha) * p.m_x / 2;
  AberResult out;
  out.value = static_cast<double>(coding_gain_ld(ch, mod) * std::pow(static_cast<real>(p.gamma_bar), -gd));
  out.path = EvalPath::Asymptotic;
  return out;
}

double diversity_order(const ChannelParams& params) {
  validate(params);
  return params.alpha * params.m_x / 2;
}

double coding_gain(const ChannelParams& params, const ModulationScheme& mod) {
  mod.validate();
  return static_cast<double>(coding_gain_ld(Channel(params), mod));
}

// ---------------------------------------------------------------------------
// Capacity

CapacityResult capacity_quadrature(const Channel& ch, const quad::Options& opts) {
  const double nu = ch.params().alpha * ch.params().m_x / 2;
  auto r = quad::integrate_semi_infinite(
      [&](double g) {
        const double f = snr_pdf(ch, g);
        return f == 0 ? 0.0 : std::log1p(g) / std::numbers::ln2 * f;
      },
      snr_layout(ch, {1.0}, nu + 1), opts);
  require_converged(r, "capacity_quadrature");
  CapacityResult out;
  out.value = r.value;
  out.path = EvalPath::Oracle;
  return out;
}

std::vector<double> capacity_exact_terms(const Channel& ch, int count, const sf::MeijerGOptions& meijer) {
  ExactOptions eo;
  eo.meijer = meijer;
  eo.max_q = 1 << 20;
  const auto setup = meijer_setup(ch, eo);
  if (!setup) throw DomainError("capacity_exact_terms: alpha/2 has no rational form");
  std::vector<double> out;
  bool warned = false;
  for (int k = 0; k < count; ++k) {
    if (ch.constants().beta_bar == 0 && k > 0) {
      out.push_back(0.0);
      continue;
    }
    const real a = static_cast<real>(ch.params().m_x) + k;
    out.push_back(static_cast<double>(std::exp(log_mixture_weight(ch, k)) *
                                      capacity_meijer_term(*setup, a, meijer, &warned)));
  }
  return out;
}

CapacityResult capacity_ccdf_quadrature(const Channel& ch, const ExactOptions& opts) {
  auto r = quad::integrate_semi_infinite([&](double g) { return snr_ccdf(ch, g) / (1 + g); },
                                         snr_layout(ch, {1.0}, 1.0), opts.quadrature);
  require_converged(r, "capacity_ccdf_quadrature");
  CapacityResult out;
  out.value = r.value / std::numbers::ln2;
  out.path = EvalPath::SeriesQuadrature;
  return out;
}

CapacityResult capacity_exact(const Channel& ch, const ExactOptions& opts) {
  const auto setup = meijer_setup(ch, opts);
  if (!setup) return capacity_ccdf_quadrature(ch, opts);
  try {
    bool warned = false;
    auto out = mixture_sum(ch, opts.series, [&](int k) -> real {
      const real a = static_cast<real>(ch.params().m_x) + k;
      return std::exp(log_mixture_weight(ch, k)) * capacity_meijer_term(*setup, a, opts.meijer, &warned);
    });
    out.path = EvalPath::MeijerG;
    out.precision_warning = warned;
    return out;
  } catch (const NumericalError&) {
    return capacity_ccdf_quadrature(ch, opts);
  }
}

double capacity_asymptotic(const Channel& ch) {
  const auto& p = ch.params();
  const auto& c = ch.constants();
  real bracket = std::log(static_cast<real>(c.c_alpha)) +
                 static_cast<real>(p.alpha) / 2 * std::log(static_cast<real>(p.gamma_bar)) +
                 sf::detail::digamma_ld(p.m_x);
  if (c.beta_bar > 0) {
    bracket += ch.los_weight() * static_cast<real>(sf::gauss_2f1_da(p.m_x, p.m_y, p.m_x, c.beta_bar));
  }
  return static_cast<double>(2 / (static_cast<real>(p.alpha) * kLn2) * bracket);
}

}  // namespace abxs
