#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "abxs/errors.hpp"
#include "abxs/quadrature.hpp"
#include "abxs/specfun.hpp"

namespace abxs::specfun {

namespace {

using cplx = std::complex<real>;

constexpr real kHalfLog2Pi = 0.918938533204672741780329736405617639L;
constexpr real kPi = std::numbers::pi_v<real>;

// log Gamma(w) up to a multiple of 2*pi*i, which is all exp() needs.
cplx clgamma(cplx w) {
  cplx shift_product = 1;
  bool shifted = false;
  while (w.real() < 15) {
    shift_product *= w;
    w += 1;
    shifted = true;
  }
  const cplx inv = 1.0L / w;
  const cplx inv2 = inv * inv;
  // B_{2k} / (2k (2k - 1))
  static constexpr real c[] = {1.0L / 12,        -1.0L / 360,       1.0L / 1260,
                               -1.0L / 1680,     1.0L / 1188,       -691.0L / 360360,
                               1.0L / 156,       -3617.0L / 122400};
  cplx series = c[7];
  for (int k = 6; k >= 0; --k) series = c[k] + inv2 * series;
  cplx result = (w - 0.5L) * std::log(w) - w + kHalfLog2Pi + series * inv;
  if (shifted) result -= std::log(shift_product);
  return result;
}

bool integer_apart(real x, real y, real tol) {
  const real d = x - y;
  return std::fabs(d - std::nearbyint(d)) <= tol;
}

struct Params {
  int m, n;
  std::vector<real> a, b;
  int p() const { return static_cast<int>(a.size()); }
  int q() const { return static_cast<int>(b.size()); }
};

struct SeriesOutcome {
  real value = 0;
  real max_term = 0;
  int terms = 0;
  bool converged = true;
};

// Accumulates sign and log-magnitude of a product of Gamma factors.
struct LogGammaProduct {
  real log_mag = 0;
  int sign = 1;
  bool zero = false;

  void mul(real x) {
    if (detail::is_nonpositive_integer(x, 1e-14L)) {
      throw DomainError("meijer_g: contour cannot separate the pole sets");
    }
    int s = 1;
    log_mag += detail::lgamma_signed(x, &s);
    sign *= s;
  }
  void div(real x) {
    if (detail::is_nonpositive_integer(x, 1e-14L)) {
      zero = true;  // 1 / Gamma(pole)
      return;
    }
    int s = 1;
    log_mag -= detail::lgamma_signed(x, &s);
    sign *= s;
  }
};

// Residues at s = b_h + nu for every h < m.
SeriesOutcome slater_small_z(const Params& g, real log_z, const MeijerGOptions& opts) {
  SeriesOutcome out;
  const real z = std::exp(log_z);
  for (int h = 0; h < g.m; ++h) {
    const real bh = g.b[h];
    // First index at which no reciprocal Gamma in the denominator sits at a pole.
    int nu0 = 0;
    bool all_zero = false;
    for (int j = g.n; j < g.p(); ++j) {
      if (detail::is_nonpositive_integer(g.a[j] - bh, 1e-14L)) all_zero = true;
    }
    for (int j = g.m; j < g.q(); ++j) {
      const real x = 1 + bh - g.b[j];
      if (detail::is_nonpositive_integer(x, 1e-14L)) {
        nu0 = std::max(nu0, static_cast<int>(std::nearbyint(-x)) + 1);
      }
    }
    if (all_zero) continue;

    LogGammaProduct t0;
    t0.log_mag = -detail::lgamma_ld(nu0 + 1.0L) + (bh + nu0) * log_z;
    t0.sign = (nu0 % 2 == 0) ? 1 : -1;
    for (int j = 0; j < g.m; ++j) {
      if (j != h) t0.mul(g.b[j] - bh - nu0);
    }
    for (int j = 0; j < g.n; ++j) t0.mul(1 - g.a[j] + bh + nu0);
    for (int j = g.m; j < g.q(); ++j) t0.div(1 - g.b[j] + bh + nu0);
    for (int j = g.n; j < g.p(); ++j) t0.div(g.a[j] - bh - nu0);
    if (t0.zero) continue;

    real term = t0.sign * std::exp(t0.log_mag);
    SeriesSum sum(opts.series);
    bool done = sum.add(term);
    for (int nu = nu0; !done && !sum.exhausted(); ++nu) {
      real num = -z / (nu + 1);
      real den = 1;
      for (int j = 0; j < g.n; ++j) num *= 1 - g.a[j] + bh + nu;
      for (int j = g.n; j < g.p(); ++j) num *= g.a[j] - bh - nu - 1;
      for (int j = 0; j < g.m; ++j) {
        if (j != h) den *= g.b[j] - bh - nu - 1;
      }
      for (int j = g.m; j < g.q(); ++j) den *= 1 - g.b[j] + bh + nu;
      term *= num / den;
      done = sum.add(term);
      if (term == 0) done = true;  // terminating series
    }
    out.value += sum.value();
    out.max_term = std::max(out.max_term, sum.max_abs_term());
    out.terms += sum.terms();
    if (!done) out.converged = false;
  }
  return out;
}

// Residues at s = a_h - 1 - nu for every h < n.
SeriesOutcome slater_large_z(const Params& g, real log_z, const MeijerGOptions& opts) {
  SeriesOutcome out;
  const real inv_z = std::exp(-log_z);
  for (int h = 0; h < g.n; ++h) {
    const real ah = g.a[h];
    int nu0 = 0;
    bool all_zero = false;
    for (int j = g.m; j < g.q(); ++j) {
      if (detail::is_nonpositive_integer(ah - g.b[j], 1e-14L)) all_zero = true;
    }
    for (int j = g.n; j < g.p(); ++j) {
      const real x = g.a[j] - ah + 1;
      if (detail::is_nonpositive_integer(x, 1e-14L)) {
        nu0 = std::max(nu0, static_cast<int>(std::nearbyint(-x)) + 1);
      }
    }
    if (all_zero) continue;

    real s = ah - 1 - nu0;
    LogGammaProduct t0;
    t0.log_mag = -detail::lgamma_ld(nu0 + 1.0L) + s * log_z;
    t0.sign = (nu0 % 2 == 0) ? 1 : -1;
    for (int j = 0; j < g.m; ++j) t0.mul(g.b[j] - s);
    for (int j = 0; j < g.n; ++j) {
      if (j != h) t0.mul(1 - g.a[j] + s);
    }
    for (int j = g.m; j < g.q(); ++j) t0.div(1 - g.b[j] + s);
    for (int j = g.n; j < g.p(); ++j) t0.div(g.a[j] - s);
    if (t0.zero) continue;

    real term = t0.sign * std::exp(t0.log_mag);
    SeriesSum sum(opts.series);
    bool done = sum.add(term);
    for (int nu = nu0; !done && !sum.exhausted(); ++nu) {
      real num = -inv_z / (nu + 1);
      real den = 1;
      for (int j = 0; j < g.m; ++j) num *= g.b[j] - s;
      for (int j = g.m; j < g.q(); ++j) num *= s - g.b[j];
      for (int j = 0; j < g.n; ++j) {
        if (j != h) den *= s - g.a[j];
      }
      for (int j = g.n; j < g.p(); ++j) den *= g.a[j] - s;
      term *= num / den;
      s -= 1;
      done = sum.add(term);
      if (term == 0) done = true;
    }
    out.value += sum.value();
    out.max_term = std::max(out.max_term, sum.max_abs_term());
    out.terms += sum.terms();
    if (!done) out.converged = false;
  }
  return out;
}

// log|Phi(c)| on the real axis, Phi being the Mellin-Barnes integrand.
real log_abs_integrand_real(const Params& g, real log_z, real c) {
  real v = c * log_z;
  for (int j = 0; j < g.m; ++j) v += detail::lgamma_ld(g.b[j] - c);
  for (int j = 0; j < g.n; ++j) v += detail::lgamma_ld(1 - g.a[j] + c);
  for (int j = g.m; j < g.q(); ++j) v -= detail::lgamma_ld(1 - g.b[j] + c);
  for (int j = g.n; j < g.p(); ++j) v -= detail::lgamma_ld(g.a[j] - c);
  return v;
}

cplx log_integrand(const Params& g, real log_z, cplx s) {
  cplx v = s * log_z;
  for (int j = 0; j < g.m; ++j) v += clgamma(g.b[j] - s);
  for (int j = 0; j < g.n; ++j) v += clgamma(1 - g.a[j] + s);
  for (int j = g.m; j < g.q(); ++j) v -= clgamma(1 - g.b[j] + s);
  for (int j = g.n; j < g.p(); ++j) v -= clgamma(g.a[j] - s);
  return v;
}

MeijerGResult contour(const Params& g, real log_z, const MeijerGOptions& opts) {
  const real kappa = g.m + g.n - 0.5L * (g.p() + g.q());
  if (!(kappa > 0)) {
    throw ConvergenceError("meijer_g: Mellin-Barnes integrand does not decay (m+n <= (p+q)/2)");
  }
  constexpr real inf = std::numeric_limits<real>::infinity();
  real lo = -inf, hi = inf;
  for (int j = 0; j < g.n; ++j) lo = std::max(lo, g.a[j] - 1);
  for (int j = 0; j < g.m; ++j) hi = std::min(hi, g.b[j]);
  if (!(lo < hi)) {
    throw ConvergenceError("meijer_g: no vertical contour separates the pole sets");
  }
  real left, right;
  if (std::isfinite(lo) && std::isfinite(hi)) {
    const real w = hi - lo;
    left = lo + 0.02L * w;
    right = hi - 0.02L * w;
  } else if (std::isfinite(hi)) {
    left = hi - 10;
    right = hi - 0.05L;
  } else if (std::isfinite(lo)) {
    left = lo + 0.05L;
    right = lo + 10;
  } else {
    left = -5;
    right = 5;
  }
  // Default to the midpoint, then slide to the real-axis minimum of |Phi|,
  // which is where the line crosses the saddle.
  real c0 = 0.5L * (left + right);
  real best = log_abs_integrand_real(g, log_z, c0);
  constexpr int kGrid = 64;
  for (int i = 0; i <= kGrid; ++i) {
    const real c = left + (right - left) * i / kGrid;
    const real v = log_abs_integrand_real(g, log_z, c);
    if (std::isfinite(v) && v < best) {
      best = v;
      c0 = c;
    }
  }
  // Tail cut: |Phi| below 1e-22 of its value on the real axis.
  const real log_cut = best + std::log(1e-22L);
  real ymax = 1;
  while (std::real(log_integrand(g, log_z, cplx(c0, ymax))) > log_cut) {
    ymax *= 1.5L;
    if (ymax > 1e5L) throw ConvergenceError("meijer_g: contour tail does not decay");
  }
  // One more step guards against a non-monotone envelope.
  ymax *= 1.5L;

  const real scale = std::exp(best);
  auto integrand = [&](real y) -> real {
    const cplx v = log_integrand(g, log_z, cplx(c0, y));
    return std::exp(v.real() - best) * std::cos(v.imag());
  };
  quad::Options qo;
  qo.rel_tol = opts.contour_rel_tol;
  qo.abs_tol = 1e-18;  // relative to the real-axis magnitude (integrand is scaled)
  qo.max_intervals = 20000;
  auto r = quad::integrate<real>(integrand, 0.0L, ymax, qo);
  if (!r.converged && r.error > 1e-10L * std::max<real>(std::fabs(r.value), 1e-8L)) {
    std::ostringstream msg;
    msg << "meijer_g: contour quadrature did not stabilize (estimate " << r.value * scale / kPi
        << ", error " << r.error * scale / kPi << ")";
    throw ConvergenceError(msg.str());
  }
  MeijerGResult out;
  out.value = r.value * scale / kPi;
  out.method = MeijerGMethod::Contour;
  out.precision_warning = true;
  out.terms = r.evaluations;
  return out;
}

bool has_collision(const std::vector<real>& v, int count, real tol) {
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (integer_apart(v[i], v[j], tol)) return true;
    }
  }
  return false;
}

}  // namespace

const char* to_string(MeijerGMethod method) {
  switch (method) {
    case MeijerGMethod::SlaterSmallZ: return "slater-small-z";
    case MeijerGMethod::SlaterLargeZ: return "slater-large-z";
    case MeijerGMethod::Contour: return "contour";
  }
  return "unknown";
}

void MeijerGSpec::validate() const {
  const int p = static_cast<int>(a.size());
  const int q = static_cast<int>(b.size());
  if (m < 0 || m > q || n < 0 || n > p) {
    throw DomainError("meijer_g: orders must satisfy 0 <= m <= q and 0 <= n <= p (" +
                      to_string() + ")");
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw DomainError("meijer_g: non-finite upper parameter");
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw DomainError("meijer_g: non-finite lower parameter");
  }
}

std::string MeijerGSpec::to_string() const {
  std::ostringstream s;
  s.precision(10);
  s << "G^{" << m << "," << n << "}_{" << a.size() << "," << b.size() << "}(a=[";
  for (std::size_t i = 0; i < a.size(); ++i) s << (i ? "," : "") << a[i];
  s << "]; b=[";
  for (std::size_t i = 0; i < b.size(); ++i) s << (i ? "," : "") << b[i];
  s << "])";
  return s.str();
}

MeijerGResult meijer_g_log(const MeijerGSpec& spec, real log_z, const MeijerGOptions& opts) {
  spec.validate();
  if (!std::isfinite(log_z)) throw DomainError("meijer_g: z must be positive and finite");
  Params g{spec.m, spec.n, {spec.a.begin(), spec.a.end()}, {spec.b.begin(), spec.b.end()}};

  for (int h = 0; h < g.m; ++h) {
    for (int j = 0; j < g.n; ++j) {
      if (detail::is_nonpositive_integer(1 - g.a[j] + g.b[h], 1e-12L)) {
        throw DomainError("meijer_g: poles of Gamma(b_h - s) and Gamma(1 - a_j + s) coincide (" +
                          spec.to_string() + ")");
      }
    }
  }

  const real tol = opts.collision_tol;
  const bool left_collision = has_collision(g.b, g.m, tol);
  const bool right_collision = has_collision(g.a, g.n, tol);
  // log(0.8) and log(1.25): outside this band the p == q series converge
  // quickly enough.
  const bool small_z_converges = g.q() > g.p() || (g.q() == g.p() && log_z < -0.2231435513L);
  const bool large_z_converges = g.p() > g.q() || (g.q() == g.p() && log_z > 0.2231435513L);

  auto accept = [&](const SeriesOutcome& s) {
    if (!s.converged) return false;
    if (s.value == 0) return s.max_term == 0;
    return s.max_term <= static_cast<real>(opts.max_cancellation) * std::fabs(s.value);
  };

  if (small_z_converges && !left_collision) {
    auto s = slater_small_z(g, log_z, opts);
    if (accept(s)) return {s.value, MeijerGMethod::SlaterSmallZ, false, false, s.terms};
  }
  if (large_z_converges && !right_collision) {
    auto s = slater_large_z(g, log_z, opts);
    if (accept(s)) return {s.value, MeijerGMethod::SlaterLargeZ, false, false, s.terms};
  }
  auto r = contour(g, log_z, opts);
  r.pole_collision = (small_z_converges && left_collision) || (large_z_converges && right_collision);
  return r;
}

MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double z, const MeijerGOptions& opts) {
  if (!(z > 0) || !std::isfinite(z)) throw DomainError("meijer_g: z must be positive and finite");
  return meijer_g_log(spec, std::log(static_cast<real>(z)), opts);
}

double meijer_g(const MeijerGSpec& spec, double z) {
  return static_cast<double>(meijer_g_eval(spec, z).value);
}

}  // namespace abxs::specfun
