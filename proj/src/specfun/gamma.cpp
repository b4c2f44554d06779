#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "abxs/errors.hpp"
#include "abxs/specfun.hpp"

namespace abxs::specfun {

namespace {

constexpr real kEuler = 0.577215664901532860606512090082402431L;
constexpr real kEps = std::numeric_limits<real>::epsilon();
constexpr real kTiny = std::numeric_limits<real>::min() / kEps;

void require(bool ok, const char* what, double value) {
  if (!ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " (got " << value << ")";
    throw DomainError(msg.str());
  }
}

// log of x^a e^{-x} / Gamma(a + 1), the common prefactor of P and Q.
real log_incgamma_prefactor(real a, real x) {
  return a * std::log(x) - x - detail::lgamma_ld(a + 1);
}

// P(a, x) by the power series; best for x < a + 1.
real lower_series(real a, real x) {
  real term = 1;
  real sum = 1;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return std::exp(log_incgamma_prefactor(a, x)) * sum;
    }
  }
  throw ConvergenceError("reg_lower_inc_gamma: series did not converge");
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); x >= a + 1
// or small a.
real upper_continued_fraction(real a, real x) {
  real b = x + 1 - a;
  real c = 1 / kTiny;
  real d = 1 / b;
  real h = d;
  for (int i = 1; i < 100000; ++i) {
    const real an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const real delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < kEps) {
      // prefactor x^a e^{-x} / Gamma(a)
      return std::exp(a * std::log(x) - x - detail::lgamma_ld(a)) * h;
    }
  }
  throw ConvergenceError("reg_upper_inc_gamma: continued fraction did not converge");
}

bool use_continued_fraction(real a, real x) {
  return x >= a + 1 || (a < 1 && x >= 1);
}

}  // namespace

// ---------------------------------------------------------------------------

void SeriesControl::validate() const {
  if (!(rel_tol > 0)) throw DomainError("SeriesControl: rel_tol must be > 0");
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
}

SeriesSum::SeriesSum(SeriesControl ctl) : ctl_(ctl) { ctl_.validate(); }

bool SeriesSum::add(real term) {
  sum_ += term;
  ++terms_;
  const real mag = std::fabs(term);
  if (mag > max_abs_) max_abs_ = mag;
  if (mag <= static_cast<real>(ctl_.rel_tol) * std::fabs(sum_)) {
    ++small_run_;
  } else {
    small_run_ = 0;
  }
  return small_run_ >= 3;
}

// ---------------------------------------------------------------------------

namespace detail {

bool is_nonpositive_integer(real x, real tol) {
  if (x > tol) return false;
  return std::fabs(x - std::nearbyint(x)) <= tol;
}

real lgamma_signed(real x, int* sign) {
#if defined(__GLIBC__)
  int s = 1;
  const real v = ::lgammal_r(x, &s);
#else
  const real v = std::lgamma(x);
  int s = 1;
  if (x < 0 && static_cast<long long>(std::floor(x)) % 2 != 0) s = -1;
#endif
  if (sign != nullptr) *sign = s;
  return v;
}

real lgamma_ld(real x) {
  int s = 1;
  return lgamma_signed(x, &s);
}

real digamma_ld(real x) {
  real result = 0;
  // Upward recurrence to the asymptotic region.
  while (x < 12) {
    result -= 1 / x;
    x += 1;
  }
  const real inv = 1 / x;
  const real inv2 = inv * inv;
  // Bernoulli terms B_{2k} / (2k)
  const real series =
      inv2 * (1.0L / 12 -
              inv2 * (1.0L / 120 -
                      inv2 * (1.0L / 252 -
                              inv2 * (1.0L / 240 -
                                      inv2 * (1.0L / 132 -
                                              inv2 * (691.0L / 32760 - inv2 / 12.0L))))));
  return result + std::log(x) - 0.5L * inv - series;
}

real reg_lower_inc_gamma_ld(real a, real x) {
  if (x == 0) return 0;
  if (std::isinf(x)) return 1;
  if (use_continued_fraction(a, x)) return 1 - upper_continued_fraction(a, x);
  return lower_series(a, x);
}

real reg_upper_inc_gamma_ld(real a, real x) {
  if (x == 0) return 1;
  if (std::isinf(x)) return 0;
  if (use_continued_fraction(a, x)) return upper_continued_fraction(a, x);
  return 1 - lower_series(a, x);
}

}  // namespace detail

// ---------------------------------------------------------------------------

double lgamma(double x) {
  require(x > 0, "lgamma: x must be > 0", x);
  return static_cast<double>(detail::lgamma_ld(x));
}

double digamma(double x) {
  require(x > 0, "digamma: x must be > 0", x);
  return static_cast<double>(detail::digamma_ld(x));
}

double pochhammer(double a, int k) {
  require(k >= 0, "pochhammer: k must be >= 0", k);
  real p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<real>(a) + i;
  return static_cast<double>(p);
}

double reg_lower_inc_gamma(double a, double x) {
  require(a > 0, "reg_lower_inc_gamma: a must be > 0", a);
  require(x >= 0, "reg_lower_inc_gamma: x must be >= 0", x);
  return static_cast<double>(detail::reg_lower_inc_gamma_ld(a, x));
}

double reg_upper_inc_gamma(double a, double x) {
  require(a > 0, "reg_upper_inc_gamma: a must be > 0", a);
  require(x >= 0, "reg_upper_inc_gamma: x must be >= 0", x);
  return static_cast<double>(detail::reg_upper_inc_gamma_ld(a, x));
}

}  // namespace abxs::specfun
