#pragma once

// Special-function kernel for the alpha-Beaulieu-Xie shadowed closed forms.
//
// Every routine is a pure function. Internally the kernel works in the
// widest native binary float (`long double`); the public surface takes and
// returns `double`.

#include <string>
#include <vector>

namespace abxs::specfun {

using real = long double;

/// Truncation control shared by every series in the library. A series stops
/// once |term| <= rel_tol * |partial sum| holds for three consecutive terms.
struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 10000;

  void validate() const;
};

/// Accumulates a series under SeriesControl's relative-term stopping rule.
class SeriesSum {
 public:
  explicit SeriesSum(SeriesControl ctl);

  /// Adds one term; returns true once the stopping rule is satisfied.
  bool add(real term);

  real value() const noexcept { return sum_; }
  int terms() const noexcept { return terms_; }
  bool exhausted() const noexcept { return terms_ >= ctl_.max_terms; }
  /// Largest |term| seen so far; used to detect cancellation.
  real max_abs_term() const noexcept { return max_abs_; }

 private:
  SeriesControl ctl_;
  real sum_ = 0;
  real max_abs_ = 0;
  int terms_ = 0;
  int small_run_ = 0;
};

// ---------------------------------------------------------------------------
// Gamma family

double lgamma(double x);
double digamma(double x);
double pochhammer(double a, int k);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_inc_gamma(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without
/// forming the difference when Q is the small side.
double reg_upper_inc_gamma(double a, double x);

// ---------------------------------------------------------------------------
// Hypergeometric family

double kummer_1f1(double a, double b, double x, SeriesControl ctl = {});
double gauss_2f1(double a, double b, double c, double z, SeriesControl ctl = {});
/// Derivative of 2F1(a, b; c; z) with respect to a, for |z| < 1.
double gauss_2f1_da(double a, double b, double c, double z, SeriesControl ctl = {});
/// Confluent Appell function Phi2(b1, b2; c; x, y).
double appell_phi2(double b1, double b2, double c, double x, double y,
                   SeriesControl ctl = {});

// ---------------------------------------------------------------------------
// Meijer G

/// G^{m,n}_{p,q} with p = a.size(), q = b.size().
struct MeijerGSpec {
  int m = 0;
  int n = 0;
  std::vector<double> a;
  std::vector<double> b;

  void validate() const;
  std::string to_string() const;
};

enum class MeijerGMethod {
  SlaterSmallZ,  // residue series over the poles of Gamma(b_j - s), j < m
  SlaterLargeZ,  // residue series over the poles of Gamma(1 - a_j + s), j < n
  Contour,       // numerical Mellin-Barnes integral on a vertical line
};

const char* to_string(MeijerGMethod method);

struct MeijerGOptions {
  SeriesControl series{1e-16, 4000};
  /// Maximal tolerated ratio max|term| / |sum| before a residue series is
  /// considered cancellation-dominated and the contour route is taken.
  double max_cancellation = 1e7;
  /// Integer-difference test tolerance for pole collisions.
  double collision_tol = 1e-9;
  double contour_rel_tol = 1e-13;
};

struct MeijerGResult {
  real value = 0;
  MeijerGMethod method = MeijerGMethod::SlaterSmallZ;
  /// Two contributing poles coincide; the value came from the contour.
  bool pole_collision = false;
  /// The contour route was forced (collision or cancellation); accuracy is
  /// that of the quadrature rather than of the series.
  bool precision_warning = false;
  int terms = 0;
};

/// Evaluates G at z = exp(log_z). Taking the logarithm keeps the very small
/// or very large arguments produced by high-order rationalizations in range.
MeijerGResult meijer_g_log(const MeijerGSpec& spec, real log_z,
                           const MeijerGOptions& opts = {});

MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double z,
                            const MeijerGOptions& opts = {});

double meijer_g(const MeijerGSpec& spec, double z);

// ---------------------------------------------------------------------------
// Extended-precision entry points used by the model code and by tests that
// compare alternative evaluation routes.

namespace detail {

/// log|Gamma(x)| for any real x that is not a pole, with the sign of Gamma(x).
real lgamma_signed(real x, int* sign);
real lgamma_ld(real x);
real digamma_ld(real x);
real reg_lower_inc_gamma_ld(real a, real x);
real reg_upper_inc_gamma_ld(real a, real x);

/// 1F1 by the plain power series, no transformation.
real kummer_1f1_series(real a, real b, real x, SeriesControl ctl);
/// 1F1 with the sign-dependent Kummer transformation and, for large |x|,
/// the asymptotic expansion.
real kummer_1f1_ld(real a, real b, real x, SeriesControl ctl);
/// log 1F1 for a, b > 0; switches to the large-argument expansion for big x.
real log_kummer_1f1_ld(real a, real b, real x, SeriesControl ctl);
/// 2F1 by the plain power series (|z| < 1), no transformation.
real gauss_2f1_series(real a, real b, real c, real z, SeriesControl ctl);
real gauss_2f1_ld(real a, real b, real c, real z, SeriesControl ctl);
real appell_phi2_ld(real b1, real b2, real c, real x, real y, SeriesControl ctl);

bool is_nonpositive_integer(real x, real tol = 1e-12L);

}  // namespace detail

}  // namespace abxs::specfun
