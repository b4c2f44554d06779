#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature (QUADPACK qag
// strategy) over one or more segments, plus a semi-infinite driver with an
// algebraic endpoint substitution.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace abxs::quad {

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

template <class Real = double>
struct Result {
  Real value = 0;
  Real error = 0;
  int evaluations = 0;
  bool converged = false;
};

template <class Real>
struct Segment {
  std::function<Real(Real)> f;
  Real a;
  Real b;
};

namespace detail {

// Kronrod abscissae (descending, center last) and weights; Gauss weights for
// the odd-indexed abscissae.
inline constexpr long double kXgk[11] = {
    0.995657163025808080735527280689003L, 0.973906528517171720077964012084452L,
    0.930157491355708226001207180059508L, 0.865063366688984510732096688423493L,
    0.780817726586416897063717578345042L, 0.679409568299024406234327365114874L,
    0.562757134668604683339000099272694L, 0.433395394129247190799265943165784L,
    0.294392862701460198131126603103866L, 0.148874338981631210884826001129720L,
    0.0L};
inline constexpr long double kWgk[11] = {
    0.011694638867371874278064396062192L, 0.032558162307964727478818972459390L,
    0.054755896574351996031381300244580L, 0.075039674810919952767043140916190L,
    0.093125454583697605535065465083366L, 0.109387158802297641899210590325805L,
    0.123491976262065851077600525808020L, 0.134709217311473325928054001771707L,
    0.142775938577060080797094273138717L, 0.147739104901338491374841515972068L,
    0.149445554002916905664936468389821L};
inline constexpr long double kWg[5] = {
    0.066671344308688137593568809893332L, 0.149451349150580593145776339657697L,
    0.219086362515982043995534934228163L, 0.269266719309996355091226921569469L,
    0.295524224714752870173892994651338L};

template <class Real>
struct Interval {
  int segment;
  Real a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

template <class Real, class F>
Interval<Real> gk21(const F& f, int segment, Real a, Real b) {
  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;
  const Real fc = f(center);
  Real kronrod = fc * static_cast<Real>(kWgk[10]);
  Real gauss = 0;
  Real resabs = std::fabs(kronrod);
  Real fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const Real dx = half * static_cast<Real>(kXgk[j]);
    const Real f1 = f(center - dx);
    const Real f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    kronrod += static_cast<Real>(kWgk[j]) * (f1 + f2);
    resabs += static_cast<Real>(kWgk[j]) * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += static_cast<Real>(kWg[j / 2]) * (f1 + f2);
  }
  const Real mean = kronrod / 2;
  Real resasc = static_cast<Real>(kWgk[10]) * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += static_cast<Real>(kWgk[j]) * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
  }
  const Real scale = std::fabs(half);
  Real err = std::fabs((kronrod - gauss) * half);
  resabs *= scale;
  resasc *= scale;
  if (resasc != 0 && err != 0) {
    err = resasc * std::min<Real>(1, std::pow(200 * err / resasc, static_cast<Real>(1.5)));
  }
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  if (resabs > std::numeric_limits<Real>::min() / (50 * eps)) {
    err = std::max(50 * eps * resabs, err);
  }
  return {segment, a, b, kronrod * half, err};
}

}  // namespace detail

/// Integrates the sum of all segments with a single global error budget:
/// stops when the total error estimate is below max(abs_tol, rel_tol*|I|).
template <class Real>
Result<Real> integrate_segments(const std::vector<Segment<Real>>& segments,
                                const Options& opts = {}) {
  std::priority_queue<detail::Interval<Real>> heap;
  Result<Real> out;
  Real total = 0, total_err = 0;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    const auto& seg = segments[s];
    if (!(seg.b > seg.a)) continue;
    auto iv = detail::gk21(seg.f, s, seg.a, seg.b);
    out.evaluations += 21;
    total += iv.value;
    total_err += iv.error;
    heap.push(iv);
  }
  int intervals = static_cast<int>(heap.size());
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  auto target = [&] {
    return std::max(static_cast<Real>(opts.abs_tol), static_cast<Real>(opts.rel_tol) * std::fabs(total));
  };
  while (!heap.empty() && total_err > target() && intervals < opts.max_intervals) {
    auto worst = heap.top();
    const Real mid = (worst.a + worst.b) / 2;
    // Interval can no longer be resolved in this precision.
    if (!(mid > worst.a && mid < worst.b) ||
        std::fabs(worst.b - worst.a) <= 8 * eps * std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      break;
    }
    heap.pop();
    const auto& f = segments[worst.segment].f;
    auto left = detail::gk21(f, worst.segment, worst.a, mid);
    auto right = detail::gk21(f, worst.segment, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0;
  total_err = 0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = total_err <= target();
  return out;
}

template <class Real, class F>
Result<Real> integrate(F&& f, Real a, Real b, const Options& opts = {}) {
  std::vector<Segment<Real>> segs{{std::function<Real(Real)>(std::forward<F>(f)), a, b}};
  return integrate_segments<Real>(segs, opts);
}

/// Layout of a semi-infinite integral over [0, inf).
struct SemiInfinite {
  /// [0, split] is integrated in v with x = split * v^(1/endpoint_power),
  /// which absorbs an x^(endpoint_power - 1) endpoint behaviour.
  double split = 1.0;
  double endpoint_power = 1.0;
  /// [split, inf) is mapped by x = split + tail_scale * t / (1 - t).
  double tail_scale = 1.0;
  /// Extra breakpoints (in x) inside (split, inf).
  std::vector<double> breakpoints;
};

template <class F>
Result<double> integrate_semi_infinite(F f, const SemiInfinite& layout,
                                       const Options& opts = {}) {
  const double s = layout.split;
  const double nu = layout.endpoint_power;
  const double scale = layout.tail_scale;
  std::vector<Segment<double>> segs;
  segs.push_back({[f, s, nu](double v) {
                    if (v <= 0) return 0.0;
                    const double x = s * std::pow(v, 1.0 / nu);
                    // dx/dv = x / (nu v)
                    const double fx = f(x);
                    return fx == 0 ? 0.0 : fx * x / (nu * v);
                  },
                  0.0, 1.0});
  std::vector<double> ts{0.0};
  for (double x : layout.breakpoints) {
    if (x > s && std::isfinite(x)) ts.push_back((x - s) / (x - s + scale));
  }
  ts.push_back(1.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  auto tail = [f, s, scale](double t) {
    if (t >= 1) return 0.0;
    const double om = 1 - t;
    const double x = s + scale * t / om;
    const double fx = f(x);
    return fx == 0 ? 0.0 : fx * scale / (om * om);
  };
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) segs.push_back({tail, ts[i], ts[i + 1]});
  return integrate_segments<double>(segs, opts);
}

}  // namespace abxs::quad
