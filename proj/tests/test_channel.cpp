#include <doctest.h>

#include <cmath>
#include <limits>

#include "abxs/channel.hpp"
#include "abxs/errors.hpp"
#include "abxs/quadrature.hpp"
#include "golden_values.hpp"

using abxs::Channel;
using abxs::ChannelParams;

namespace {

ChannelParams fig1(double alpha) {
  const double o = std::pow(10.0, 0.2);
  return {1.6, 1.5, o, o, alpha, std::pow(10.0, 0.3)};
}

double rel_err(double got, long double want) {
  return static_cast<double>(std::fabs((got - want) / want));
}

// Integral of stat(gamma) f(gamma) over [0, inf), taken in the mixture
// variable u so that the endpoint behaviour is u^(m_x - 1).
double snr_expectation(const Channel& ch, double (*stat)(double)) {
  const auto& p = ch.params();
  const double c = ch.constants().c_alpha;
  auto integrand = [&](double u) {
    const double g = ch.snr_from_normalized(u);
    const double jac = p.gamma_bar * std::pow(c, 2 / p.alpha) * (2 / p.alpha) * std::pow(u, 2 / p.alpha - 1);
    return stat(g) * abxs::snr_pdf(ch, g) * jac;
  };
  abxs::quad::SemiInfinite layout{1.0, p.m_x, 2.0 + p.m_y, {4.0, 16.0, 64.0}};
  const auto r = abxs::quad::integrate_semi_infinite(integrand, layout, {1e-15, 1e-13, 4000});
  REQUIRE(r.converged);
  return r.value;
}

}  // namespace

TEST_CASE("C_alpha, density and distribution match reference values") {
  for (const auto& row : golden::kFig1Channel) {
    const double alpha = static_cast<double>(row[0]);
    CAPTURE(alpha);
    const Channel ch(fig1(alpha));
    CHECK(rel_err(ch.constants().c_alpha, row[1]) < 1e-13);
    CHECK(rel_err(abxs::snr_pdf(ch, 0.7), row[2]) < 1e-12);
    CHECK(rel_err(abxs::snr_pdf(ch, 5.0), row[3]) < 1e-12);
    CHECK(rel_err(abxs::snr_cdf(ch, ch.params().gamma_bar), row[4]) < 1e-12);
  }
  CHECK(rel_err(abxs::envelope_moment(fig1(2), 4), golden::kFig1EnvelopeMoment4) < 1e-13);
}

TEST_CASE("density integrates to one and has mean gamma_bar") {
  for (double alpha : {0.8, 2.0, 3.0}) {
    for (double mx : {0.5, 2.5}) {
      for (double my : {0.5, 5.0}) {
        ChannelParams p{mx, my, 1.0, 1.3, alpha, 2.0};
        CAPTURE(alpha);
        CAPTURE(mx);
        CAPTURE(my);
        const Channel ch(p);
        CHECK(snr_expectation(ch, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(snr_expectation(ch, [](double g) { return g; }) == doctest::Approx(2.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("cdf routes agree: mixture series, Phi2 form, complement and derivative") {
  for (double alpha : {1.0, 2.5, 4.0}) {
    const Channel ch(fig1(alpha));
    for (double g : {1e-3, 0.3, 2.0, 9.0, 40.0}) {
      CAPTURE(alpha);
      CAPTURE(g);
      const double f = abxs::snr_cdf(ch, g);
      CHECK(abxs::snr_cdf_phi2(ch, g) == doctest::Approx(f).epsilon(1e-13));
      CHECK(f + abxs::snr_ccdf(ch, g) == doctest::Approx(1.0).epsilon(1e-14));
      const double lo = g * (1 - 1e-5), hi = g * (1 + 1e-5);
      const double fd = (abxs::snr_cdf(ch, hi) - abxs::snr_cdf(ch, lo)) / (hi - lo);
      CHECK(fd == doctest::Approx(abxs::snr_pdf(ch, g)).epsilon(1e-7));
    }
  }
}

TEST_CASE("no LoS component with m_x = 1 and alpha = 2 is Rayleigh") {
  const Channel ch({1.0, 1.0, 1.0, 0.0, 2.0, 3.0});
  CHECK(ch.constants().beta_bar == 0.0);
  for (double g : {0.0, 0.1, 1.0, 3.0, 20.0}) {
    CHECK(abxs::snr_pdf(ch, g) == doctest::Approx(std::exp(-g / 3.0) / 3.0).epsilon(1e-14));
    CHECK(abxs::snr_cdf(ch, g) == doctest::Approx(-std::expm1(-g / 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("no LoS component with m_x = 1 is Weibull in the SNR") {
  for (double alpha : {0.8, 1.5, 3.0}) {
    const Channel ch({1.0, 2.0, 1.0, 0.0, alpha, 2.0});
    const double scale = std::pow(std::tgamma(1 + 2 / alpha), alpha / 2);
    for (double g : {0.05, 1.0, 4.0}) {
      CAPTURE(alpha);
      CAPTURE(g);
      CHECK(abxs::snr_cdf(ch, g) == doctest::Approx(-std::expm1(-scale * std::pow(g / 2.0, alpha / 2))).epsilon(1e-13));
    }
  }
}

TEST_CASE("no LoS component with alpha = 2 is Nakagami-m") {
  const double m = 2.7, gb = 5.0;
  const Channel ch({m, 1.0, 1.0, 0.0, 2.0, gb});
  for (double g : {0.2, 3.0, 11.0}) {
    const double want = std::exp(m * std::log(m / gb) + (m - 1) * std::log(g) - m * g / gb - std::lgamma(m));
    CHECK(abxs::snr_pdf(ch, g) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("density at the origin") {
  CHECK(std::isinf(abxs::snr_pdf(Channel({0.5, 1.0, 1.0, 1.0, 2.0, 1.0}), 0.0)));
  CHECK(abxs::snr_pdf(Channel({2.0, 1.0, 1.0, 1.0, 2.0, 1.0}), 0.0) == 0.0);
  const Channel edge({1.0, 1.5, 1.0, 0.5, 2.0, 1.0});
  CHECK(abxs::snr_pdf(edge, 0.0) == doctest::Approx(abxs::snr_pdf(edge, 1e-9)).epsilon(1e-8));
}

TEST_CASE("high-SNR density and cdf are the leading small-gamma terms") {
  const Channel ch(fig1(2.5));
  for (double g : {1e-4, 1e-6}) {
    CHECK(abxs::snr_pdf_asymptotic(ch, g) / abxs::snr_pdf(ch, g) == doctest::Approx(1.0).epsilon(20 * g));
    CHECK(abxs::snr_cdf_asymptotic(ch, g) / abxs::snr_cdf(ch, g) == doctest::Approx(1.0).epsilon(20 * g));
  }
}

TEST_CASE("strong LoS (beta_bar near 1) keeps the density finite far in the tail") {
  const Channel ch({4.0, 0.5, std::pow(10.0, -0.3), std::pow(10.0, 0.3), 1.0, 100.0});
  CHECK(ch.constants().beta_bar > 0.96);
  for (double g : {1e-3, 1.0, 1e3, 1e5, 1e7}) {
    CAPTURE(g);
    const double f = abxs::snr_pdf(ch, g);
    CHECK(std::isfinite(f));
    CHECK(f >= 0.0);
  }
  CHECK(abxs::snr_ccdf(ch, 1e4) > 0.0);
  CHECK(abxs::snr_ccdf(ch, 1e4) < abxs::snr_ccdf(ch, 1e3));
}

TEST_CASE("Beaulieu-Xie shadowed envelope density integrates to one with the stated second moment") {
  const ChannelParams p{1.6, 1.5, 1.3, 0.7, 2.0, 1.0};
  const auto norm = abxs::quad::integrate<double>([&](double r) { return abxs::bxs_envelope_pdf(p, r); }, 0.0, 12.0,
                                                  {1e-15, 1e-13, 2000});
  CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-12));
  const auto m2 = abxs::quad::integrate<double>([&](double r) { return r * r * abxs::bxs_envelope_pdf(p, r); }, 0.0,
                                                12.0, {1e-15, 1e-13, 2000});
  CHECK(m2.value == doctest::Approx(abxs::envelope_moment(p, 2)).epsilon(1e-12));
  CHECK(abxs::envelope_moment(p, 2) == doctest::Approx(p.omega_x + p.omega_y).epsilon(1e-14));
}

TEST_CASE("mixture variable round trip and gamma_bar rescaling") {
  const Channel ch(fig1(3.0));
  for (double g : {1e-3, 0.5, 7.0}) {
    CHECK(ch.snr_from_normalized(static_cast<double>(ch.normalized(g))) == doctest::Approx(g).epsilon(1e-14));
  }
  const Channel moved = ch.with_gamma_bar(40.0);
  CHECK(moved.params().gamma_bar == 40.0);
  CHECK(moved.constants().c_alpha == ch.constants().c_alpha);
  CHECK(abxs::snr_pdf(moved, 40.0 * 0.7) ==
        doctest::Approx(abxs::snr_pdf(ch, ch.params().gamma_bar * 0.7) * ch.params().gamma_bar / 40.0).epsilon(1e-13));
}

TEST_CASE("rationalization of alpha / 2") {
  auto r = abxs::rationalize_alpha(3.0);
  CHECK(r.p == 3);
  CHECK(r.q == 2);
  r = abxs::rationalize_alpha(2.5);
  CHECK(r.p == 5);
  CHECK(r.q == 4);
  r = abxs::rationalize_alpha(1.0);
  CHECK(r.p == 1);
  CHECK(r.q == 2);
  r = abxs::rationalize_alpha(2.0 / 3.0);
  CHECK(r.p == 1);
  CHECK(r.q == 3);
  CHECK_FALSE(abxs::try_rationalize_alpha(M_PI).has_value());
  CHECK_THROWS_AS(abxs::rationalize_alpha(M_PI), abxs::DomainError);
  CHECK_FALSE(Channel(fig1(M_PI)).constants().pq.has_value());
}

TEST_CASE("parameter validation names the offending field") {
  auto field_of = [](ChannelParams p) -> std::string {
    try {
      Channel ch(p);
    } catch (const abxs::ValidationError& e) {
      return e.field();
    }
    return "";
  };
  ChannelParams p;
  CHECK(field_of(p).empty());
  p.m_x = 0;
  CHECK(field_of(p) == "m_x");
  p = {};
  p.m_y = -1;
  CHECK(field_of(p) == "m_y");
  p = {};
  p.omega_x = 0;
  CHECK(field_of(p) == "omega_x");
  p = {};
  p.omega_y = -0.1;
  CHECK(field_of(p) == "omega_y");
  p = {};
  p.alpha = std::numeric_limits<double>::infinity();
  CHECK(field_of(p) == "alpha");
  p = {};
  p.gamma_bar = std::nan("");
  CHECK(field_of(p) == "gamma_bar");
}

TEST_CASE("series cap raises a convergence error instead of returning a truncated cdf") {
  const Channel ch({4.0, 0.5, std::pow(10.0, -0.3), std::pow(10.0, 0.3), 1.0, 100.0});
  CHECK_THROWS_AS(abxs::snr_cdf(ch, 100.0, {1e-14, 3}), abxs::ConvergenceError);
  CHECK_THROWS_AS(abxs::snr_cdf(ch, -1.0), abxs::DomainError);
}
