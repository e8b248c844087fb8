#include "envmin/envelope.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace envmin;

namespace {

ParamCurve trig_curve(double lo = -M_PI / 2, double hi = M_PI / 2) {
  ParamCurve c;
  c.alpha = [](double l) { return std::sin(l); };
  c.beta = [](double l) { return std::cos(l); };
  c.alpha_prime = [](double l) { return std::cos(l); };
  c.beta_prime = [](double l) { return -std::sin(l); };
  c.domain = Interval::closed(lo, hi);
  return c;
}

/// g(lambda) = s * lambda on [0, 1]: increasing for s = 1, decreasing for s = -1.
ParamCurve linear_g_curve(double s) {
  ParamCurve c;
  c.alpha = [](double l) { return l; };
  c.beta = [s](double l) { return 0.5 * s * l * l; };
  c.alpha_prime = [](double) { return 1.0; };
  c.beta_prime = [s](double l) { return s * l; };
  c.domain = Interval::closed(0.0, 1.0);
  return c;
}

HSelector selector(const ParamCurve& c, SignCase sc) { return make_h_selector(build_g_profile(c), c.domain, sc); }

}  // namespace

TEST_CASE("h clamps by the four-way table") {
  const HSelector up = selector(linear_g_curve(1.0), SignCase::i3);  // g(A) = (0, 1)
  CHECK(h_select(up, -5.0) == 0.0);
  CHECK(h_select(up, 0.0) == 0.0);
  CHECK(h_select(up, 1.0) == 1.0);
  CHECK(h_select(up, 7.0) == 1.0);
  CHECK(h_select(up, 0.25) == doctest::Approx(0.25).epsilon(1e-12));

  const HSelector down = selector(linear_g_curve(-1.0), SignCase::i4);  // g(A) = (-1, 0)
  CHECK(h_select(down, -5.0) == 1.0);
  CHECK(h_select(down, -1.0) == 1.0);
  CHECK(h_select(down, 0.0) == 0.0);
  CHECK(h_select(down, 3.0) == 0.0);
  CHECK(h_select(down, -0.25) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("the sign case must agree with the direction of g") {
  const GProfile gp = build_g_profile(linear_g_curve(1.0));
  CHECK_THROWS_AS(make_h_selector(gp, Interval::closed(0, 1), SignCase::i4), Error);
  CHECK_THROWS_AS(make_h_selector(gp, Interval::closed(0, 1), SignCase::neither), Error);
}

TEST_CASE("h is monotone over a sweep and inverts g") {
  const HSelector h = selector(trig_curve(), SignCase::i4);
  double prev = kInf;
  for (int i = 0; i <= 1000; ++i) {
    const double mu = -50.0 + 0.1 * i;
    const double l = h_select(h, mu);
    CHECK(std::isfinite(l));
    CHECK(l <= prev);
    prev = l;
  }
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.55, 1.55);
  for (int i = 0; i < 200; ++i) {
    const double l = u(rng);
    CHECK(std::abs(h_select(h, h.profile.g(l)) - l) < 1e-9);
  }
}

TEST_CASE("closed form agrees with brute force and sqrt(phi^2 + psi^2) on the trig curve") {
  const ParamCurve c = trig_curve();
  const HSelector h = selector(c, SignCase::i4);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 300; ++i) {
    const FamilyValues v{u(rng), std::abs(u(rng)), u(rng)};
    const double oracle = std::hypot(v.phi, v.psi) + v.omega;
    const EnvelopeValue cf = envelope_closed_form(c, h, v);
    const EnvelopeValue bf = envelope_brute(c, v);
    CHECK(std::abs(cf.phi_of_x - oracle) <= 1e-9 * scale(oracle));
    CHECK(std::abs(bf.phi_of_x - oracle) <= 1e-6 * scale(oracle));
  }
  const EnvelopeValue five = envelope_closed_form(c, h, {3.0, 4.0, 0.0});
  CHECK(five.phi_of_x == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(five.arg_kind == ArgKind::interior);
  CHECK(five.argmax_lambda == doctest::Approx(std::atan(0.75)).epsilon(1e-12));
}

TEST_CASE("psi = 0 branch on a compact interval") {
  const ParamCurve c = trig_curve();
  const HSelector h = selector(c, SignCase::i4);
  const EnvelopeValue v = envelope_closed_form(c, h, {2.0, 0.0, 0.5});
  CHECK(v.branch == Branch::psi_zero);
  CHECK(v.phi_of_x == 2.5);
  CHECK(v.arg_kind == ArgKind::upper_end);
  const EnvelopeValue w = envelope_closed_form(c, h, {-2.0, 0.0, 0.0});
  CHECK(w.phi_of_x == 2.0);
  CHECK(w.arg_kind == ArgKind::lower_end);
  const EnvelopeValue z = envelope_closed_form(c, h, {0.0, 0.0, 0.7});
  CHECK(z.phi_of_x == 0.7);
  CHECK(z.arg_kind == ArgKind::whole_interval);
}

TEST_CASE("psi = 0 branch on an unbounded interval") {
  ParamCurve c;
  c.alpha = [](double l) { return std::exp(l); };
  c.beta = [](double l) { return (1 - l) * std::exp(l); };
  c.alpha_prime = [](double l) { return std::exp(l); };
  c.beta_prime = [](double l) { return -l * std::exp(l); };
  c.domain = Interval(0.0, kInf);
  c.derivable = c.domain;
  const HSelector h = selector(c, SignCase::i4);
  CHECK(envelope_closed_form(c, h, {1.0, 0.0, 0.0}).phi_of_x == kInf);
  const EnvelopeValue neg = envelope_closed_form(c, h, {-1.0, 0.0, 0.25});
  CHECK(neg.phi_of_x == doctest::Approx(-0.75));
  CHECK(neg.arg_kind == ArgKind::lower_end);
  // generic branch: e^(phi/psi) psi
  const EnvelopeValue g = envelope_closed_form(c, h, {1.0, 2.0, 0.0});
  CHECK(g.phi_of_x == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-12));
  CHECK(envelope_brute(c, {1.0, 2.0, 0.0}).phi_of_x == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-9));
  CHECK(envelope_closed_form(c, h, {0.0, 3.0, 1.0}).phi_of_x == doctest::Approx(4.0));
}

TEST_CASE("a selector sending lambda to an infinite end is a hypothesis failure") {
  ParamCurve c;  // g = e^-lambda, decreasing, g(A) = (0, 1]
  c.alpha = [](double l) { return l; };
  c.beta = [](double l) { return -std::exp(-l); };
  c.alpha_prime = [](double) { return 1.0; };
  c.beta_prime = [](double l) { return std::exp(-l); };
  c.domain = Interval(0.0, kInf);
  const HSelector h = selector(c, SignCase::i4);
  CHECK_THROWS_AS(envelope_closed_form(c, h, {1.0, 1.0, 0.0}), HypothesisError);
  CHECK(envelope_brute(c, {1.0, 1.0, 0.0}).phi_of_x == kInf);
}

TEST_CASE("brute force on the intro family") {
  ParamCurve c;
  c.alpha = [](double l) { return l; };
  c.beta = [](double) { return 1.0; };
  c.domain = Interval::closed(0.0, 1.0);
  for (double x = 0.0; x <= 2.0; x += 0.125) {
    const FamilyValues v{1 - x * x, x, 0.0};
    const double oracle = std::max(1 - x * x + x, x);
    CHECK(envelope_brute(c, v).phi_of_x == doctest::Approx(oracle).epsilon(1e-14));
  }
  EnvelopeOptions tiny;
  tiny.lambda_grid = 10;
  CHECK_THROWS_AS(envelope_brute(c, {1, 1, 0}, tiny), Error);
  const EnvelopeValue zero = envelope_brute(c, {0.0, 0.0, 3.0});
  CHECK(zero.phi_of_x == 3.0);
  CHECK(zero.arg_kind == ArgKind::whole_interval);
}
