#include "envmin/catalog.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace envmin;

namespace {

const double kHalfPi = M_PI / 2;
const Interval kFull = Interval::closed(-kHalfPi, kHalfPi);

Problem with(const CatalogEntry& e, ScalarField phi, ScalarField psi) {
  Problem p;
  p.name = e.name;
  p.phi = std::move(phi);
  p.psi = std::move(psi);
  p.curve = e.curve;
  return p;
}

/// Relative disagreement between the analytic and brute-force envelopes on
/// `n` random points drawn by `draw` that lie in the entry's valid region.
double worst_mismatch(const CatalogEntry& e, int n, const std::function<FamilyValues(std::mt19937&)>& draw) {
  std::mt19937 rng(42);
  double worst = 0.0;
  int done = 0;
  while (done < n) {
    const FamilyValues v = draw(rng);
    if (!e.valid(v)) continue;
    const double a = e.analytic_envelope(v);
    const double b = envelope_brute(e.curve, v).phi_of_x;
    worst = std::max(worst, std::abs(a - b) / scale(a));
    ++done;
  }
  return worst;
}

}  // namespace

TEST_CASE("catalog names") {
  CHECK(catalog_names() == std::vector<std::string>{"trig", "prop11", "exp", "lipschitz"});
  for (const auto& n : catalog_names()) {
    CHECK_FALSE(catalog_summary(n).empty());
    CHECK(catalog_config(n).find("[family]") != std::string::npos);
  }
  CHECK_THROWS_AS(catalog_summary("nope"), Error);
}

TEST_CASE("trig envelope examples") {
  const CatalogEntry e = trig_family(0.0, 0.0, kFull);
  CHECK(e.analytic_envelope({3.0, 4.0, 0.0}) == 5.0);
  CHECK(e.analytic_envelope({2.0, 0.0, 0.0}) == 2.0);
  CHECK(e.analytic_envelope({0.0, 1.0, 0.0}) == 1.0);
  const CatalogEntry shifted = trig_family(1.5, -0.5, kFull);
  CHECK(shifted.analytic_envelope({-2.0, 0.0, 1.0}) == doctest::Approx(std::max(2.5 * -2.0, 0.5 * -2.0) + 1.0));
}

TEST_CASE("trig preconditions and validity") {
  CHECK_THROWS_AS(trig_family(0.0, 0.0, Interval::closed(-2.0, 2.0)), Error);
  const CatalogEntry e = trig_family(0.0, 0.0, kFull);
  CHECK_THROWS_AS(e.analytic_envelope({1.0, -1.0, 0.0}), HypothesisError);
  const CatalogEntry narrow = trig_family(0.0, 0.0, Interval::closed(-0.5, 0.5));
  CHECK(narrow.valid({0.1, 1.0, 0.0}));
  CHECK_FALSE(narrow.valid({2.0, 1.0, 0.0}));  // arctan 2 > 0.5
  CHECK_FALSE(narrow.valid({0.0, 0.0, 0.0}));
}

TEST_CASE("arctan identities used by the trig envelope") {
  for (int i = 0; i <= 20000; ++i) {
    const double t = -1e3 + 0.1 * i;
    const double r = std::sqrt(1 + t * t);
    CHECK(std::abs(std::sin(std::atan(t)) - t / r) <= 1e-12);
    CHECK(std::abs(std::cos(std::atan(t)) - 1 / r) <= 1e-12);
  }
}

TEST_CASE("analytic envelopes match brute force on 1000 valid points per entry") {
  std::uniform_real_distribution<double> u(-10.0, 10.0), pos(1e-3, 10.0), cd(-3.0, 3.0);
  const auto generic = [&](std::mt19937& r) { return FamilyValues{u(r), pos(r), u(r)}; };
  CHECK(worst_mismatch(trig_family(0.7, -1.2, kFull), 1000, generic) <= 1e-6);
  CHECK(worst_mismatch(trig_family(0.0, 0.0, Interval::closed(-0.6, 1.0)), 1000, generic) <= 1e-6);
  CHECK(worst_mismatch(prop11_family(1.0 + std::sqrt(2.0)), 1000, generic) <= 1e-6);
  CHECK(worst_mismatch(prop11_family(5.0), 1000, generic) <= 1e-6);
  std::uniform_real_distribution<double> ratio(0.0, 6.0);
  const auto exp_points = [&](std::mt19937& r) {
    const double psi = pos(r);
    return FamilyValues{ratio(r) * psi, psi, u(r)};
  };
  CHECK(worst_mismatch(exp_family(Interval(0.0, kInf)), 1000, exp_points) <= 1e-6);
  CHECK(worst_mismatch(exp_family(Interval::closed(0.0, 6.0)), 1000, exp_points) <= 1e-6);
}

TEST_CASE("prop11 curve") {
  CHECK_THROWS_AS(prop11_family(2.0), Error);
  const double c = 3.0;
  const CatalogEntry e = prop11_family(c);
  CHECK(e.curve.alpha(-M_PI / 4) == doctest::Approx(c - 1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(e.curve.beta(-M_PI / 4) == doctest::Approx(c - std::sqrt(2.0) + 1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("prop11 dual value on phi = x, psi = |x|") {
  const CatalogEntry e = prop11_family(1.0 + std::sqrt(2.0));
  const Problem p = with(e, [](PointRef x) { return x[0]; }, [](PointRef x) { return std::abs(x[0]); });
  const GridDomain g = GridDomain::line(-10.0, 10.0, 2001);
  const auto dual = e.analytic_dual(p, g);
  REQUIRE(dual);
  CHECK(*dual == 0.0);
  const DualityReport rep = duality_report(p, g);
  CHECK(rep.equality);
  CHECK(std::abs(rep.inf_sup - *dual) <= 1e-4);
  CHECK(std::abs(rep.lambda_witness + M_PI / 4) <= 1e-2);
  const Problem bad = with(e, [](PointRef x) { return x[0]; }, [](PointRef x) { return x[0]; });
  CHECK_THROWS_AS(e.analytic_dual(bad, g), HypothesisError);
}

TEST_CASE("exp envelope examples") {
  const CatalogEntry e = exp_family(Interval(0.0, kInf));
  CHECK(e.analytic_envelope({1.0, 2.0, 0.0}) == doctest::Approx(2 * std::exp(0.5)).epsilon(1e-15));
  CHECK(e.analytic_envelope({0.0, 3.0, 0.5}) == 3.5);
  CHECK_THROWS_AS(e.analytic_envelope({1.0, -1.0, 0.0}), HypothesisError);
  CHECK_THROWS_AS(e.analytic_envelope({-1.0, 1.0, 0.0}), HypothesisError);  // phi/psi outside I
  // the family falls to -inf as lambda grows
  CHECK(Problem::family(e.curve, {1.0, 2.0, 0.0}, 50.0) < -1e20);
}

TEST_CASE("exp constraints are checked on the grid") {
  const CatalogEntry e = exp_family(Interval::closed(0.0, 1.0));
  const GridDomain g = GridDomain::line(-1.0, 1.0, 101);
  const Problem bad = with(e, [](PointRef x) { return x[0] * x[0]; }, [](PointRef x) { return x[0]; });
  CHECK_THROWS_AS(e.validate_problem(bad, g), HypothesisError);
  const Problem big = with(e, [](PointRef) { return 5.0; }, [](PointRef) { return 1.0; });
  CHECK_THROWS_AS(e.validate_problem(big, g), HypothesisError);
  const Problem ok = with(e, [](PointRef x) { return x[0] * x[0]; }, [](PointRef x) { return 1 + x[0] * x[0]; });
  CHECK_NOTHROW(e.validate_problem(ok, g));
}

TEST_CASE("exp equilibrium identity") {
  const CatalogEntry e = exp_family(Interval::closed(0.0, 1.0));
  Problem p = with(e, [](PointRef x) { return x[0] * x[0]; }, [](PointRef x) { return 1 + x[0] * x[0]; });
  p.omega = [](PointRef x) { return 0.1 * x[0]; };
  const GridDomain g = GridDomain::line(-2.0, 2.0, 2001);
  const HSelector h = make_h_selector(build_g_profile(p.curve), p.curve.domain, SignCase::i4);
  const EquilibriumResult eq = find_equilibrium(p, g, h);
  REQUIRE(eq.certified);
  const FamilyValues v = p.values(eq.x_tilde);
  const double r = v.phi / v.psi;
  const double lhs = v.psi + std::exp(-r) * v.omega;
  const double rhs = grid_minimize(g, [&](PointRef x) {
                       const FamilyValues w = p.values(x);
                       return w.phi + (1 - r) * w.psi + std::exp(-r) * w.omega;
                     }).value;
  CHECK(std::abs(lhs - rhs) <= 1e-4 * scale(lhs));
}

TEST_CASE("lipschitz criterion on the prop11 curve") {
  const CatalogEntry e = prop11_family(1.0 + std::sqrt(2.0));
  const Problem p = with(e, [](PointRef x) { return x[0]; }, [](PointRef x) { return std::abs(x[0]); });
  const LipschitzReport rep = lipschitz_criterion(p, GridDomain::line(-10.0, 10.0, 401), 1.0, 1.0, 257);
  CHECK(rep.lambdas.size() == 257);
  CHECK(rep.outside_count == 1);
  CHECK(rep.reduced_lambda == doctest::Approx(-M_PI / 4).epsilon(1e-12));
  CHECK(rep.reduced_sup == doctest::Approx(0.0).epsilon(1e-9));
  REQUIRE_FALSE(rep.spot_unbounded.empty());
  for (char u : rep.spot_unbounded) CHECK(u);
  CHECK(rep.lipschitz_heuristic);
  CHECK(rep.lipschitz_estimate <= 1.0 + 1e-12);
}

TEST_CASE("lipschitz criterion with an empty D") {
  Problem p;
  p.phi = [](PointRef x) { return x[0]; };
  p.psi = [](PointRef x) { return 2 * std::abs(x[0]); };
  p.curve.alpha = [](double l) { return l; };
  p.curve.beta = [](double) { return 1.0; };
  p.curve.domain = Interval::closed(0.0, 1.0);
  const LipschitzReport rep = lipschitz_criterion(p, GridDomain::line(-1.0, 1.0, 101), 1.0, 1.0, 65);
  CHECK(rep.outside_count == 65);
  CHECK(rep.spot_lambdas.empty());
  CHECK_FALSE(rep.lipschitz_heuristic);  // psi has constant 2 > L
}
