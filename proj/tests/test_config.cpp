#include "envmin/config.hpp"

#include <doctest.h>

#include <sstream>

using namespace envmin;

namespace {

ProblemConfig from(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in, "test");
}

std::string error_of(const std::string& text) {
  try {
    from(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const std::string kBase = R"([domain]
x1 = 0, 2, 101

[functions]
phi = 1 - x1^2
psi = x1

[family]
alpha = lambda
beta = 1
interval = [0, 1]
)";

}  // namespace

TEST_CASE("intro example loads") {
  const ProblemConfig cfg = load_problem(ENVMIN_TEST_DATA "/intro.ini");
  CHECK(cfg.problem.name == "intro");
  CHECK(cfg.problem.dim == 1);
  CHECK(cfg.grid.size() == 2001);
  CHECK(cfg.grid.hi[0] == 2.0);
  CHECK(cfg.solver.lambda_grid == 257);
  Point x(1);
  x << 0.5;
  CHECK(cfg.problem.phi(x) == 0.75);
  CHECK(cfg.problem.psi(x) == 0.5);
  CHECK(cfg.problem.values(x).omega == 0.0);
  CHECK(cfg.problem.curve.alpha(0.25) == 0.25);
  CHECK(cfg.problem.curve.domain.compact());
  CHECK_FALSE(cfg.catalog);
}

TEST_CASE("missing keys are named") {
  CHECK(error_of("[domain]\nx1 = 0, 1, 11\n[functions]\nphi = x1\n[family]\nalpha = lambda\nbeta = 1\n"
                 "interval = [0, 1]\n")
            .find("'psi'") != std::string::npos);
  CHECK(std::string(error_of("[functions]\nphi = 1\npsi = 1\n")).find("[domain]") != std::string::npos);
  const std::string msg = [] {
    try {
      load_problem(ENVMIN_TEST_DATA "/missing_psi.ini");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  }();
  CHECK(msg.find("psi") != std::string::npos);
}

TEST_CASE("syntax errors report the line") {
  try {
    load_problem(ENVMIN_TEST_DATA "/bad_syntax.ini");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("catalog preconditions are enforced") {
  try {
    load_problem(ENVMIN_TEST_DATA "/trig_bad_j.ini");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("pi/2") != std::string::npos);
  }
  CHECK(error_of("[domain]\nx1 = -1, 1, 11\n[functions]\nphi = x1\npsi = 1\n[family]\nkind = prop11\nc = 2\n")
            .find("1 + sqrt(2)") != std::string::npos);
}

TEST_CASE("expressions may only use declared axes") {
  std::string text = kBase;
  text.replace(text.find("psi = x1"), 8, "psi = x2");
  CHECK(error_of(text).find("'x2'") != std::string::npos);
  std::string lam = kBase;
  lam.replace(lam.find("psi = x1"), 8, "psi = lambda");
  CHECK(error_of(lam).find("lambda") != std::string::npos);
}

TEST_CASE("unknown keys and sections are rejected") {
  CHECK(error_of(kBase + "[solver]\nlambda_grd = 300\n").find("lambda_grd") != std::string::npos);
  CHECK(error_of(kBase + "[extra]\na = 1\n").find("[extra]") != std::string::npos);
  CHECK(error_of(kBase + "[solver]\nlambda_grid = 10\n").find("lambda_grid") != std::string::npos);
}

TEST_CASE("intervals") {
  const Interval a = parse_interval("[-pi/2, pi/2]");
  CHECK(a.lo == doctest::Approx(-M_PI / 2).epsilon(1e-15));
  CHECK(a.compact());
  const Interval b = parse_interval("(0, inf)");
  CHECK(b.hi == kInf);
  CHECK_FALSE(b.closed_lo);
  CHECK(parse_interval("[min(0, 1), 2)").lo == 0.0);
  CHECK_THROWS_AS(parse_interval("[0, inf]"), ConfigError);
  CHECK_THROWS_AS(parse_interval("[1, 0]"), ConfigError);
  CHECK_THROWS_AS(parse_interval("0, 1"), ConfigError);
  CHECK_THROWS_AS(parse_interval("[0]"), ConfigError);
}

TEST_CASE("two-dimensional domains, derivatives, tolerances and output") {
  const ProblemConfig cfg = from(R"([domain]
x1 = -1, 1, 21
x2 = 0, 2, 11
refine = 3

[functions]
phi = x1 + x2
psi = 1 + x2^2
omega = -x1

[family]
alpha = lambda
beta = lambda^2 / 2
alpha_prime = 1
beta_prime = lambda
interval = [0, 1]
derivable = [0, 1)

[solver]
lambda_grid = 129
window = 2
max_truncations = 6

[tolerances]
equality = 1e-3

[output]
csv = out.csv
)");
  CHECK(cfg.problem.dim == 2);
  CHECK(cfg.grid.size() == 231);
  CHECK(cfg.grid.refine_rounds == 3);
  CHECK(cfg.problem.curve.has_derivatives());
  CHECK(cfg.problem.curve.derivable_set().closed_lo);
  CHECK_FALSE(cfg.problem.curve.derivable_set().closed_hi);
  CHECK(cfg.solver.lambda_grid == 129);
  CHECK(cfg.solver.window == 2.0);
  CHECK(cfg.solver.tol.equality == 1e-3);
  CHECK(cfg.csv == std::optional<std::string>("out.csv"));
  Point x(2);
  x << 0.5, 1.0;
  CHECK(cfg.problem.values(x).omega == -0.5);
}

TEST_CASE("derivatives come in pairs") {
  CHECK(error_of(kBase + "").empty());
  std::string text = kBase;
  text.insert(text.find("interval"), "alpha_prime = 1\n");
  CHECK(error_of(text).find("together") != std::string::npos);
}

TEST_CASE("catalog entries export configs that load back") {
  for (const std::string& name : catalog_names()) {
    const ProblemConfig cfg = from(catalog_config(name));
    CHECK(cfg.catalog.has_value());
    CHECK(cfg.family_kind == (name == "lipschitz" ? "prop11" : name));
    CHECK(cfg.lipschitz.has_value() == (name == "lipschitz"));
  }
  const CatalogEntry e = trig_family(0.25, -1.0, Interval::closed(-0.5, 1.0));
  const ProblemConfig back =
      from("[domain]\nx1 = -1, 1, 11\n[functions]\nphi = x1\npsi = 1\n" + e.config_section());
  CHECK(back.catalog->params.at("c") == 0.25);
  CHECK(back.catalog->params.at("d") == -1.0);
  CHECK(back.problem.curve.domain.lo == -0.5);
  CHECK(back.problem.curve.domain.hi == 1.0);
}
