#include "envmin/cli.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace envmin;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ENVMIN_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("duality on the intro example") {
  const Run r = cli({"duality", data("intro.ini")});
  CHECK(r.code == 0);
  CHECK(r.out.find("inf_sup=1.0000\n") != std::string::npos);
  CHECK(r.out.find("sup_inf=0.5000\n") != std::string::npos);
  CHECK(r.out.find("gap=0.5000\n") != std::string::npos);
  CHECK(r.out.find("equality=false\n") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  for (const char* cmd : {"duality", "check", "envelope"}) {
    const Run a = cli({cmd, data("convex1d.ini"), "--lambda-grid", "129"});
    const Run b = cli({cmd, data("convex1d.ini"), "--lambda-grid", "129"});
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("exit statuses") {
  CHECK(cli({"check", data("intro.ini")}).code == 2);
  CHECK(cli({"check", data("convex1d.ini")}).code == 0);
  CHECK(cli({"check", data("missing_psi.ini")}).code == 1);
  CHECK(cli({"duality", data("trig_bad_j.ini")}).code == 1);
  CHECK(cli({"duality", data("bad_syntax.ini")}).code == 1);
  CHECK(cli({"duality", data("does_not_exist.ini")}).code == 1);
  CHECK(cli({"equilibrium", data("intro.ini")}).code == 1);  // no closed form
  CHECK(cli({"equilibrium", data("prop11.ini")}).code == 1);  // psi vanishes at 0
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"duality", data("intro.ini"), "--lambda-grid", "8"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("errors name their module") {
  const Run r = cli({"check", data("missing_psi.ini")});
  CHECK(r.err.find("config:") != std::string::npos);
  CHECK(r.err.find("psi") != std::string::npos);
  const Run e = cli({"equilibrium", data("prop11.ini")});
  CHECK(e.err.find("duality:") != std::string::npos);
}

TEST_CASE("equilibrium on the convex instance") {
  const Run r = cli({"equilibrium", data("convex1d.ini")});
  CHECK(r.code == 0);
  CHECK(r.out.find("certified=true") != std::string::npos);
  CHECK(r.out.find("x_tilde=") != std::string::npos);
}

TEST_CASE("alternative outcomes") {
  CHECK(cli({"alternative", data("doublewell.ini")}).out.find("outcome=assertion_b") != std::string::npos);
  CHECK(cli({"alternative", data("convex1d.ini")}).out.find("outcome=assertion_a") != std::string::npos);
}

TEST_CASE("catalog listing and export") {
  const Run r = cli({"catalog-list"});
  CHECK(r.code == 0);
  for (const char* n : {"trig", "prop11", "exp", "lipschitz"}) CHECK(r.out.find(std::string(n) + "  ") != std::string::npos);
  const Run e = cli({"catalog-list", "exp"});
  CHECK(e.out.find("kind = exp") != std::string::npos);
  CHECK(cli({"catalog-list", "nope"}).code == 1);
}

TEST_CASE("lipschitz command") {
  const Run r = cli({"lipschitz", data("prop11.ini")});
  CHECK(r.code == 0);
  CHECK(r.out.find("outside_D=1") != std::string::npos);
  CHECK(cli({"lipschitz", data("intro.ini")}).code == 1);
}

TEST_CASE("csv output") {
  const std::string lam = "test_cli_lambda.csv", env = "test_cli_envelope.csv", mask = "test_cli_mask.csv";
  REQUIRE(cli({"duality", data("intro.ini"), "--csv", lam}).code == 0);
  const std::string a = slurp(lam);
  CHECK(a.rfind("lambda,inner_inf\n0,0\n", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 258);

  REQUIRE(cli({"envelope", data("convex1d.ini"), "--csv", env}).code == 0);
  const std::string b = slurp(env);
  CHECK(b.rfind("x1,phi_closed,phi_brute\n", 0) == 0);
  CHECK(std::count(b.begin(), b.end(), '\n') == 2002);

  REQUIRE(cli({"envelope", data("convex2d.ini"), "--csv", env, "--lambda-grid", "64"}).code == 0);
  CHECK(slurp(env).rfind("x1,x2,phi_closed,phi_brute\n", 0) == 0);

  REQUIRE(cli({"alternative", data("doublewell.ini"), "--csv", mask}).code == 0);
  CHECK(slurp(mask).rfind("x1,value,label\n", 0) == 0);
  std::remove(lam.c_str());
  std::remove(env.c_str());
  std::remove(mask.c_str());
}

TEST_CASE("envelope summary cross-checks closed form against brute force") {
  const Run r = cli({"envelope", data("convex1d.ini")});
  CHECK(r.code == 0);
  const auto pos = r.out.find("max_relative_difference=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 24)) <= 1e-6);
  CHECK(cli({"envelope", data("intro.ini")}).out.find("closed_form=unavailable") != std::string::npos);
}
