#include "envmin/catalog.hpp"

#include <fmt/format.h>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <random>

namespace envmin {

namespace {

constexpr double kHalfPi = boost::math::double_constants::half_pi;
constexpr double kSqrt2 = boost::math::double_constants::root_two;

bool covers_half_circle(const Interval& J) { return J.lo <= -kHalfPi && J.hi >= kHalfPi; }

double grid_inf(const GridDomain& grid, const std::function<double(PointRef)>& f) {
  return grid_minimize(grid, f).value;
}

void require_psi(const Problem& prob, const GridDomain& grid, bool strict, const std::string& who) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point p = grid.point(i);
    const double psi = prob.psi(p);
    if (strict ? !(psi > 0.0) : !(psi >= 0.0))
      throw HypothesisError(fmt::format("{}: constraint psi {} 0 violated at x1={} (psi={})", who,
                                        strict ? ">" : ">=", p[0], psi));
  }
}

/// sup over J of (sin + c) phi + (cos + d) psi + omega, where the maximizer is
/// arctan(phi/psi) for psi > 0 and an end of [-pi/2, pi/2] for psi = 0.
double trig_envelope(double c, double d, const FamilyValues& v, const Tolerances& tol) {
  if (std::abs(v.psi) <= tol.psi_zero) return std::max((c + 1.0) * v.phi, (c - 1.0) * v.phi) + v.omega;
  return c * v.phi + d * v.psi + std::hypot(v.phi, v.psi) + v.omega;
}

CatalogEntry sine_cosine(std::string name, double c, double d, const Interval& J) {
  CatalogEntry e;
  e.name = std::move(name);
  e.curve.alpha = [c](double l) { return std::sin(l) + c; };
  e.curve.beta = [d](double l) { return std::cos(l) + d; };
  e.curve.alpha_prime = [](double l) { return std::cos(l); };
  e.curve.beta_prime = [](double l) { return -std::sin(l); };
  e.curve.domain = J;
  const bool full = covers_half_circle(J);
  const Tolerances tol;
  e.valid = [J, full, tol](const FamilyValues& v) {
    if (full) return v.psi >= 0.0 || std::abs(v.psi) <= tol.psi_zero;
    if (!(v.psi > tol.psi_zero)) return false;
    const double t = std::atan(v.phi / v.psi);
    return t >= J.lo && t <= J.hi;
  };
  e.envelope = [c, d, tol](const FamilyValues& v) { return trig_envelope(c, d, v, tol); };
  e.validate_problem = [full, n = e.name](const Problem& prob, const GridDomain& grid) {
    require_psi(prob, grid, !full, n);
  };
  return e;
}

}  // namespace

double CatalogEntry::analytic_envelope(const FamilyValues& v) const {
  if (!valid(v))
    throw HypothesisError(fmt::format("{}: analytic envelope not asserted at phi={} psi={} ({})", name, v.phi,
                                      v.psi, fmt::join(constraints, "; ")));
  return envelope(v);
}

std::optional<double> CatalogEntry::analytic_dual(const Problem& prob, const GridDomain& grid) const {
  if (!dual) return std::nullopt;
  if (validate_problem) validate_problem(prob, grid);
  return dual(prob, grid);
}

std::string CatalogEntry::config_section() const {
  std::string out = fmt::format("[family]\nkind = {}\n", name);
  for (const auto& [k, v] : params) out += fmt::format("{} = {}\n", k, v);
  if (name != "prop11") out += fmt::format("interval = {}\n", to_string(curve.domain));
  return out;
}

CatalogEntry trig_family(double c, double d, const Interval& J) {
  if (J.lo < -kHalfPi || J.hi > kHalfPi)
    throw Error(fmt::format("trig: precondition J subset of [-pi/2, pi/2] violated by J = {}", to_string(J)));
  CatalogEntry e = sine_cosine("trig", c, d, J);
  e.params = {{"c", c}, {"d", d}};
  if (covers_half_circle(J))
    e.constraints = {"psi >= 0 on X"};
  else
    e.constraints = {"psi > 0 on X", "arctan(phi/psi) in J"};
  return e;
}

CatalogEntry prop11_family(double c) {
  if (!(c >= 1.0 + kSqrt2 - 1e-12))
    throw Error(fmt::format("prop11: precondition c >= 1 + sqrt(2) violated by c = {}", c));
  CatalogEntry e = sine_cosine("prop11", c, c - kSqrt2, Interval::closed(-kHalfPi, kHalfPi));
  e.params = {{"c", c}};
  e.constraints = {"phi linear", "psi >= 0 on X", "psi Lipschitz with constant ||phi||"};
  e.dual = [c](const Problem& prob, const GridDomain& grid) {
    const double inf = grid_inf(grid, [&](PointRef x) { return prob.phi(x) + prob.psi(x); });
    return (c - 1.0 / kSqrt2) * inf;
  };
  return e;
}

CatalogEntry exp_family(const Interval& I) {
  CatalogEntry e;
  e.name = "exp";
  e.curve.alpha = [](double l) { return std::exp(l); };
  e.curve.beta = [](double l) { return (1.0 - l) * std::exp(l); };
  e.curve.alpha_prime = [](double l) { return std::exp(l); };
  e.curve.beta_prime = [](double l) { return -l * std::exp(l); };
  e.curve.domain = I;
  e.curve.derivable = I;
  e.constraints = {"psi > 0 on X", "I contains [inf phi/psi, sup phi/psi]"};
  e.valid = [I](const FamilyValues& v) { return v.psi > 0.0 && I.lo <= v.phi / v.psi && v.phi / v.psi <= I.hi; };
  e.envelope = [](const FamilyValues& v) { return std::exp(v.phi / v.psi) * v.psi + v.omega; };
  e.validate_problem = [I](const Problem& prob, const GridDomain& grid) {
    require_psi(prob, grid, true, "exp");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point p = grid.point(i);
      const double r = prob.phi(p) / prob.psi(p);
      if (r < I.lo || r > I.hi)
        throw HypothesisError(fmt::format("exp: constraint I contains phi/psi violated at x1={} (phi/psi={}, I={})",
                                          p[0], r, to_string(I)));
    }
  };
  return e;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"trig", "prop11", "exp", "lipschitz"};
  return names;
}

std::string catalog_summary(const std::string& name) {
  if (name == "trig")
    return "alpha = sin + c, beta = cos + d on J in [-pi/2, pi/2]; envelope c phi + d psi + sqrt(phi^2 + psi^2) + "
           "omega; needs psi >= 0 (full J) or arctan(phi/psi) in J";
  if (name == "prop11")
    return "alpha = sin + c, beta = cos + c - sqrt(2) on [-pi/2, pi/2], c >= 1 + sqrt(2); dual value "
           "(c - 1/sqrt(2)) inf(phi + psi); needs phi linear, psi >= 0 Lipschitz with constant ||phi||";
  if (name == "exp")
    return "alpha = e^lambda, beta = (1 - lambda) e^lambda; envelope e^(phi/psi) psi + omega; needs psi > 0 and "
           "I containing the range of phi/psi";
  if (name == "lipschitz")
    return "flags D = {lambda : |beta| L < |alpha| ||phi||} and reduces the supremum to I minus D; L and ||phi|| "
           "are user-asserted";
  throw Error(fmt::format("unknown catalog entry '{}'", name));
}

std::string catalog_config(const std::string& name) {
  const std::string domain = "[domain]\nx1 = -2, 2, 401\n\n";
  if (name == "trig")
    return domain + "[functions]\nphi = x1\npsi = 1 + x1^2\n\n" +
           trig_family(0.0, 0.0, Interval::closed(-kHalfPi, kHalfPi)).config_section();
  if (name == "prop11")
    return "[domain]\nx1 = -10, 10, 2001\n\n[functions]\nphi = x1\npsi = abs(x1)\n\n" +
           prop11_family(1.0 + kSqrt2).config_section();
  if (name == "exp")
    return domain + "[functions]\nphi = x1^2\npsi = 1 + x1^2\n\n" + exp_family(Interval::closed(0.0, 1.0)).config_section();
  if (name == "lipschitz")
    return "[domain]\nx1 = -10, 10, 2001\n\n[functions]\nphi = x1\npsi = abs(x1)\n\n" +
           prop11_family(1.0 + kSqrt2).config_section() + "\n[lipschitz]\nL = 1\nphi_norm = 1\n";
  throw Error(fmt::format("unknown catalog entry '{}'", name));
}

LipschitzReport lipschitz_criterion(const Problem& prob, const GridDomain& grid, double L, double phi_norm,
                                    int lambda_samples, int spot_checks) {
  if (lambda_samples < 2) throw Error("lipschitz criterion needs at least two lambda samples");
  if (!(L >= 0.0) || !(phi_norm >= 0.0)) throw Error("lipschitz criterion needs L >= 0 and ||phi|| >= 0");
  grid.validate();
  LipschitzReport rep;
  rep.L = L;
  rep.phi_norm = phi_norm;

  const Interval& I = prob.curve.domain;
  const Interval span = I.bounded() ? I : truncation_window(I, 8.0, 1);
  for (int j = 0; j < lambda_samples; ++j) {
    double lam = span.lo + span.width() * j / (lambda_samples - 1);
    if (j == lambda_samples - 1) lam = span.hi;
    if (!I.contains(lam)) continue;
    const double lhs = std::abs(prob.curve.beta(lam)) * L;
    const double rhs = std::abs(prob.curve.alpha(lam)) * phi_norm;
    rep.lambdas.push_back(lam);
    rep.in_d.push_back(lhs < rhs - 1e-12 * scale(rhs));
  }

  std::vector<double> d_points;
  for (std::size_t j = 0; j < rep.lambdas.size(); ++j) {
    if (rep.in_d[j]) {
      d_points.push_back(rep.lambdas[j]);
      continue;
    }
    ++rep.outside_count;
    const double v = inner_inf(prob, rep.lambdas[j], grid).value;
    if (v > rep.reduced_sup) {
      rep.reduced_sup = v;
      rep.reduced_lambda = rep.lambdas[j];
    }
  }

  const int probes = std::min<int>(spot_checks, static_cast<int>(d_points.size()));
  for (int k = 0; k < probes; ++k) {
    const std::size_t idx = probes == 1 ? d_points.size() / 2 : k * (d_points.size() - 1) / (probes - 1);
    const double lam = d_points[idx];
    double prev = inner_inf(prob, lam, grid).value;
    const double first = prev;
    bool dropping = true;
    for (int step = 1; step <= 3 && dropping; ++step) {
      const double cur = inner_inf(prob, lam, grid.expanded(std::ldexp(1.0, step))).value;
      dropping = cur < prev - 1e-6 * scale(prev);
      prev = cur;
    }
    rep.spot_lambdas.push_back(lam);
    rep.spot_unbounded.push_back(dropping && prev < first - 1.0);
  }

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  for (int k = 0; k < 4096; ++k) {
    const Point x = grid.point(pick(rng));
    const Point y = grid.point(pick(rng));
    const double dist = (x - y).norm();
    if (dist == 0.0) continue;
    rep.lipschitz_estimate = std::max(rep.lipschitz_estimate, std::abs(prob.psi(x) - prob.psi(y)) / dist);
  }
  rep.lipschitz_heuristic = rep.lipschitz_estimate <= L * (1.0 + 1e-6) + 1e-12;
  return rep;
}

}  // namespace envmin
