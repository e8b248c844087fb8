#include "envmin/duality.hpp"

#include <fmt/format.h>

namespace envmin {

EnvelopeOptions DualityOptions::envelope(bool refine) const {
  EnvelopeOptions e;
  e.lambda_grid = lambda_grid;
  e.refine = refine;
  e.window = window;
  e.max_truncations = max_truncations;
  e.tol = tol;
  return e;
}

InnerInf inner_inf(const Problem& prob, double lambda, const GridDomain& grid, std::span<const Point> seeds) {
  grid.validate();
  const double a = prob.curve.alpha(lambda);
  const double b = prob.curve.beta(lambda);
  auto f = [&](PointRef x) {
    const FamilyValues v = prob.values(x);
    const double y = a * v.phi + b * v.psi + v.omega;
    if (!std::isfinite(y))
      throw Error(fmt::format("non-finite value of the family at lambda={} x1={}", lambda, x[0]));
    return y;
  };
  const GridMinimum m = grid_minimize(grid, f, seeds);
  return {m.value, m.x};
}

SupInf sup_inf(const Problem& prob, const GridDomain& grid, const DualityOptions& opts, std::span<const Point> seeds) {
  if (opts.lambda_grid < 64) throw Error("sup-inf needs a lambda grid of at least 64 points");
  std::size_t failures = 0;
  auto inner = [&](double lam) {
    try {
      return inner_inf(prob, lam, grid, seeds).value;
    } catch (const Error&) {
      ++failures;  // overflow far out on an unbounded I; the point cannot be the supremum
      return -kInf;
    }
  };
  ExhaustionOptions ex;
  ex.grid_size = opts.lambda_grid;
  ex.refine = true;
  ex.window = opts.window;
  ex.tol = opts.tol.exhaustion;
  ex.max_truncations = opts.max_truncations;
  const ExhaustionResult r = maximize_exhausting(inner, prob.curve.domain, ex);

  SupInf out;
  out.trace = r.trace;
  out.converged = r.converged;
  out.divergent = r.divergent;
  out.diagnostic = r.diagnostic;
  if (failures > 0)
    out.diagnostic += fmt::format("{}{} lambda value(s) skipped after non-finite family values",
                                  out.diagnostic.empty() ? "" : "; ", failures);
  out.lambda = r.arg;
  if (r.divergent) {
    out.value = kInf;
    return out;
  }
  if (!std::isfinite(r.value)) throw Error("sup-inf: the inner infimum is non-finite at every sampled lambda");
  const InnerInf at = inner_inf(prob, r.arg, grid, seeds);
  out.value = at.value;
  out.x = at.x;
  return out;
}

InfSup inf_sup(const Problem& prob, const GridDomain& grid, const HSelector* h, const DualityOptions& opts,
               bool refine_brute) {
  grid.validate();
  const EnvelopeOptions env = opts.envelope(refine_brute);
  auto phi = [&](PointRef x) {
    const EnvelopeValue v = h ? envelope_closed_form(prob, *h, x, env) : envelope_brute(prob, x, env);
    return v.phi_of_x;
  };
  const GridMinimum m = grid_minimize(grid, phi);
  return {m.value, m.x, h != nullptr};
}

std::optional<HSelector> selector_for(const Problem& prob, const HypothesisReport& rep) {
  if (!rep.closed_form_available() || !rep.profile) return std::nullopt;
  return make_h_selector(*rep.profile, prob.curve.domain, rep.sign_condition);
}

DualityReport duality_report(const Problem& prob, const GridDomain& grid, const DualityOptions& opts) {
  DualityReport rep;
  rep.hypotheses = check_hypotheses(prob, grid, opts.check, opts.tol);
  const std::optional<HSelector> h = selector_for(prob, rep.hypotheses);

  const InfSup primal = inf_sup(prob, grid, h ? &*h : nullptr, opts, h.has_value());
  const Point seed[] = {primal.x};
  const SupInf dual = sup_inf(prob, grid, opts, seed);

  rep.closed_form = primal.closed_form;
  rep.x_witness = primal.x;
  rep.x_dual = dual.x;
  rep.lambda_witness = dual.lambda;
  rep.truncation_trace = dual.trace;
  rep.diagnostic = dual.diagnostic;
  rep.sup_inf = dual.value;
  rep.inf_sup = primal.value;
  if (std::isfinite(dual.value) && prob.curve.domain.contains(dual.lambda)) {
    // Phi(x~) is a supremum over I, so the dual witness bounds it from below
    rep.inf_sup = std::max(rep.inf_sup, prob.family(primal.x, dual.lambda));
  }

  if (rep.sup_inf > rep.inf_sup + opts.tol.estimate * scale(rep.inf_sup))
    throw ConsistencyError(fmt::format("sup-inf {} exceeds inf-sup {}: solver inconsistency", rep.sup_inf,
                                       rep.inf_sup));
  if (rep.inf_sup == kInf && rep.sup_inf == kInf)
    rep.gap = 0.0;
  else
    rep.gap = std::max(0.0, rep.inf_sup - rep.sup_inf);
  rep.equality = rep.gap <= opts.tol.equality * scale(rep.inf_sup);
  return rep;
}

EquilibriumResult find_equilibrium(const Problem& prob, const GridDomain& grid, const HSelector& h,
                                   const DualityOptions& opts) {
  grid.validate();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point p = grid.point(i);
    if (std::abs(prob.psi(p)) <= opts.tol.psi_zero)
      throw Error(fmt::format("psi vanishes on the grid at x1={}; equilibrium search needs psi != 0", p[0]));
  }

  EquilibriumResult out;
  out.x_tilde = inf_sup(prob, grid, &h, opts).x;
  const FamilyValues v = prob.values(out.x_tilde);
  out.mu = -v.phi / v.psi;
  out.lambda_tilde = h_select(h, out.mu);
  if (!std::isfinite(out.lambda_tilde))
    throw HypothesisError("the selector sends lambda~ to an infinite end of I");
  out.lhs = Problem::family(prob.curve, v, out.lambda_tilde);
  const Point seed[] = {out.x_tilde};
  const InnerInf rhs = inner_inf(prob, out.lambda_tilde, grid, seed);
  out.rhs = rhs.value;
  out.rhs_minimizer = rhs.x;
  out.residual = std::abs(out.lhs - out.rhs);
  out.certified = out.residual <= opts.tol.equilibrium * scale(out.lhs);
  return out;
}

}  // namespace envmin
