#include "envmin/envelope.hpp"

#include <fmt/format.h>

namespace envmin {

HSelector make_h_selector(const GProfile& gp, const Interval& I, SignCase sign_case) {
  if (sign_case == SignCase::neither) throw Error("h needs (i3) or (i4)");
  if ((sign_case == SignCase::i3) != gp.increasing())
    throw Error(fmt::format("sign case {} requires g {}", to_string(sign_case),
                            sign_case == SignCase::i3 ? "increasing" : "decreasing"));
  return {gp, I.lo, I.hi, sign_case};
}

double h_select(const HSelector& h, double mu) {
  const GProfile& gp = h.profile;
  if (mu > gp.gamma && mu < gp.delta) return g_inverse(gp, mu);
  const bool i3 = h.sign_case == SignCase::i3;
  if (mu <= gp.gamma) return i3 ? h.a : h.b;
  return i3 ? h.b : h.a;
}

std::string to_string(ArgKind k) {
  switch (k) {
    case ArgKind::interior:
      return "interior";
    case ArgKind::lower_end:
      return "lower-end";
    case ArgKind::upper_end:
      return "upper-end";
    case ArgKind::whole_interval:
      return "whole-interval";
  }
  return "?";
}

namespace {

ArgKind kind_of(double lambda, const Interval& I) {
  if (lambda == I.lo) return ArgKind::lower_end;
  if (lambda == I.hi) return ArgKind::upper_end;
  return ArgKind::interior;
}

ExhaustionOptions exhaustion(const EnvelopeOptions& opts) {
  ExhaustionOptions e;
  e.grid_size = opts.lambda_grid;
  e.refine = opts.refine;
  e.window = opts.window;
  e.tol = opts.tol.exhaustion;
  e.max_truncations = opts.max_truncations;
  return e;
}

}  // namespace

EnvelopeValue envelope_closed_form(const ParamCurve& curve, const HSelector& h, const FamilyValues& v,
                                   const EnvelopeOptions& opts) {
  const Interval& I = curve.domain;
  EnvelopeValue out;
  if (std::abs(v.psi) <= opts.tol.psi_zero) {
    out.branch = Branch::psi_zero;
    if (v.phi == 0.0) {
      out.phi_of_x = v.omega;
      out.arg_kind = ArgKind::whole_interval;
      out.argmax_lambda = I.bounded() ? 0.5 * (I.lo + I.hi) : I.clamp(0.0);
      return out;
    }
    if (I.compact()) {
      const double at_a = curve.alpha(I.lo) * v.phi;
      const double at_b = curve.alpha(I.hi) * v.phi;
      out.phi_of_x = std::max(at_a, at_b) + v.omega;
      out.argmax_lambda = at_a >= at_b ? I.lo : I.hi;
      out.arg_kind = at_a >= at_b ? ArgKind::lower_end : ArgKind::upper_end;
      return out;
    }
    // sup of alpha(lambda) phi over an unbounded or open I
    const ExhaustionResult r =
        maximize_exhausting([&](double lam) { return curve.alpha(lam) * v.phi; }, I, exhaustion(opts));
    out.phi_of_x = r.divergent ? kInf : r.value + v.omega;
    out.argmax_lambda = r.arg;
    out.arg_kind = kind_of(r.arg, I);
    return out;
  }

  const double lam = h_select(h, -v.phi / v.psi);
  if (!std::isfinite(lam))
    throw HypothesisError(fmt::format("-phi/psi = {} is outside g(A); the supremum is not attained in I",
                                      -v.phi / v.psi));
  out.argmax_lambda = lam;
  out.arg_kind = kind_of(lam, I);
  out.phi_of_x = Problem::family(curve, v, lam);
  return out;
}

EnvelopeValue envelope_closed_form(const Problem& prob, const HSelector& h, PointRef x, const EnvelopeOptions& opts) {
  return envelope_closed_form(prob.curve, h, prob.values(x), opts);
}

EnvelopeValue envelope_brute(const ParamCurve& curve, const FamilyValues& v, const EnvelopeOptions& opts) {
  if (opts.lambda_grid < 64) throw Error("envelope brute force needs a lambda grid of at least 64 points");
  const Interval& I = curve.domain;
  EnvelopeValue out;
  out.branch = std::abs(v.psi) <= opts.tol.psi_zero ? Branch::psi_zero : Branch::generic;
  if (v.phi == 0.0 && v.psi == 0.0) {
    out.phi_of_x = v.omega;
    out.arg_kind = ArgKind::whole_interval;
    out.argmax_lambda = I.bounded() ? 0.5 * (I.lo + I.hi) : I.clamp(0.0);
    return out;
  }
  const ExhaustionResult r =
      maximize_exhausting([&](double lam) { return Problem::family(curve, v, lam); }, I, exhaustion(opts));
  out.phi_of_x = r.divergent ? kInf : r.value;
  out.argmax_lambda = r.arg;
  out.arg_kind = kind_of(r.arg, I);
  return out;
}

EnvelopeValue envelope_brute(const Problem& prob, PointRef x, const EnvelopeOptions& opts) {
  return envelope_brute(prob.curve, prob.values(x), opts);
}

}  // namespace envmin
