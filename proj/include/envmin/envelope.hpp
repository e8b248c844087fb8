// The upper envelope Phi(x) = sup over lambda of
// alpha(lambda) phi(x) + beta(lambda) psi(x) + omega(x),
// in closed form through the selector h and by brute force over lambda.
#ifndef ENVMIN_ENVELOPE_HPP
#define ENVMIN_ENVELOPE_HPP

#include "envmin/family.hpp"
#include "envmin/optimize.hpp"

namespace envmin {

/// Clamped inverse of g: maps the ratio mu = -phi/psi to the maximizing lambda.
struct HSelector {
  GProfile profile;
  double a = 0.0;  // ends of I, possibly infinite
  double b = 1.0;
  SignCase sign_case = SignCase::i3;
};

/// Throws Error when `sign_case` is neither or disagrees with the profile's direction.
HSelector make_h_selector(const GProfile& gp, const Interval& I, SignCase sign_case);

/// g^{-1}(mu) inside (gamma, delta); a or b outside, following (i3)/(i4):
///   mu <= gamma: a under (i3), b under (i4)
///   mu >= delta: b under (i3), a under (i4)
double h_select(const HSelector& h, double mu);

enum class ArgKind { interior, lower_end, upper_end, whole_interval };
enum class Branch { generic, psi_zero };

std::string to_string(ArgKind k);

struct EnvelopeValue {
  double phi_of_x = 0.0;  // +inf when the supremum is unbounded
  double argmax_lambda = 0.0;
  ArgKind arg_kind = ArgKind::interior;
  Branch branch = Branch::generic;
};

struct EnvelopeOptions {
  int lambda_grid = 257;
  bool refine = true;  // golden-section polish; only justified when the maximizer is unique
  double window = 1.0;
  int max_truncations = 12;
  Tolerances tol;
};

/// Closed form at one point. For psi(x) = 0 on a compact I the value is
/// max{alpha(a) phi, alpha(b) phi} + omega; on an unbounded I it is the
/// supremum of alpha(lambda) phi(x) over I (possibly +inf). Throws
/// HypothesisError when the selector would send lambda to an infinite end.
EnvelopeValue envelope_closed_form(const ParamCurve& curve, const HSelector& h, const FamilyValues& v,
                                   const EnvelopeOptions& opts = {});
EnvelopeValue envelope_closed_form(const Problem& prob, const HSelector& h, PointRef x,
                                   const EnvelopeOptions& opts = {});

/// Maximum over a uniform lambda grid, polished by golden section when
/// `opts.refine` is set; unbounded I goes through the exhaustion schedule.
EnvelopeValue envelope_brute(const ParamCurve& curve, const FamilyValues& v, const EnvelopeOptions& opts = {});
EnvelopeValue envelope_brute(const Problem& prob, PointRef x, const EnvelopeOptions& opts = {});

}  // namespace envmin

#endif  // ENVMIN_ENVELOPE_HPP
