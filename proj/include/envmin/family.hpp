// The ratio g = beta'/alpha' of the parameter curve: sampling, monotonicity
// classification, inversion, and the numerical hypothesis checks.
#ifndef ENVMIN_FAMILY_HPP
#define ENVMIN_FAMILY_HPP

#include "envmin/grid.hpp"
#include "envmin/problem.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace envmin {

/// beta'(lambda) / alpha'(lambda). Throws HypothesisError when alpha' vanishes
/// (|alpha'| <= tol.alpha_zero) and Error on a non-finite derivative.
double g_value(const ParamCurve& curve, double lambda, const Tolerances& tol = {});

enum class Monotonicity { increasing, decreasing };

/// Sampled picture of g on the set A where the curve is derivable.
struct GProfile {
  ParamCurve curve;
  Interval set;  // A
  Monotonicity direction = Monotonicity::increasing;
  double gamma = -kInf;  // inf of g on A (extended real)
  double delta = kInf;   // sup of g on A
  bool gamma_attained = false;  // g reaches gamma at a closed end of A
  bool delta_attained = false;
  double sampled_min = 0.0;  // clipped range actually observed
  double sampled_max = 0.0;
  int sample_count = 0;
  std::vector<double> lambdas;  // interior sample points, ascending
  Tolerances tol;

  double g(double lambda) const { return g_value(curve, lambda, tol); }
  bool increasing() const { return direction == Monotonicity::increasing; }
  /// True when mu lies in g(A), counting attained end values.
  bool in_range(double mu) const;
};

struct ProfileOptions {
  int samples = 256;
  double window = 8.0;  // sampled span next to an infinite end of A
};

/// Samples g on a uniform interior grid of A plus geometric sequences towards
/// each end, which also give gamma and delta. Throws HypothesisError when the
/// sampled differences are not all of one strict sign or alpha' vanishes.
GProfile build_g_profile(const ParamCurve& curve, int samples = 256, const Tolerances& tol = {},
                         double window = 8.0);

/// g^{-1}(mu) by bisection to machine precision. Requires gamma < mu < delta.
double g_inverse(const GProfile& gp, double mu);

enum class CheckStatus { pass, fail, skipped };
enum class SignCase { i3, i4, neither };

std::string to_string(CheckStatus s);
std::string to_string(SignCase s);

struct HypothesisReport {
  std::vector<std::pair<double, CheckStatus>> i1_grid_connected;  // per sampled lambda
  bool i2_monotone = false;
  SignCase sign_condition = SignCase::neither;
  bool range_condition_i2prime = false;
  bool compact_interval = false;
  std::optional<GProfile> profile;
  std::string notes;

  bool i1_passed() const;
  /// (i2) with (i3) or (i4): the closed-form envelope is available.
  bool closed_form_available() const;
  /// Every hypothesis of the applicable theorem (compact or unbounded I).
  bool passed() const;
};

struct CheckOptions {
  ProfileOptions profile;
  int i1_lambdas = 9;
  int i1_thresholds = 16;
};

/// Runs every check; failures are reported, never thrown.
HypothesisReport check_hypotheses(const Problem& prob, const GridDomain& grid, const CheckOptions& opts = {},
                                  const Tolerances& tol = {});
HypothesisReport check_hypotheses(const Problem& prob, const GProfile& gp, const GridDomain& grid,
                                  const CheckOptions& opts = {});

}  // namespace envmin

#endif  // ENVMIN_FAMILY_HPP
