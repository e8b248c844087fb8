// Built-in parameter curves with analytic envelopes and dual values, used as
// independent oracles for the numerical pipeline.
#ifndef ENVMIN_CATALOG_HPP
#define ENVMIN_CATALOG_HPP

#include "envmin/duality.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace envmin {

struct CatalogEntry {
  std::string name;
  ParamCurve curve;
  std::map<std::string, double> params;
  std::vector<std::string> constraints;  // human-readable preconditions

  /// Whether the analytic envelope is asserted at this point.
  std::function<bool(const FamilyValues&)> valid;
  std::function<double(const FamilyValues&)> envelope;
  /// Closed-form dual value over the grid, when the entry has one.
  std::function<double(const Problem&, const GridDomain&)> dual;
  /// Throws HypothesisError naming the violated constraint.
  std::function<void(const Problem&, const GridDomain&)> validate_problem;

  /// Analytic envelope; throws HypothesisError outside the valid region.
  double analytic_envelope(const FamilyValues& v) const;
  std::optional<double> analytic_dual(const Problem& prob, const GridDomain& grid) const;
  /// The [family] section of an equivalent config file.
  std::string config_section() const;
};

/// alpha = sin + c, beta = cos + d on J, which must lie inside [-pi/2, pi/2].
CatalogEntry trig_family(double c, double d, const Interval& J);

/// alpha = sin + c, beta = cos + c - sqrt(2) on [-pi/2, pi/2]; requires c >= 1 + sqrt(2).
CatalogEntry prop11_family(double c);

/// alpha = e^lambda, beta = (1 - lambda) e^lambda on I, derivable on all of I.
CatalogEntry exp_family(const Interval& I);

const std::vector<std::string>& catalog_names();

/// One-line description and constraints of a catalog name.
std::string catalog_summary(const std::string& name);

/// Example config text for a catalog name.
std::string catalog_config(const std::string& name);

struct LipschitzReport {
  double L = 1.0;
  double phi_norm = 1.0;
  std::vector<double> lambdas;
  std::vector<char> in_d;  // |beta| L < |alpha| ||phi||
  double reduced_sup = -kInf;  // sup of inner_inf over the sampled points outside D
  double reduced_lambda = 0.0;
  int outside_count = 0;
  std::vector<double> spot_lambdas;  // D points probed for unboundedness
  std::vector<char> spot_unbounded;  // inner inf kept dropping as the window grew
  double lipschitz_estimate = 0.0;   // largest sampled |psi(x) - psi(y)| / |x - y|
  bool lipschitz_heuristic = true;   // estimate <= L within 1e-6 relative
};

/// Samples lambda on I and flags membership in D; the reduced supremum runs
/// over I minus D only. Unboundedness below on D is spot-checked by doubling
/// the grid window. The Lipschitz constant is user-asserted and checked only
/// by random two-point sampling.
LipschitzReport lipschitz_criterion(const Problem& prob, const GridDomain& grid, double L, double phi_norm,
                                    int lambda_samples = 257, int spot_checks = 3);

}  // namespace envmin

#endif  // ENVMIN_CATALOG_HPP
