// Both sides of the estimate
//   sup_lambda inf_x f(x, lambda) <= inf_x sup_lambda f(x, lambda),
// the gap between them, and the search for equilibrium points.
#ifndef ENVMIN_DUALITY_HPP
#define ENVMIN_DUALITY_HPP

#include "envmin/envelope.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace envmin {

struct DualityOptions {
  int lambda_grid = 257;
  double window = 1.0;       // first truncation width for unbounded I
  int max_truncations = 12;
  CheckOptions check;
  Tolerances tol;

  EnvelopeOptions envelope(bool refine) const;
};

struct InnerInf {
  double value = kInf;
  Point x;
};

/// inf over X of f(., lambda) by grid scan plus shrinking refinement; ties go
/// to the smallest lexicographic grid index. `seeds` are extra candidates.
/// Throws Error on a non-finite value.
InnerInf inner_inf(const Problem& prob, double lambda, const GridDomain& grid, std::span<const Point> seeds = {});

struct SupInf {
  double value = -kInf;
  double lambda = 0.0;
  Point x;  // minimizer of the inner problem at lambda
  bool converged = true;
  bool divergent = false;
  std::vector<Truncation> trace;
  std::string diagnostic;
};

/// sup over I of inner_inf: uniform grid plus golden section, with the
/// exhaustion schedule on an unbounded I.
SupInf sup_inf(const Problem& prob, const GridDomain& grid, const DualityOptions& opts = {},
               std::span<const Point> seeds = {});

struct InfSup {
  double value = kInf;
  Point x;
  bool closed_form = false;
};

/// inf over X of Phi. Uses the closed form when `h` is given, otherwise the
/// brute-force envelope (golden polish only when `refine_brute`).
InfSup inf_sup(const Problem& prob, const GridDomain& grid, const HSelector* h, const DualityOptions& opts = {},
               bool refine_brute = false);

/// Builds the selector when the sampled hypotheses support the closed form.
std::optional<HSelector> selector_for(const Problem& prob, const HypothesisReport& rep);

struct DualityReport {
  double inf_sup = kInf;
  double sup_inf = -kInf;
  double gap = 0.0;
  double lambda_witness = 0.0;
  Point x_witness;
  Point x_dual;  // inner minimizer at lambda_witness
  bool equality = false;
  bool closed_form = false;
  std::vector<Truncation> truncation_trace;
  HypothesisReport hypotheses;
  std::string diagnostic;
};

/// Thrown when the computed sides contradict the unconditional estimate.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

DualityReport duality_report(const Problem& prob, const GridDomain& grid, const DualityOptions& opts = {});

struct EquilibriumResult {
  Point x_tilde;
  double lambda_tilde = 0.0;
  double mu = 0.0;          // -phi(x~)/psi(x~)
  double lhs = 0.0;         // Phi(x~) = f(x~, lambda~)
  double rhs = 0.0;         // inf_x f(x, lambda~)
  double residual = 0.0;
  Point rhs_minimizer;
  bool certified = false;
};

/// x~ is the minimizer of Phi; lambda~ = h(-phi(x~)/psi(x~)). Throws Error
/// when psi vanishes somewhere on the grid.
EquilibriumResult find_equilibrium(const Problem& prob, const GridDomain& grid, const HSelector& h,
                                   const DualityOptions& opts = {});

}  // namespace envmin

#endif  // ENVMIN_DUALITY_HPP
