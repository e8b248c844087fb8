// Problem files: a flat INI-style text format with sections.
//
//   [problem]    name
//   [domain]     x1 = lo, hi, resolution   (x2, x3 likewise; axes consecutive)
//                refine = rounds of grid refinement (default 2)
//   [functions]  phi, psi (required), omega (optional, default 0)
//   [family]     kind = custom | trig | prop11 | exp
//                custom: alpha, beta, interval, optional alpha_prime and
//                        beta_prime (both or neither), optional derivable
//                trig:   c, d (default 0), interval (default [-pi/2, pi/2])
//                prop11: c
//                exp:    interval
//   [solver]     lambda_grid, window, max_truncations, g_samples,
//                i1_lambdas, i1_thresholds, alternative_samples
//   [tolerances] alpha_zero, psi_zero, fd_step, equality, estimate,
//                exhaustion, equilibrium
//   [lipschitz]  L, phi_norm
//   [output]     csv
//
// Intervals are written "[a, b]", "(a, b]", "[a, inf)" and so on; endpoints
// and domain bounds are constant expressions such as "-pi/2".
#ifndef ENVMIN_CONFIG_HPP
#define ENVMIN_CONFIG_HPP

#include "envmin/catalog.hpp"
#include "envmin/expr.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace envmin {

/// Any problem in a problem file; the message names the offending key,
/// line, or constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct LipschitzData {
  double L = 1.0;
  double phi_norm = 1.0;
};

struct ProblemConfig {
  Problem problem;
  GridDomain grid;
  std::string family_kind = "custom";
  std::optional<CatalogEntry> catalog;
  DualityOptions solver;
  int alternative_samples = 64;
  std::optional<LipschitzData> lipschitz;
  std::optional<std::string> csv;
};

ProblemConfig load_problem(const std::string& path);
ProblemConfig parse_problem(std::istream& in, const std::string& origin = "<input>");

/// Parses "[a, b]", "(a, inf)" and the like.
Interval parse_interval(const std::string& text);

}  // namespace envmin

#endif  // ENVMIN_CONFIG_HPP
