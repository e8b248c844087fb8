// A problem instance: the functions phi, psi, omega on X and the parameter
// curve (alpha, beta) on the interval I.
#ifndef ENVMIN_PROBLEM_HPP
#define ENVMIN_PROBLEM_HPP

#include "envmin/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace envmin {

using ScalarField = std::function<double(PointRef)>;
using CurveFn = std::function<double(double)>;

struct ParamCurve {
  CurveFn alpha;
  CurveFn beta;
  CurveFn alpha_prime;  // empty: central finite differences
  CurveFn beta_prime;
  Interval domain;                     // I
  std::optional<Interval> derivable;   // A, with int(I) <= A <= I; defaults to int(I)

  Interval derivable_set() const;

  double d_alpha(double lambda, const Tolerances& tol = {}) const;
  double d_beta(double lambda, const Tolerances& tol = {}) const;
  bool has_derivatives() const { return alpha_prime && beta_prime; }
};

/// Values of phi, psi, omega at one point of X.
struct FamilyValues {
  double phi = 0.0;
  double psi = 0.0;
  double omega = 0.0;
};

struct Problem {
  std::string name;
  int dim = 1;
  ScalarField phi;
  ScalarField psi;
  ScalarField omega;  // empty means omega = 0
  ParamCurve curve;

  FamilyValues values(PointRef x) const;

  /// alpha(lambda) phi(x) + beta(lambda) psi(x) + omega(x)
  double family(PointRef x, double lambda) const;
  static double family(const ParamCurve& c, const FamilyValues& v, double lambda);
};

}  // namespace envmin

#endif  // ENVMIN_PROBLEM_HPP
