// Core value types shared by every module.
#ifndef ENVMIN_TYPES_HPP
#define ENVMIN_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace envmin {

inline constexpr int kMaxDim = 3;

/// A point of the sampled domain X. Stack-allocated, at most three coordinates.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using PointRef = Eigen::Ref<const Point>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative scale used by every "1e-k * max(1, |v|)" style tolerance.
inline double scale(double v) { return std::max(1.0, std::abs(v)); }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a theorem's hypothesis is found violated at a sampled point.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// An interval of the extended real line. An infinite end is always open.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool closed_lo = true;
  bool closed_hi = true;

  Interval() = default;
  Interval(double l, double h, bool cl = true, bool ch = true)
      : lo(l), hi(h), closed_lo(cl && std::isfinite(l)), closed_hi(ch && std::isfinite(h)) {
    if (!(lo < hi)) throw Error("interval requires lo < hi");
  }

  static Interval closed(double l, double h) { return {l, h, true, true}; }
  static Interval open(double l, double h) { return {l, h, false, false}; }

  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool compact() const { return bounded() && closed_lo && closed_hi; }
  double width() const { return hi - lo; }

  bool contains(double v) const {
    return (closed_lo ? v >= lo : v > lo) && (closed_hi ? v <= hi : v < hi);
  }
  bool contains_interior(double v) const { return v > lo && v < hi; }
  bool contains(const Interval& o) const {
    const bool lo_ok = o.lo > lo || (o.lo == lo && (closed_lo || !o.closed_lo));
    const bool hi_ok = o.hi < hi || (o.hi == hi && (closed_hi || !o.closed_hi));
    return lo_ok && hi_ok;
  }
  double clamp(double v) const { return std::min(std::max(v, lo), hi); }
};

std::string to_string(const Interval& i);

/// Numerical thresholds. Every default is overridable from the command line.
struct Tolerances {
  double alpha_zero = 1e-12;    // |alpha'| at or below this violates (i2)
  double psi_zero = 1e-9;       // |psi(x)| at or below this takes the psi = 0 branch
  double fd_step = 1e-6;        // central-difference step, scaled by max(1, |lambda|)
  double equality = 1e-4;       // relative gap below which minimax equality is declared
  double estimate = 1e-7;       // slack allowed on the one-sided estimate
  double exhaustion = 1e-9;     // relative improvement that ends the exhaustion schedule
  double equilibrium = 1e-4;    // relative residual that certifies an equilibrium point
};

}  // namespace envmin

#endif  // ENVMIN_TYPES_HPP
