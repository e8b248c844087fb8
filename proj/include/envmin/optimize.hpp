// One-dimensional maximization over the parameter interval: uniform grid,
// golden-section polish, and the exhaustion schedule for unbounded intervals.
#ifndef ENVMIN_OPTIMIZE_HPP
#define ENVMIN_OPTIMIZE_HPP

#include "envmin/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace envmin {

using RealFn = std::function<double(double)>;

struct Max1D {
  double value = -kInf;
  double arg = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Non-finite values count as -inf.
Max1D golden_section_max(const RealFn& f, double lo, double hi, double rel_tol = 1e-12, int max_iter = 200);

/// Best point of an n-point uniform grid on [lo, hi] (endpoints included,
/// first maximum wins), optionally polished by golden section on the two
/// cells around it. The polished value is kept only if it is larger.
Max1D maximize_on_grid(const RealFn& f, double lo, double hi, int n, bool refine);

struct Truncation {
  Interval window;
  double value = -kInf;
  double arg = 0.0;
};

struct ExhaustionOptions {
  int grid_size = 257;
  bool refine = true;
  double window = 1.0;       // width of the first truncation
  double tol = 1e-9;         // relative improvement that counts as converged
  int max_truncations = 12;  // windows double each time
};

struct ExhaustionResult {
  double value = -kInf;
  double arg = 0.0;
  bool converged = false;
  bool divergent = false;  // value reported as +inf
  std::vector<Truncation> trace;
  std::string diagnostic;
};

/// Supremum of f over I. A compact interval is handled in one pass; an
/// unbounded one by the nested windows I_n anchored at the finite end (or at
/// 0), each twice as wide as the last. The trace is non-decreasing: an
/// earlier witness stays valid on every larger window. The result is
/// divergent when a value is +inf, or when the cap is reached after three
/// consecutive growths at a moving end whose gains are not shrinking
/// geometrically.
ExhaustionResult maximize_exhausting(const RealFn& f, const Interval& I, const ExhaustionOptions& opts);

/// The n-th window of the schedule.
Interval truncation_window(const Interval& I, double width, int n);

}  // namespace envmin

#endif  // ENVMIN_OPTIMIZE_HPP
