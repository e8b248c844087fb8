// Rectangular sampling of X and the scan-and-shrink minimizer used for every
// infimum over X.
#ifndef ENVMIN_GRID_HPP
#define ENVMIN_GRID_HPP

#include "envmin/types.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace envmin {

using Resolution = Eigen::Array<long, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

struct GridDomain {
  int dim = 1;
  Point lo;
  Point hi;
  Resolution resolution;
  int refine_rounds = 2;

  static constexpr std::size_t kMaxPoints = 100'000'000;

  GridDomain() = default;
  GridDomain(Point lo_, Point hi_, Resolution res, int refine = 2);

  /// One-dimensional convenience constructor.
  static GridDomain line(double lo, double hi, long resolution, int refine = 2);
  static GridDomain box(std::span<const double> lo, std::span<const double> hi, long resolution,
                        int refine = 2);

  /// Throws Error when an invariant is broken.
  void validate() const;

  std::size_t size() const;
  double spacing(int axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(resolution[axis] - 1); }

  /// Lexicographic order with x1 most significant.
  Point point(std::size_t flat) const;
  Eigen::Array<long, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1> index(std::size_t flat) const;
  bool on_boundary(std::size_t flat) const;

  /// Same resolution on the box [center - half, center + half] clipped to this grid.
  GridDomain sub_box(PointRef center, const Point& half_width) const;

  /// Box scaled about its center by `factor`.
  GridDomain expanded(double factor) const;
};

struct GridMinimum {
  double value = kInf;
  Point x;
  std::size_t flat_index = 0;  // index of the best point of the initial scan
};

/// Scans every grid point, then runs `refine_rounds` rounds that re-scan the
/// box of one grid spacing around the incumbent at full resolution. Ties keep
/// the earliest point. `seeds` are extra candidates scanned after the grid.
/// +inf is an admissible value; NaN and -inf throw Error.
GridMinimum grid_minimize(const GridDomain& grid, const std::function<double(PointRef)>& f,
                          std::span<const Point> seeds = {});

}  // namespace envmin

#endif  // ENVMIN_GRID_HPP
