// Grid-level sublevel-set analysis: connected components, an inf-connectedness
// sweep, local minima, and the two-branch alternative for equilibrium points.
#ifndef ENVMIN_TOPOLOGY_HPP
#define ENVMIN_TOPOLOGY_HPP

#include "envmin/duality.hpp"
#include "envmin/grid.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace envmin {

/// Values of a function at every grid point, in the grid's flat order.
struct SampledField {
  GridDomain grid;
  Eigen::ArrayXd values;
};

SampledField sample(const GridDomain& grid, const std::function<double(PointRef)>& f);

struct SublevelAnalysis {
  double threshold = 0.0;
  int component_count = 0;
  bool is_connected = true;
  bool compact = true;   // no marked point on the boundary layer
  bool strict = true;    // {f < r} rather than {f <= r}
  std::vector<int> labels;  // component id per grid point, -1 when unmarked
};

/// Marks {f < r} (or {f <= r}) and labels its components under
/// edge-adjacency. Dimension must be 1 or 2.
SublevelAnalysis sublevel_components(const SampledField& f, double r, bool strict = true);

/// Thresholds at `count` evenly spaced quantiles of the sampled values.
std::vector<double> quantile_thresholds(const SampledField& f, int count);

/// Passes when every strict sublevel set at the quantile thresholds is
/// connected. Requires count >= 8.
bool inf_connected_check(const SampledField& f, int thresholds = 16);

struct LocalMinimaReport {
  std::vector<std::pair<Point, double>> minima;
  std::vector<std::size_t> indices;
  int count = 0;
};

/// Grid points no larger than any edge neighbour; connected plateaus of such
/// points count once, represented by their first point.
LocalMinimaReport local_minima(const SampledField& f);

enum class Alternative { assertion_a, assertion_b, inconclusive };

std::string to_string(Alternative a);

struct AlternativeResult {
  Alternative outcome = Alternative::inconclusive;
  std::optional<EquilibriumResult> equilibrium;
  std::vector<double> lambdas;    // sampled parameters, ascending
  std::vector<char> double_well;  // >= 2 local minima with a compact disconnected sublevel
  double run_lo = 0.0;            // longest run of consecutive flagged samples
  double run_hi = 0.0;
  int run_length = 0;
  std::string note;
};

/// Tries assertion (a) through find_equilibrium; when its residual is not
/// certified, sweeps lambda for a run of at least two consecutive samples
/// whose section has two or more local minima and a compact, disconnected
/// closed sublevel set. Only the sampled run is certified, not an open interval.
AlternativeResult alternative_check(const Problem& prob, const GridDomain& grid, const HSelector& h,
                                    int lambda_samples = 64, const DualityOptions& opts = {});

}  // namespace envmin

#endif  // ENVMIN_TOPOLOGY_HPP
