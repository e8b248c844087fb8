#include "envmin/topology.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace envmin {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_low_dim(const GridDomain& g) {
  if (g.dim > 2) throw Error(fmt::format("sublevel analysis supports dimension 1 or 2, got {}", g.dim));
}

// Calls visit(i, j) for every edge-adjacent pair with i < j.
template <typename Visit>
void for_each_edge(const GridDomain& g, Visit&& visit) {
  if (g.dim == 1) {
    const auto n = static_cast<std::size_t>(g.resolution[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) visit(i, i + 1);
    return;
  }
  const auto n1 = static_cast<std::size_t>(g.resolution[0]);
  const auto n2 = static_cast<std::size_t>(g.resolution[1]);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t k = i * n2 + j;
      if (j + 1 < n2) visit(k, k + 1);
      if (i + 1 < n1) visit(k, k + n2);
    }
  }
}

}  // namespace

SampledField sample(const GridDomain& grid, const std::function<double(PointRef)>& f) {
  SampledField s{grid, Eigen::ArrayXd(static_cast<Eigen::Index>(grid.size()))};
  for (std::size_t i = 0; i < grid.size(); ++i) s.values[static_cast<Eigen::Index>(i)] = f(grid.point(i));
  return s;
}

SublevelAnalysis sublevel_components(const SampledField& f, double r, bool strict) {
  require_low_dim(f.grid);
  const std::size_t n = f.grid.size();
  std::vector<char> marked(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = f.values[static_cast<Eigen::Index>(i)];
    marked[i] = strict ? v < r : v <= r;
  }

  DisjointSets sets(n);
  for_each_edge(f.grid, [&](std::size_t a, std::size_t b) {
    if (marked[a] && marked[b]) sets.unite(a, b);
  });

  SublevelAnalysis out;
  out.threshold = r;
  out.strict = strict;
  out.labels.assign(n, -1);
  std::vector<int> root_label(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!marked[i]) continue;
    const std::size_t root = sets.find(i);
    if (root_label[root] < 0) root_label[root] = out.component_count++;
    out.labels[i] = root_label[root];
    if (f.grid.on_boundary(i)) out.compact = false;
  }
  out.is_connected = out.component_count <= 1;
  return out;
}

std::vector<double> quantile_thresholds(const SampledField& f, int count) {
  std::vector<double> sorted(f.values.data(), f.values.data() + f.values.size());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(count));
  const double last = static_cast<double>(sorted.size() - 1);
  for (int k = 1; k <= count; ++k) {
    const auto idx = static_cast<std::size_t>(std::floor(last * k / (count + 1)));
    r.push_back(sorted[idx]);
  }
  return r;
}

bool inf_connected_check(const SampledField& f, int thresholds) {
  if (thresholds < 8) throw Error("inf-connectedness sweep needs at least 8 thresholds");
  for (double r : quantile_thresholds(f, thresholds))
    if (!sublevel_components(f, r, true).is_connected) return false;
  return true;
}

LocalMinimaReport local_minima(const SampledField& f) {
  require_low_dim(f.grid);
  const std::size_t n = f.grid.size();
  std::vector<char> candidate(n, 1);
  auto v = [&](std::size_t i) { return f.values[static_cast<Eigen::Index>(i)]; };
  for_each_edge(f.grid, [&](std::size_t a, std::size_t b) {
    if (v(a) > v(b)) candidate[a] = 0;
    if (v(b) > v(a)) candidate[b] = 0;
  });

  DisjointSets plateaus(n);
  for_each_edge(f.grid, [&](std::size_t a, std::size_t b) {
    if (candidate[a] && candidate[b] && v(a) == v(b)) plateaus.unite(a, b);
  });

  LocalMinimaReport out;
  for (std::size_t i = 0; i < n; ++i) {
    if (candidate[i] && plateaus.find(i) == i) {
      out.indices.push_back(i);
      out.minima.emplace_back(f.grid.point(i), v(i));
    }
  }
  out.count = static_cast<int>(out.minima.size());
  return out;
}

}  // namespace envmin
