#include "envmin/grid.hpp"
#include "envmin/problem.hpp"

#include <fmt/format.h>

namespace envmin {

std::string to_string(const Interval& i) {
  auto end = [](double v) {
    if (v == kInf) return std::string("inf");
    if (v == -kInf) return std::string("-inf");
    return fmt::format("{}", v);
  };
  return fmt::format("{}{}, {}{}", i.closed_lo ? '[' : '(', end(i.lo), end(i.hi), i.closed_hi ? ']' : ')');
}

// ---- ParamCurve / Problem --------------------------------------------------

Interval ParamCurve::derivable_set() const {
  if (derivable) return *derivable;
  return Interval(domain.lo, domain.hi, false, false);
}

namespace {

double central(const CurveFn& f, double lambda, const Interval& dom, const Tolerances& tol) {
  const double h = tol.fd_step * scale(lambda);
  // one-sided at a finite closed end so the stencil stays inside I
  if (std::isfinite(dom.lo) && lambda - h < dom.lo) return (f(lambda + h) - f(lambda)) / h;
  if (std::isfinite(dom.hi) && lambda + h > dom.hi) return (f(lambda) - f(lambda - h)) / h;
  return (f(lambda + h) - f(lambda - h)) / (2.0 * h);
}

}  // namespace

double ParamCurve::d_alpha(double lambda, const Tolerances& tol) const {
  return alpha_prime ? alpha_prime(lambda) : central(alpha, lambda, domain, tol);
}

double ParamCurve::d_beta(double lambda, const Tolerances& tol) const {
  return beta_prime ? beta_prime(lambda) : central(beta, lambda, domain, tol);
}

FamilyValues Problem::values(PointRef x) const {
  return {phi(x), psi(x), omega ? omega(x) : 0.0};
}

double Problem::family(const ParamCurve& c, const FamilyValues& v, double lambda) {
  return c.alpha(lambda) * v.phi + c.beta(lambda) * v.psi + v.omega;
}

double Problem::family(PointRef x, double lambda) const { return family(curve, values(x), lambda); }

// ---- GridDomain -------------------------------------------------------------

GridDomain::GridDomain(Point lo_, Point hi_, Resolution res, int refine)
    : dim(static_cast<int>(lo_.size())), lo(std::move(lo_)), hi(std::move(hi_)), resolution(std::move(res)),
      refine_rounds(refine) {
  validate();
}

GridDomain GridDomain::line(double lo, double hi, long resolution, int refine) {
  Point l(1), h(1);
  l << lo;
  h << hi;
  Resolution r(1);
  r << resolution;
  return GridDomain(l, h, r, refine);
}

GridDomain GridDomain::box(std::span<const double> lo, std::span<const double> hi, long resolution, int refine) {
  const auto n = static_cast<Eigen::Index>(lo.size());
  if (n < 1 || n > kMaxDim || hi.size() != lo.size()) throw Error("grid box needs 1 to 3 matching bounds");
  Point l(n), h(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    l[i] = lo[static_cast<std::size_t>(i)];
    h[i] = hi[static_cast<std::size_t>(i)];
  }
  return GridDomain(l, h, Resolution::Constant(n, resolution), refine);
}

void GridDomain::validate() const {
  if (dim < 1 || dim > kMaxDim) throw Error(fmt::format("grid dimension {} not in 1..3", dim));
  if (lo.size() != dim || hi.size() != dim || resolution.size() != dim)
    throw Error("grid bounds and resolution must match the dimension");
  for (int a = 0; a < dim; ++a) {
    if (!(std::isfinite(lo[a]) && std::isfinite(hi[a]) && lo[a] < hi[a]))
      throw Error(fmt::format("grid axis x{} needs finite lo < hi", a + 1));
    if (resolution[a] < 2) throw Error(fmt::format("grid axis x{} needs resolution >= 2", a + 1));
  }
  if (refine_rounds < 0) throw Error("refine rounds must be non-negative");
  double total = 1.0;
  for (int a = 0; a < dim; ++a) total *= static_cast<double>(resolution[a]);
  if (total > static_cast<double>(kMaxPoints)) throw Error("grid exceeds 1e8 points");
}

std::size_t GridDomain::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(resolution[a]);
  return n;
}

Eigen::Array<long, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1> GridDomain::index(std::size_t flat) const {
  Eigen::Array<long, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1> idx(dim);
  for (int a = dim - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(resolution[a]);
    idx[a] = static_cast<long>(flat % n);
    flat /= n;
  }
  return idx;
}

Point GridDomain::point(std::size_t flat) const {
  const auto idx = index(flat);
  Point p(dim);
  for (int a = 0; a < dim; ++a) {
    // hit the upper bound exactly
    p[a] = idx[a] == resolution[a] - 1 ? hi[a] : lo[a] + static_cast<double>(idx[a]) * spacing(a);
  }
  return p;
}

bool GridDomain::on_boundary(std::size_t flat) const {
  const auto idx = index(flat);
  for (int a = 0; a < dim; ++a)
    if (idx[a] == 0 || idx[a] == resolution[a] - 1) return true;
  return false;
}

GridDomain GridDomain::sub_box(PointRef center, const Point& half_width) const {
  Point l = (center - half_width).cwiseMax(lo);
  Point h = (center + half_width).cwiseMin(hi);
  for (int a = 0; a < dim; ++a) {
    if (!(l[a] < h[a])) {
      // degenerate box at machine precision; keep a tiny non-empty one
      l[a] = center[a];
      h[a] = std::nextafter(center[a], kInf);
    }
  }
  GridDomain g;
  g.dim = dim;
  g.lo = l;
  g.hi = h;
  g.resolution = resolution;
  g.refine_rounds = 0;
  return g;
}

GridDomain GridDomain::expanded(double factor) const {
  const Point c = 0.5 * (lo + hi);
  const Point half = 0.5 * factor * (hi - lo);
  return GridDomain(c - half, c + half, resolution, refine_rounds);
}

// ---- scan and shrink --------------------------------------------------------

GridMinimum grid_minimize(const GridDomain& grid, const std::function<double(PointRef)>& f,
                          std::span<const Point> seeds) {
  GridMinimum best;
  best.x = grid.point(0);
  auto consider = [&](const Point& p) {
    const double v = f(p);
    if (std::isnan(v) || v == -kInf)
      throw Error(fmt::format("non-finite function value at x1={}", p[0]));
    if (v < best.value) {
      best.value = v;
      best.x = p;
      return true;
    }
    return false;
  };

  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i)
    if (consider(grid.point(i))) best.flat_index = i;
  for (const auto& s : seeds) consider(s);

  Point half(grid.dim);
  for (int a = 0; a < grid.dim; ++a) half[a] = grid.spacing(a);
  for (int round = 0; round < grid.refine_rounds; ++round) {
    const GridDomain box = grid.sub_box(best.x, half);
    const std::size_t m = box.size();
    for (std::size_t i = 0; i < m; ++i) consider(box.point(i));
    for (int a = 0; a < grid.dim; ++a) half[a] = box.spacing(a);
  }
  return best;
}

}  // namespace envmin
