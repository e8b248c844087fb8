#include "envmin/optimize.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

namespace envmin {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

double sanitize(double v) { return std::isnan(v) ? -kInf : v; }

}  // namespace

Max1D golden_section_max(const RealFn& f, double lo, double hi, double rel_tol, int max_iter) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = sanitize(f(c)), fd = sanitize(f(d));
  Max1D best{fc, c};
  if (fd > best.value) best = {fd, d};
  for (int it = 0; it < max_iter && (b - a) > rel_tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = sanitize(f(c));
      if (fc > best.value) best = {fc, c};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = sanitize(f(d));
      if (fd > best.value) best = {fd, d};
    }
  }
  return best;
}

Max1D maximize_on_grid(const RealFn& f, double lo, double hi, int n, bool refine) {
  if (n < 2) throw Error("lambda grid needs at least two points");
  const double step = (hi - lo) / static_cast<double>(n - 1);
  auto at = [&](int i) { return i == n - 1 ? hi : lo + static_cast<double>(i) * step; };

  Max1D best{sanitize(f(lo)), lo};
  int best_i = 0;
  for (int i = 1; i < n; ++i) {
    const double v = sanitize(f(at(i)));
    if (v > best.value) {
      best = {v, at(i)};
      best_i = i;
    }
  }
  if (refine && std::isfinite(best.value)) {
    const double a = at(std::max(best_i - 1, 0));
    const double b = at(std::min(best_i + 1, n - 1));
    const Max1D polished = golden_section_max(f, a, b);
    if (polished.value > best.value) best = polished;
  }
  return best;
}

Interval truncation_window(const Interval& I, double width, int n) {
  const double w = width * std::ldexp(1.0, n);
  const bool lo_fin = std::isfinite(I.lo), hi_fin = std::isfinite(I.hi);
  if (lo_fin && hi_fin) return I;
  if (lo_fin) return Interval(I.lo, I.lo + w, I.closed_lo, true);
  if (hi_fin) return Interval(I.hi - w, I.hi, true, I.closed_hi);
  return Interval(-0.5 * w, 0.5 * w);
}

ExhaustionResult maximize_exhausting(const RealFn& f, const Interval& I, const ExhaustionOptions& opts) {
  ExhaustionResult out;
  if (I.bounded()) {
    const Max1D m = maximize_on_grid(f, I.lo, I.hi, opts.grid_size, opts.refine);
    out.value = m.value;
    out.arg = m.arg;
    out.trace.push_back({I, m.value, m.arg});
    out.converged = true;
    out.divergent = m.value == kInf;
    return out;
  }
  if (!(opts.window > 0.0)) throw Error("exhaustion window must be positive");

  int boundary_growth = 0;  // consecutive truncations that grew with the witness on a moving end
  std::vector<double> gains;
  for (int n = 0; n < opts.max_truncations; ++n) {
    const Interval win = truncation_window(I, opts.window, n);
    const Max1D m = maximize_on_grid(f, win.lo, win.hi, opts.grid_size, opts.refine);
    const double prev = out.value;
    if (m.value > out.value || n == 0) {
      out.value = m.value;
      out.arg = m.arg;
    }
    out.trace.push_back({win, out.value, out.arg});

    if (out.value == kInf) {
      out.divergent = true;
      out.diagnostic = fmt::format("value is +inf on window {}", to_string(win));
      return out;
    }
    if (n == 0) continue;

    const double gain = out.value - prev;
    if (std::isfinite(out.value) && gain <= opts.tol * scale(out.value)) {
      out.converged = true;
      return out;
    }
    gains.push_back(gain);
    const double cell = win.width() / static_cast<double>(opts.grid_size - 1);
    const bool on_moving_end = (!std::isfinite(I.hi) && win.hi - out.arg <= cell) ||
                               (!std::isfinite(I.lo) && out.arg - win.lo <= cell);
    boundary_growth = on_moving_end ? boundary_growth + 1 : 0;
  }
  const std::size_t k = gains.size();
  const bool shrinking = k >= 2 && std::isfinite(gains[k - 2]) && gains[k - 1] <= 0.75 * gains[k - 2];
  if (boundary_growth >= 3 && !shrinking) {
    out.divergent = true;
    out.value = kInf;
    out.diagnostic = fmt::format("supremum still growing at the moving end after {} truncations",
                                 opts.max_truncations);
  } else if (shrinking) {
    const double ratio = gains[k - 1] / gains[k - 2];
    out.diagnostic = fmt::format(
        "no convergence after {} truncations; gains shrink by {:.3g} per window, extrapolated supremum {}",
        opts.max_truncations, ratio, out.value + gains[k - 1] * ratio / (1.0 - ratio));
  } else {
    out.diagnostic = fmt::format("no convergence after {} truncations", opts.max_truncations);
  }
  return out;
}

}  // namespace envmin
