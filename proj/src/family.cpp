#include "envmin/family.hpp"
#include "envmin/topology.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace envmin {

double g_value(const ParamCurve& curve, double lambda, const Tolerances& tol) {
  const double da = curve.d_alpha(lambda, tol);
  const double db = curve.d_beta(lambda, tol);
  if (!std::isfinite(da) || !std::isfinite(db))
    throw Error(fmt::format("non-finite derivative at lambda={}", lambda));
  if (std::abs(da) <= tol.alpha_zero)
    throw HypothesisError(fmt::format("alpha' vanishes at lambda={} (|alpha'|={:.3g})", lambda, std::abs(da)));
  return db / da;
}

bool GProfile::in_range(double mu) const {
  if (mu > gamma && mu < delta) return true;
  if (gamma_attained && std::abs(mu - gamma) <= 1e-12 * scale(gamma)) return true;
  if (delta_attained && std::abs(mu - delta) <= 1e-12 * scale(delta)) return true;
  return false;
}

namespace {

struct Sample {
  double lambda;
  double g;
};

// Limit of a sequence sampled at geometrically shrinking distances from an
// end (or growing distances towards an infinite end). Increments that shrink
// at least geometrically are extrapolated; anything else diverges.
double sequence_limit(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  const std::size_t k = v.size();
  if (k < 3) return v.back();
  const double d1 = v[k - 1] - v[k - 2];
  const double d0 = v[k - 2] - v[k - 3];
  if (d1 == 0.0 || d0 == 0.0) return v.back();
  const double ratio = d1 / d0;
  if (ratio < 0.0) return v.back();
  if (ratio <= 0.75) return v.back() + d1 * ratio / (1.0 - ratio);
  return d1 > 0.0 ? kInf : -kInf;
}

struct EndInfo {
  double limit = std::nan("");
  bool attained = false;
};

// Walks towards one end of A. `dir` is -1 for the lower end, +1 for the upper.
EndInfo probe_end(const ParamCurve& curve, const Interval& A, int dir, double span_lo, double span_hi,
                  double window, const Tolerances& tol, std::vector<Sample>& out) {
  const double end = dir < 0 ? A.lo : A.hi;
  const bool closed = dir < 0 ? A.closed_lo : A.closed_hi;
  std::vector<double> seq;
  auto try_g = [&](double lam) -> bool {
    try {
      const double g = g_value(curve, lam, tol);
      if (!std::isfinite(g)) return false;
      if (!seq.empty() && g == seq.back()) return false;  // saturated at double precision
      seq.push_back(g);
      out.push_back({lam, g});
      return true;
    } catch (const Error&) {
      return false;
    }
  };

  if (std::isfinite(end)) {
    const double width = span_hi - span_lo;
    const double floor = curve.has_derivatives() ? 1e-13 * scale(end) : 1e3 * tol.fd_step * scale(end);
    double last = std::nan("");
    for (int k = 2; k <= 60; ++k) {
      const double d = width * std::ldexp(1.0, -k);
      if (d < floor) break;
      const double lam = end - dir * d;
      if (lam == last || lam == end) break;
      last = lam;
      if (!try_g(lam)) break;
    }
    EndInfo info{sequence_limit(seq), false};
    if (closed) {
      // the end belongs to A, so g is defined there and alpha' must not vanish
      const double g = g_value(curve, end, tol);
      out.push_back({end, g});
      info = {g, true};
    }
    return info;
  }

  const double anchor = dir < 0 ? span_lo : span_hi;
  for (int k = 1; k <= 60; ++k) {
    const double lam = anchor + dir * window * std::ldexp(1.0, k);
    if (!std::isfinite(lam) || !try_g(lam)) break;
  }
  return {sequence_limit(seq), false};
}

}  // namespace

GProfile build_g_profile(const ParamCurve& curve, int samples, const Tolerances& tol, double window) {
  if (samples < 16) throw Error("g profile needs at least 16 samples");
  const Interval A = curve.derivable_set();
  if (!curve.domain.contains(A)) throw Error("derivable set A must lie inside the interval I");
  if (!(window > 0.0)) throw Error("profile window must be positive");

  const double span_lo = std::isfinite(A.lo) ? A.lo : (std::isfinite(A.hi) ? A.hi - window : -0.5 * window);
  const double span_hi = std::isfinite(A.hi) ? A.hi : (std::isfinite(A.lo) ? A.lo + window : 0.5 * window);

  GProfile gp;
  gp.curve = curve;
  gp.set = A;
  gp.tol = tol;
  gp.sample_count = samples;

  std::vector<Sample> all;
  all.reserve(static_cast<std::size_t>(samples) + 200);
  const double step = (span_hi - span_lo) / static_cast<double>(samples + 1);
  for (int i = 0; i < samples; ++i) {
    const double lam = span_lo + static_cast<double>(i + 1) * step;
    const double g = g_value(curve, lam, tol);  // alpha' vanishing propagates
    gp.lambdas.push_back(lam);
    all.push_back({lam, g});
  }
  auto [min_it, max_it] = std::minmax_element(all.begin(), all.end(),
                                              [](const Sample& a, const Sample& b) { return a.g < b.g; });
  gp.sampled_min = min_it->g;
  gp.sampled_max = max_it->g;

  const EndInfo lo_end = probe_end(curve, A, -1, span_lo, span_hi, window, tol, all);
  const EndInfo hi_end = probe_end(curve, A, +1, span_lo, span_hi, window, tol, all);

  std::sort(all.begin(), all.end(), [](const Sample& a, const Sample& b) { return a.lambda < b.lambda; });
  all.erase(std::unique(all.begin(), all.end(), [](const Sample& a, const Sample& b) { return a.lambda == b.lambda; }),
            all.end());
  int up = 0, down = 0, flat = 0;
  for (std::size_t i = 1; i < all.size(); ++i) {
    const double d = all[i].g - all[i - 1].g;
    (d > 0 ? up : d < 0 ? down : flat) += 1;
  }
  if (flat > 0 || (up > 0 && down > 0))
    throw HypothesisError(fmt::format("g = beta'/alpha' is not strictly monotone on the samples "
                                      "({} up, {} down, {} flat steps)",
                                      up, down, flat));

  gp.direction = up > 0 ? Monotonicity::increasing : Monotonicity::decreasing;
  const EndInfo& low_side = gp.increasing() ? lo_end : hi_end;
  const EndInfo& high_side = gp.increasing() ? hi_end : lo_end;
  gp.gamma = std::isnan(low_side.limit) ? gp.sampled_min : std::min(low_side.limit, gp.sampled_min);
  gp.delta = std::isnan(high_side.limit) ? gp.sampled_max : std::max(high_side.limit, gp.sampled_max);
  gp.gamma_attained = low_side.attained;
  gp.delta_attained = high_side.attained;
  return gp;
}

double g_inverse(const GProfile& gp, double mu) {
  if (!(mu > gp.gamma && mu < gp.delta))
    throw Error(fmt::format("mu={} outside the open range ({}, {}) of g", mu, gp.gamma, gp.delta));

  const bool inc = gp.increasing();
  const double end_a = std::isfinite(gp.set.lo) ? gp.set.lo : (std::isfinite(gp.set.hi) ? gp.set.hi - 1.0 : 0.0);
  const double end_b = std::isfinite(gp.set.hi) ? gp.set.hi : end_a + 1.0;
  const double centre = 0.5 * (end_a + end_b);
  // True when the root lies to the right of lambda. Where g cannot be
  // evaluated (alpha' numerically zero next to an end of A) the root is taken
  // to lie on the centre side, so the result stays at the last evaluable point.
  auto root_is_right = [&](double lam) {
    try {
      const double g = gp.g(lam);
      return inc ? g < mu : g > mu;
    } catch (const HypothesisError&) {
      return lam < centre;
    }
  };

  double lo = gp.set.lo, hi = gp.set.hi;
  const double window = 1.0;
  if (!std::isfinite(lo)) {
    const double anchor = std::isfinite(hi) ? hi : 0.0;
    for (int k = 0;; ++k) {
      const double lam = anchor - window * std::ldexp(1.0, k);
      if (!std::isfinite(lam)) throw Error("g_inverse: no bracket towards -inf");
      if (root_is_right(lam)) {
        lo = lam;
        break;
      }
    }
  }
  if (!std::isfinite(hi)) {
    const double anchor = std::isfinite(gp.set.lo) ? gp.set.lo : 0.0;
    for (int k = 0;; ++k) {
      const double lam = anchor + window * std::ldexp(1.0, k);
      if (!std::isfinite(lam)) throw Error("g_inverse: no bracket towards +inf");
      if (!root_is_right(lam)) {
        hi = lam;
        break;
      }
    }
  }

  for (int it = 0; it < 4000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (root_is_right(mid) ? lo : hi) = mid;
  }
  return lo + 0.5 * (hi - lo);
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "?";
}

std::string to_string(SignCase s) {
  switch (s) {
    case SignCase::i3:
      return "i3";
    case SignCase::i4:
      return "i4";
    case SignCase::neither:
      return "neither";
  }
  return "?";
}

bool HypothesisReport::i1_passed() const {
  return std::none_of(i1_grid_connected.begin(), i1_grid_connected.end(),
                      [](const auto& p) { return p.second == CheckStatus::fail; });
}

bool HypothesisReport::closed_form_available() const {
  return i2_monotone && sign_condition != SignCase::neither && (compact_interval || range_condition_i2prime);
}

bool HypothesisReport::passed() const { return closed_form_available() && i1_passed(); }

namespace {

std::vector<double> i1_lambdas(const Problem& prob, const GProfile* gp, int count) {
  const Interval& I = prob.curve.domain;
  double lo = I.lo, hi = I.hi;
  if (!I.bounded()) {
    if (gp && !gp->lambdas.empty()) {
      lo = std::max(lo, gp->lambdas.front());
      hi = std::min(hi, gp->lambdas.back());
    } else {
      lo = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi - 8.0 : -4.0);
      hi = std::isfinite(hi) ? hi : lo + 8.0;
    }
  }
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(lo + (j + 0.5) * (hi - lo) / count);
  return out;
}

void fill_i1(HypothesisReport& rep, const Problem& prob, const GProfile* gp, const GridDomain& grid,
             const CheckOptions& opts) {
  for (double lam : i1_lambdas(prob, gp, opts.i1_lambdas)) {
    if (grid.dim > 2) {
      rep.i1_grid_connected.emplace_back(lam, CheckStatus::skipped);
      continue;
    }
    const SampledField f = sample(grid, [&](PointRef x) { return prob.family(x, lam); });
    const bool ok = inf_connected_check(f, opts.i1_thresholds);
    rep.i1_grid_connected.emplace_back(lam, ok ? CheckStatus::pass : CheckStatus::fail);
  }
}

}  // namespace

HypothesisReport check_hypotheses(const Problem& prob, const GridDomain& grid, const CheckOptions& opts,
                                  const Tolerances& tol) {
  try {
    const GProfile gp = build_g_profile(prob.curve, opts.profile.samples, tol, opts.profile.window);
    return check_hypotheses(prob, gp, grid, opts);
  } catch (const HypothesisError& e) {
    HypothesisReport rep;
    rep.compact_interval = prob.curve.domain.compact();
    rep.i2_monotone = false;
    rep.notes = fmt::format("(i2) fails: {}", e.what());
    fill_i1(rep, prob, nullptr, grid, opts);
    return rep;
  }
}

HypothesisReport check_hypotheses(const Problem& prob, const GProfile& gp, const GridDomain& grid,
                                  const CheckOptions& opts) {
  HypothesisReport rep;
  rep.compact_interval = prob.curve.domain.compact();
  rep.i2_monotone = true;
  rep.profile = gp;
  const Tolerances& tol = gp.tol;

  bool alpha_pos = true, alpha_neg = true;
  for (double lam : gp.lambdas) {
    const double da = prob.curve.d_alpha(lam, tol);
    alpha_pos = alpha_pos && da > 0.0;
    alpha_neg = alpha_neg && da < 0.0;
  }
  bool psi_pos = true, psi_neg = true, range_ok = true;
  std::size_t psi_zero_points = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FamilyValues v = prob.values(grid.point(i));
    if (std::abs(v.psi) <= tol.psi_zero) {
      ++psi_zero_points;
      continue;
    }
    psi_pos = psi_pos && v.psi > 0.0;
    psi_neg = psi_neg && v.psi < 0.0;
    range_ok = range_ok && gp.in_range(-v.phi / v.psi);
  }
  const bool product_negative = (alpha_pos && psi_neg) || (alpha_neg && psi_pos);
  const bool product_positive = (alpha_pos && psi_pos) || (alpha_neg && psi_neg);
  if (gp.increasing() && product_negative)
    rep.sign_condition = SignCase::i3;
  else if (!gp.increasing() && product_positive)
    rep.sign_condition = SignCase::i4;
  rep.range_condition_i2prime = range_ok;

  fill_i1(rep, prob, &gp, grid, opts);

  rep.notes = fmt::format(
      "g {} on {} sampled points, gamma={}, delta={}; {} grid point(s) with psi=0; "
      "monotonicity and inf-connectedness are sampled checks; (i0) is assumed on the compact grid",
      gp.increasing() ? "increasing" : "decreasing", gp.sample_count, gp.gamma + 0.0, gp.delta + 0.0, psi_zero_points);
  return rep;
}

}  // namespace envmin
