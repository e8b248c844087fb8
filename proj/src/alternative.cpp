#include "envmin/topology.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace envmin {

std::string to_string(Alternative a) {
  switch (a) {
    case Alternative::assertion_a:
      return "assertion_a";
    case Alternative::assertion_b:
      return "assertion_b";
    case Alternative::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

bool has_split_wells(const SampledField& f, int thresholds) {
  const LocalMinimaReport lm = local_minima(f);
  if (lm.count < 2) return false;
  const double lowest = f.values.minCoeff();
  std::vector<double> levels = quantile_thresholds(f, thresholds);
  for (const auto& m : lm.minima) levels.push_back(m.second);
  for (double r : levels) {
    if (!(r > lowest)) continue;
    const SublevelAnalysis s = sublevel_components(f, r, false);
    if (s.compact && s.component_count >= 2) return true;
  }
  return false;
}

std::vector<double> sweep_lambdas(const Interval& I, int n) {
  double lo = I.lo, hi = I.hi;
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = -4.0;
    hi = 4.0;
  } else if (!std::isfinite(lo)) {
    lo = hi - 8.0;
  } else if (!std::isfinite(hi)) {
    hi = lo + 8.0;
  }
  std::vector<double> out;
  for (int j = 0; j < n; ++j) out.push_back(lo + (j + 0.5) * (hi - lo) / n);
  return out;
}

}  // namespace

AlternativeResult alternative_check(const Problem& prob, const GridDomain& grid, const HSelector& h,
                                    int lambda_samples, const DualityOptions& opts) {
  if (lambda_samples < 2) throw Error("alternative check needs at least two lambda samples");
  AlternativeResult out;
  out.equilibrium = find_equilibrium(prob, grid, h, opts);
  if (out.equilibrium->certified) {
    out.outcome = Alternative::assertion_a;
    out.note = fmt::format("equilibrium certified with residual {:.3g}", out.equilibrium->residual);
    return out;
  }
  if (grid.dim > 2) {
    out.note = "equilibrium not certified; section analysis needs dimension 1 or 2";
    return out;
  }

  out.lambdas = sweep_lambdas(prob.curve.domain, lambda_samples);
  int run = 0;
  for (std::size_t j = 0; j < out.lambdas.size(); ++j) {
    const double lam = out.lambdas[j];
    const SampledField f = sample(grid, [&](PointRef x) { return prob.family(x, lam); });
    const bool flagged = has_split_wells(f, opts.check.i1_thresholds);
    out.double_well.push_back(flagged);
    run = flagged ? run + 1 : 0;
    if (run > out.run_length) {
      out.run_length = run;
      out.run_hi = lam;
      out.run_lo = out.lambdas[j + 1 - static_cast<std::size_t>(run)];
    }
  }
  if (out.run_length >= 2) {
    out.outcome = Alternative::assertion_b;
    out.note = fmt::format(
        "equilibrium residual {:.3g} not certified; {} consecutive sampled sections in [{}, {}] have two "
        "local minima with a compact disconnected sublevel set",
        out.equilibrium->residual, out.run_length, out.run_lo, out.run_hi);
  } else {
    out.note = fmt::format("equilibrium residual {:.3g} not certified and no run of double-well sections found",
                           out.equilibrium->residual);
  }
  return out;
}

}  // namespace envmin
