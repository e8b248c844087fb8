#include "envmin/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <ostream>

namespace envmin {

namespace {

std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.4f}", v);
}

std::string exact(double v) {
  if (v == 0.0) v = 0.0;
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.10g}", v);
}

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_point(const Point& x) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) out += (i ? ", " : "") + exact(x[i]);
  return out + ")";
}

std::string format_hypotheses(const HypothesisReport& rep) {
  std::string out;
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& [lam, st] : rep.i1_grid_connected) {
    passed += st == CheckStatus::pass;
    failed += st == CheckStatus::fail;
    skipped += st == CheckStatus::skipped;
  }
  out += fmt::format("i1_grid_connected={} (pass={} fail={} skipped={})\n",
                     failed ? "fail" : (passed ? "pass" : "skipped"), passed, failed, skipped);
  for (const auto& [lam, st] : rep.i1_grid_connected)
    out += fmt::format("  lambda={} {}\n", exact(lam), to_string(st));
  out += fmt::format("i2_monotone={}\n", flag(rep.i2_monotone));
  out += fmt::format("sign_condition={}\n", to_string(rep.sign_condition));
  out += fmt::format("range_condition_i2prime={}\n", flag(rep.range_condition_i2prime));
  out += fmt::format("compact_interval={}\n", flag(rep.compact_interval));
  if (rep.profile) {
    const GProfile& gp = *rep.profile;
    out += fmt::format("g_direction={}\n", gp.increasing() ? "increasing" : "decreasing");
    out += fmt::format("gamma={}{}\n", exact(gp.gamma), gp.gamma_attained ? " (attained)" : "");
    out += fmt::format("delta={}{}\n", exact(gp.delta), gp.delta_attained ? " (attained)" : "");
  }
  out += fmt::format("closed_form_available={}\n", flag(rep.closed_form_available()));
  out += fmt::format("passed={}\n", flag(rep.passed()));
  out += fmt::format("notes={}\n", rep.notes);
  return out;
}

std::string format_duality(const DualityReport& rep) {
  std::string out;
  out += fmt::format("inf_sup={}\n", num(rep.inf_sup));
  out += fmt::format("sup_inf={}\n", num(rep.sup_inf));
  out += fmt::format("gap={}\n", num(rep.gap));
  out += fmt::format("equality={}\n", flag(rep.equality));
  out += fmt::format("x_witness={}\n", format_point(rep.x_witness));
  out += fmt::format("lambda_witness={}\n", exact(rep.lambda_witness));
  out += fmt::format("x_dual={}\n", format_point(rep.x_dual));
  out += fmt::format("envelope={}\n", rep.closed_form ? "closed-form" : "brute-force");
  out += fmt::format("hypotheses_passed={}\n", flag(rep.hypotheses.passed()));
  if (!rep.truncation_trace.empty()) {
    out += fmt::format("truncations={}\n", rep.truncation_trace.size());
    for (const Truncation& t : rep.truncation_trace)
      out += fmt::format("  window={} value={} arg={}\n", to_string(t.window), exact(t.value), exact(t.arg));
  }
  if (!rep.diagnostic.empty()) out += fmt::format("diagnostic={}\n", rep.diagnostic);
  return out;
}

std::string format_equilibrium(const EquilibriumResult& eq) {
  std::string out;
  out += fmt::format("x_tilde={}\n", format_point(eq.x_tilde));
  out += fmt::format("lambda_tilde={}\n", exact(eq.lambda_tilde));
  out += fmt::format("mu={}\n", exact(eq.mu));
  out += fmt::format("lhs={}\n", exact(eq.lhs));
  out += fmt::format("rhs={}\n", exact(eq.rhs));
  out += fmt::format("residual={:.3e}\n", eq.residual);
  out += fmt::format("rhs_minimizer={}\n", format_point(eq.rhs_minimizer));
  out += fmt::format("certified={}\n", flag(eq.certified));
  return out;
}

std::string format_alternative(const AlternativeResult& alt) {
  std::string out = fmt::format("outcome={}\n", to_string(alt.outcome));
  if (alt.equilibrium) out += format_equilibrium(*alt.equilibrium);
  if (!alt.lambdas.empty()) {
    int flagged = 0;
    for (char c : alt.double_well) flagged += c != 0;
    out += fmt::format("double_well_sections={}/{}\n", flagged, alt.lambdas.size());
    if (alt.run_length > 0)
      out += fmt::format("longest_run={} in [{}, {}]\n", alt.run_length, exact(alt.run_lo), exact(alt.run_hi));
  }
  out += fmt::format("note={}\n", alt.note);
  return out;
}

std::string format_lipschitz(const LipschitzReport& rep) {
  std::string out;
  int in_d = 0;
  for (char c : rep.in_d) in_d += c != 0;
  out += fmt::format("L={} phi_norm={}\n", exact(rep.L), exact(rep.phi_norm));
  out += fmt::format("lambda_samples={} in_D={} outside_D={}\n", rep.lambdas.size(), in_d, rep.outside_count);
  for (std::size_t j = 0; j < rep.lambdas.size(); ++j)
    if (!rep.in_d[j]) out += fmt::format("  outside_D lambda={}\n", exact(rep.lambdas[j]));
  if (rep.outside_count > 0)
    out += fmt::format("reduced_sup={} at lambda={}\n", num(rep.reduced_sup), exact(rep.reduced_lambda));
  else
    out += "reduced_sup=none (every sampled lambda is in D)\n";
  for (std::size_t k = 0; k < rep.spot_lambdas.size(); ++k)
    out += fmt::format("  spot lambda={} unbounded_below={}\n", exact(rep.spot_lambdas[k]),
                       flag(rep.spot_unbounded[k]));
  out += fmt::format("lipschitz_estimate={} heuristic={}\n", exact(rep.lipschitz_estimate),
                     rep.lipschitz_heuristic ? "consistent" : "exceeds L");
  return out;
}

std::string format_envelope_summary(const EnvelopeTable& table) {
  std::string out = fmt::format("points={}\n", table.rows.size());
  std::size_t best_b = 0, best_c = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const EnvelopeRow& r = table.rows[i];
    if (r.brute < table.rows[best_b].brute) best_b = i;
    if (table.closed_form) {
      if (r.closed < table.rows[best_c].closed) best_c = i;
      if (std::isfinite(r.closed) && std::isfinite(r.brute))
        worst = std::max(worst, std::abs(r.closed - r.brute) / scale(r.brute));
    }
  }
  if (table.rows.empty()) return out;
  out += fmt::format("min_brute={} at {}\n", num(table.rows[best_b].brute), format_point(table.rows[best_b].x));
  if (table.closed_form) {
    out += fmt::format("min_closed={} at {}\n", num(table.rows[best_c].closed), format_point(table.rows[best_c].x));
    out += fmt::format("max_relative_difference={:.3e}\n", worst);
  } else {
    out += "closed_form=unavailable\n";
  }
  return out;
}

void write_lambda_csv(std::ostream& os, const std::vector<std::pair<double, double>>& curve) {
  os << "lambda,inner_inf\n";
  for (const auto& [l, v] : curve) fmt::print(os, "{},{}\n", exact(l), exact(v));
}

void write_envelope_csv(std::ostream& os, const EnvelopeTable& table) {
  const Eigen::Index dim = table.rows.empty() ? 1 : table.rows.front().x.size();
  for (Eigen::Index i = 0; i < dim; ++i) fmt::print(os, "x{},", i + 1);
  os << "phi_closed,phi_brute\n";
  for (const EnvelopeRow& r : table.rows) {
    for (Eigen::Index i = 0; i < dim; ++i) fmt::print(os, "{},", exact(r.x[i]));
    fmt::print(os, "{},{}\n", exact(r.closed), exact(r.brute));
  }
}

void write_sublevel_csv(std::ostream& os, const SampledField& f, const SublevelAnalysis& s) {
  const int dim = f.grid.dim;
  for (int i = 0; i < dim; ++i) fmt::print(os, "x{},", i + 1);
  os << "value,label\n";
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    const Point p = f.grid.point(k);
    for (int i = 0; i < dim; ++i) fmt::print(os, "{},", exact(p[i]));
    fmt::print(os, "{},{}\n", exact(f.values[static_cast<Eigen::Index>(k)]), s.labels[k]);
  }
}

}  // namespace envmin
