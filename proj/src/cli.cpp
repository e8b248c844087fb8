#include "envmin/cli.hpp"

#include "envmin/config.hpp"
#include "envmin/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <optional>

namespace envmin {

namespace {

struct Flags {
  std::string config;
  std::string catalog_name;
  std::optional<int> lambda_grid;
  std::optional<int> refine;
  std::optional<double> tol;
  std::optional<double> equilibrium_tol;
  std::optional<double> psi_zero;
  std::optional<int> samples;
  std::optional<std::string> csv;
};

/// Failures tagged with the module they came from.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& what) : Error(fmt::format("{}: {}", stage, what)) {}
};

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

ProblemConfig load(const Flags& flags) {
  ProblemConfig cfg = stage("config", [&] { return load_problem(flags.config); });
  if (flags.lambda_grid) {
    if (*flags.lambda_grid < 64) throw StageError("cli", "--lambda-grid must be at least 64");
    cfg.solver.lambda_grid = *flags.lambda_grid;
  }
  if (flags.refine) {
    if (*flags.refine < 0) throw StageError("cli", "--refine must be >= 0");
    cfg.grid.refine_rounds = *flags.refine;
  }
  if (flags.tol) cfg.solver.tol.equality = *flags.tol;
  if (flags.equilibrium_tol) cfg.solver.tol.equilibrium = *flags.equilibrium_tol;
  if (flags.psi_zero) cfg.solver.tol.psi_zero = *flags.psi_zero;
  if (flags.samples) cfg.alternative_samples = *flags.samples;
  if (flags.csv) cfg.csv = flags.csv;
  return cfg;
}

void write_csv(const std::optional<std::string>& path, const std::function<void(std::ostream&)>& body) {
  if (!path) return;
  std::ofstream os(*path);
  if (!os) throw StageError("report", fmt::format("cannot write {}", *path));
  body(os);
}

HSelector require_selector(const ProblemConfig& cfg, const HypothesisReport& rep) {
  const std::optional<HSelector> h = selector_for(cfg.problem, rep);
  if (!h)
    throw StageError("family", "the closed-form selector needs (i2) with (i3) or (i4) and a compact I or the range "
                               "condition; run `check` for details");
  return *h;
}

int cmd_check(const Flags& flags, std::ostream& out) {
  const ProblemConfig cfg = load(flags);
  const HypothesisReport rep =
      stage("family", [&] { return check_hypotheses(cfg.problem, cfg.grid, cfg.solver.check, cfg.solver.tol); });
  out << "problem=" << cfg.problem.name << '\n' << format_hypotheses(rep);
  return rep.passed() ? 0 : 2;
}

int cmd_envelope(const Flags& flags, std::ostream& out) {
  const ProblemConfig cfg = load(flags);
  const HypothesisReport rep =
      stage("family", [&] { return check_hypotheses(cfg.problem, cfg.grid, cfg.solver.check, cfg.solver.tol); });
  const std::optional<HSelector> h = stage("envelope", [&] { return selector_for(cfg.problem, rep); });
  const EnvelopeOptions env = cfg.solver.envelope(h.has_value());
  EnvelopeTable table;
  table.closed_form = h.has_value();
  stage("envelope", [&] {
    for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
      EnvelopeRow row;
      row.x = cfg.grid.point(i);
      row.brute = envelope_brute(cfg.problem, row.x, env).phi_of_x;
      if (h) {
        try {
          row.closed = envelope_closed_form(cfg.problem, *h, row.x, env).phi_of_x;
        } catch (const HypothesisError&) {
        }
      }
      table.rows.push_back(row);
    }
    return 0;
  });
  out << "problem=" << cfg.problem.name << '\n' << format_envelope_summary(table);
  write_csv(cfg.csv, [&](std::ostream& os) { write_envelope_csv(os, table); });
  return 0;
}

std::vector<std::pair<double, double>> lambda_curve(const ProblemConfig& cfg, const DualityReport& rep) {
  const Interval& I = cfg.problem.curve.domain;
  const Interval span = I.bounded() ? I
                        : rep.truncation_trace.empty() ? truncation_window(I, cfg.solver.window, 1)
                                                       : rep.truncation_trace.back().window;
  std::vector<std::pair<double, double>> curve;
  const int n = cfg.solver.lambda_grid;
  for (int j = 0; j < n; ++j) {
    const double lam = j == n - 1 ? span.hi : span.lo + span.width() * j / (n - 1);
    if (!I.contains(lam)) continue;
    double v;
    try {
      v = inner_inf(cfg.problem, lam, cfg.grid).value;
    } catch (const Error&) {
      v = -kInf;
    }
    curve.emplace_back(lam, v);
  }
  return curve;
}

int cmd_duality(const Flags& flags, std::ostream& out) {
  const ProblemConfig cfg = load(flags);
  const DualityReport rep = stage("duality", [&] { return duality_report(cfg.problem, cfg.grid, cfg.solver); });
  out << "problem=" << cfg.problem.name << '\n' << format_duality(rep);
  if (cfg.catalog) {
    if (const auto dual = stage("catalog", [&] {
          try {
            return cfg.catalog->analytic_dual(cfg.problem, cfg.grid);
          } catch (const HypothesisError& e) {
            out << "analytic_dual=not asserted (" << e.what() << ")\n";
            return std::optional<double>{};
          }
        }))
      out << fmt::format("analytic_dual={:.4f}\n", *dual);
  }
  write_csv(cfg.csv, [&](std::ostream& os) { write_lambda_csv(os, lambda_curve(cfg, rep)); });
  return 0;
}

int cmd_equilibrium(const Flags& flags, std::ostream& out) {
  const ProblemConfig cfg = load(flags);
  const HypothesisReport rep =
      stage("family", [&] { return check_hypotheses(cfg.problem, cfg.grid, cfg.solver.check, cfg.solver.tol); });
  const HSelector h = require_selector(cfg, rep);
  const EquilibriumResult eq = stage("duality", [&] { return find_equilibrium(cfg.problem, cfg.grid, h, cfg.solver); });
  out << "problem=" << cfg.problem.name << '\n' << format_equilibrium(eq);
  return 0;
}

int cmd_alternative(const Flags& flags, std::ostream& out) {
  const ProblemConfig cfg = load(flags);
  const HypothesisReport rep =
      stage("family", [&] { return check_hypotheses(cfg.problem, cfg.grid, cfg.solver.check, cfg.solver.tol); });
  const HSelector h = require_selector(cfg, rep);
  const AlternativeResult alt = stage(
      "topology", [&] { return alternative_check(cfg.problem, cfg.grid, h, cfg.alternative_samples, cfg.solver); });
  out << "problem=" << cfg.problem.name << '\n' << format_alternative(alt);
  if (cfg.csv && alt.run_length > 0) {
    const double lam = alt.run_lo;
    const SampledField f = stage("topology", [&] {
      return sample(cfg.grid, [&](PointRef x) { return cfg.problem.family(x, lam); });
    });
    const LocalMinimaReport lm = local_minima(f);
    std::vector<double> levels;
    for (const auto& m : lm.minima) levels.push_back(m.second);
    std::sort(levels.begin(), levels.end());
    const double r = levels.size() >= 2 ? levels[1] : f.values.maxCoeff();
    const SublevelAnalysis s = sublevel_components(f, r, false);
    write_csv(cfg.csv, [&](std::ostream& os) { write_sublevel_csv(os, f, s); });
  }
  return 0;
}

int cmd_lipschitz(const Flags& flags, std::ostream& out) {
  const ProblemConfig cfg = load(flags);
  if (!cfg.lipschitz) throw StageError("config", "missing section [lipschitz] (keys L, phi_norm)");
  const int samples = flags.samples.value_or(cfg.solver.lambda_grid);
  const LipschitzReport rep = stage("catalog", [&] {
    return lipschitz_criterion(cfg.problem, cfg.grid, cfg.lipschitz->L, cfg.lipschitz->phi_norm, samples);
  });
  out << "problem=" << cfg.problem.name << '\n' << format_lipschitz(rep);
  return 0;
}

int cmd_catalog(const Flags& flags, std::ostream& out) {
  if (!flags.catalog_name.empty()) {
    out << stage("catalog", [&] { return catalog_config(flags.catalog_name); });
    return 0;
  }
  for (const std::string& name : catalog_names()) out << name << "  " << catalog_summary(name) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infimum of upper envelopes, minimax duality and equilibrium points", "envmin"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;

  app.add_option("--lambda-grid", flags.lambda_grid, "points of the uniform lambda grid (>= 64)");
  app.add_option("--refine", flags.refine, "refinement rounds of the grid minimizer");
  app.add_option("--tol", flags.tol, "relative gap below which minimax equality is declared");
  app.add_option("--equilibrium-tol", flags.equilibrium_tol, "relative residual certifying an equilibrium");
  app.add_option("--psi-zero", flags.psi_zero, "|psi| at or below this takes the psi = 0 branch");
  app.add_option("--samples", flags.samples, "lambda samples for alternative and lipschitz");
  app.add_option("--csv", flags.csv, "write a CSV for plotting");

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Flags&, std::ostream&);
  };
  const Command commands[] = {
      {"check", "numerical hypothesis checks", cmd_check},
      {"envelope", "Phi over the grid, closed form against brute force", cmd_envelope},
      {"duality", "inf-sup, sup-inf and the duality gap", cmd_duality},
      {"equilibrium", "equilibrium point search", cmd_equilibrium},
      {"alternative", "equilibrium point or a run of double-well sections", cmd_alternative},
      {"lipschitz", "the set D of the Lipschitz criterion and the reduced supremum", cmd_lipschitz},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Flags&, std::ostream&)>> dispatch;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("config", flags.config, "problem file")->required();
    dispatch.emplace_back(sub, c.fn);
  }
  CLI::App* list = app.add_subcommand("catalog-list", "list built-in families, or print one as a config file");
  list->add_option("name", flags.catalog_name, "catalog entry to export");
  dispatch.emplace_back(list, cmd_catalog);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    for (const auto& [sub, fn] : dispatch)
      if (sub->parsed()) return fn(flags, out);
  } catch (const StageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace envmin
