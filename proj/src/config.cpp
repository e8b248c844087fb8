#include "envmin/config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <fstream>
#include <set>
#include <span>

namespace envmin {

namespace pt = boost::property_tree;

namespace {

/// Commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(boost::algorithm::trim_copy(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(boost::algorithm::trim_copy(cur));
  return parts;
}

double constant(const std::string& text, const std::string& key) {
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return -kInf;
  try {
    return parse(text, {}).evaluate(std::span<const double>{});
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: '{}' is not a constant: {}", key, text, e.what()));
  }
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool present() const { return tree_ != nullptr; }
  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

  std::string text(const std::string& key) {
    if (!has(key)) throw ConfigError(fmt::format("missing key '{}' in section [{}]", key, name_));
    used_.insert(key);
    return boost::algorithm::trim_copy(tree_->get<std::string>(key));
  }
  std::optional<std::string> maybe_text(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return text(key);
  }
  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      text(key);
    }
    return constant(text(key), fmt::format("[{}] {}", name_, key));
  }
  long integer(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e15)
      throw ConfigError(fmt::format("[{}] {} must be an integer", name_, key));
    return static_cast<long>(v);
  }
  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& kv : *tree_)
      if (!used_.count(kv.first)) throw ConfigError(fmt::format("unknown key '{}' in section [{}]", kv.first, name_));
  }
  const std::string& name() const { return name_; }

 private:
  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

Section section(const pt::ptree& root, const std::string& name) {
  const auto it = root.find(name);
  return {it == root.not_found() ? nullptr : &it->second, name};
}

Section required(const pt::ptree& root, const std::string& name) {
  Section s = section(root, name);
  if (!s.present()) throw ConfigError(fmt::format("missing section [{}]", name));
  return s;
}

ScalarField field(const std::string& key, const std::string& source, const std::vector<std::string>& axes) {
  Expression e;
  try {
    e = parse(source, axes);
  } catch (const ParseError& err) {
    throw ConfigError(fmt::format("[functions] {}: {} (column {})", key, err.what(), err.position() + 1));
  }
  const std::size_t n = axes.size();
  return [e, n](PointRef x) { return e.evaluate(std::span<const double>(x.data(), n)); };
}

CurveFn curve_fn(const std::string& key, const std::string& source) {
  Expression e;
  try {
    e = parse(source, {"lambda"});
  } catch (const ParseError& err) {
    throw ConfigError(fmt::format("[family] {}: {} (column {})", key, err.what(), err.position() + 1));
  }
  return [e](double l) { return e.evaluate(std::span<const double>(&l, 1)); };
}

Interval interval_key(Section& s, const std::string& key) {
  try {
    return parse_interval(s.text(key));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("[{}] {}: {}", s.name(), key, e.what()));
  }
}

void load_domain(Section s, ProblemConfig& cfg) {
  std::vector<std::string> axes;
  Point lo(3), hi(3);
  Resolution res(3);
  for (int k = 1; k <= kMaxDim; ++k) {
    const std::string key = fmt::format("x{}", k);
    if (!s.has(key)) break;
    const std::vector<std::string> parts = split_top_level(s.text(key));
    if (parts.size() != 3) throw ConfigError(fmt::format("[domain] {} must be 'lo, hi, resolution'", key));
    lo[k - 1] = constant(parts[0], "[domain] " + key);
    hi[k - 1] = constant(parts[1], "[domain] " + key);
    const double r = constant(parts[2], "[domain] " + key);
    if (r != std::floor(r) || r < 2) throw ConfigError(fmt::format("[domain] {}: resolution must be an integer >= 2", key));
    res[k - 1] = static_cast<long>(r);
    axes.push_back(key);
  }
  if (axes.empty()) throw ConfigError("missing key 'x1' in section [domain]");
  const int dim = static_cast<int>(axes.size());
  const long refine = s.integer("refine", 2);
  s.reject_unknown();
  try {
    cfg.grid = GridDomain(lo.head(dim), hi.head(dim), res.head(dim), static_cast<int>(refine));
    cfg.grid.validate();
  } catch (const Error& e) {
    throw ConfigError(fmt::format("[domain]: {}", e.what()));
  }
  cfg.problem.dim = dim;
}

std::vector<std::string> axis_names(int dim) {
  std::vector<std::string> out;
  for (int k = 1; k <= dim; ++k) out.push_back(fmt::format("x{}", k));
  return out;
}

void load_family(Section s, ProblemConfig& cfg) {
  const std::string kind = s.has("kind") ? s.text("kind") : std::string("custom");
  cfg.family_kind = kind;
  ParamCurve& curve = cfg.problem.curve;
  try {
    if (kind == "custom") {
      curve.alpha = curve_fn("alpha", s.text("alpha"));
      curve.beta = curve_fn("beta", s.text("beta"));
      const auto ap = s.maybe_text("alpha_prime");
      const auto bp = s.maybe_text("beta_prime");
      if (ap.has_value() != bp.has_value())
        throw ConfigError("[family] alpha_prime and beta_prime must be given together");
      if (ap) {
        curve.alpha_prime = curve_fn("alpha_prime", *ap);
        curve.beta_prime = curve_fn("beta_prime", *bp);
      }
      curve.domain = interval_key(s, "interval");
      if (s.has("derivable")) {
        const Interval A = interval_key(s, "derivable");
        const Interval& I = curve.domain;
        if (!I.contains(A) || A.lo > I.lo || A.hi < I.hi)
          throw ConfigError(fmt::format("[family] derivable {} must lie between int(I) and I = {}", to_string(A),
                                        to_string(I)));
        curve.derivable = A;
      }
    } else if (kind == "trig") {
      const double c = s.number("c", 0.0);
      const double d = s.number("d", 0.0);
      const Interval J = s.has("interval") ? interval_key(s, "interval")
                                           : Interval::closed(-std::acos(0.0), std::acos(0.0));
      cfg.catalog = trig_family(c, d, J);
    } else if (kind == "prop11") {
      cfg.catalog = prop11_family(s.number("c"));
    } else if (kind == "exp") {
      cfg.catalog = exp_family(interval_key(s, "interval"));
    } else {
      throw ConfigError(fmt::format("[family] unknown kind '{}'", kind));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("[family]: {}", e.what()));
  }
  if (cfg.catalog) curve = cfg.catalog->curve;
  s.reject_unknown();
}

void load_solver(Section s, Section t, ProblemConfig& cfg) {
  DualityOptions& o = cfg.solver;
  o.lambda_grid = static_cast<int>(s.integer("lambda_grid", o.lambda_grid));
  o.window = s.number("window", o.window);
  o.max_truncations = static_cast<int>(s.integer("max_truncations", o.max_truncations));
  o.check.profile.samples = static_cast<int>(s.integer("g_samples", o.check.profile.samples));
  o.check.i1_lambdas = static_cast<int>(s.integer("i1_lambdas", o.check.i1_lambdas));
  o.check.i1_thresholds = static_cast<int>(s.integer("i1_thresholds", o.check.i1_thresholds));
  cfg.alternative_samples = static_cast<int>(s.integer("alternative_samples", cfg.alternative_samples));
  s.reject_unknown();
  if (o.lambda_grid < 64) throw ConfigError("[solver] lambda_grid must be at least 64");
  if (!(o.window > 0.0)) throw ConfigError("[solver] window must be positive");
  if (o.max_truncations < 1) throw ConfigError("[solver] max_truncations must be at least 1");

  Tolerances& tol = o.tol;
  tol.alpha_zero = t.number("alpha_zero", tol.alpha_zero);
  tol.psi_zero = t.number("psi_zero", tol.psi_zero);
  tol.fd_step = t.number("fd_step", tol.fd_step);
  tol.equality = t.number("equality", tol.equality);
  tol.estimate = t.number("estimate", tol.estimate);
  tol.exhaustion = t.number("exhaustion", tol.exhaustion);
  tol.equilibrium = t.number("equilibrium", tol.equilibrium);
  t.reject_unknown();
  for (double v : {tol.alpha_zero, tol.psi_zero, tol.fd_step, tol.equality, tol.estimate, tol.exhaustion,
                   tol.equilibrium})
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("[tolerances] values must be finite and >= 0");
}

}  // namespace

Interval parse_interval(const std::string& raw) {
  const std::string text = boost::algorithm::trim_copy(raw);
  if (text.size() < 2) throw ConfigError(fmt::format("malformed interval '{}'", raw));
  const char open = text.front(), close = text.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')'))
    throw ConfigError(fmt::format("malformed interval '{}': expected [a, b], (a, b), [a, b) or (a, b]", raw));
  const std::vector<std::string> parts = split_top_level(text.substr(1, text.size() - 2));
  if (parts.size() != 2) throw ConfigError(fmt::format("malformed interval '{}': expected two endpoints", raw));
  const double lo = constant(parts[0], "interval");
  const double hi = constant(parts[1], "interval");
  if (!(lo < hi)) throw ConfigError(fmt::format("malformed interval '{}': needs lo < hi", raw));
  if ((lo == -kInf && open == '[') || (hi == kInf && close == ']'))
    throw ConfigError(fmt::format("malformed interval '{}': an infinite end must be open", raw));
  return Interval(lo, hi, open == '[', close == ']');
}

ProblemConfig parse_problem(std::istream& in, const std::string& origin) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}: parse error at line {}: {}", origin, e.line(), e.message()));
  }
  for (const auto& kv : root) {
    static const std::set<std::string> known = {"problem", "domain",     "functions", "family",
                                                "solver",  "tolerances", "lipschitz", "output"};
    if (kv.second.empty() && !kv.second.data().empty())
      throw ConfigError(fmt::format("{}: key '{}' outside any section", origin, kv.first));
    if (!known.count(kv.first)) throw ConfigError(fmt::format("{}: unknown section [{}]", origin, kv.first));
  }

  ProblemConfig cfg;
  try {
    Section meta = section(root, "problem");
    cfg.problem.name = meta.has("name") ? meta.text("name") : origin;
    meta.reject_unknown();

    load_domain(required(root, "domain"), cfg);
    const std::vector<std::string> axes = axis_names(cfg.problem.dim);

    Section fn = required(root, "functions");
    cfg.problem.phi = field("phi", fn.text("phi"), axes);
    cfg.problem.psi = field("psi", fn.text("psi"), axes);
    if (const auto om = fn.maybe_text("omega")) cfg.problem.omega = field("omega", *om, axes);
    fn.reject_unknown();

    load_family(required(root, "family"), cfg);
    load_solver(section(root, "solver"), section(root, "tolerances"), cfg);

    Section lip = section(root, "lipschitz");
    if (lip.present()) {
      LipschitzData d{lip.number("L"), lip.number("phi_norm")};
      if (!(d.L >= 0.0) || !(d.phi_norm >= 0.0)) throw ConfigError("[lipschitz] L and phi_norm must be >= 0");
      cfg.lipschitz = d;
      lip.reject_unknown();
    }
    Section out = section(root, "output");
    if (const auto csv = out.maybe_text("csv")) cfg.csv = *csv;
    out.reject_unknown();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", origin, e.what()));
  }
  return cfg;
}

ProblemConfig load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open file", path));
  return parse_problem(in, path);
}

}  // namespace envmin
