// Plain-text reports (one key=value per line) and CSV writers.
#ifndef ENVMIN_REPORT_HPP
#define ENVMIN_REPORT_HPP

#include "envmin/catalog.hpp"
#include "envmin/topology.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace envmin {

std::string format_point(const Point& x);

std::string format_hypotheses(const HypothesisReport& rep);
std::string format_duality(const DualityReport& rep);
std::string format_equilibrium(const EquilibriumResult& eq);
std::string format_alternative(const AlternativeResult& alt);
std::string format_lipschitz(const LipschitzReport& rep);

struct EnvelopeRow {
  Point x;
  double closed = std::numeric_limits<double>::quiet_NaN();  // NaN when the closed form is unavailable
  double brute = 0.0;
};

struct EnvelopeTable {
  std::vector<EnvelopeRow> rows;
  bool closed_form = false;
};

std::string format_envelope_summary(const EnvelopeTable& table);

/// Header `lambda,inner_inf`.
void write_lambda_csv(std::ostream& os, const std::vector<std::pair<double, double>>& curve);
/// Header `x1[,x2[,x3]],phi_closed,phi_brute`.
void write_envelope_csv(std::ostream& os, const EnvelopeTable& table);
/// Header `x1[,x2],value,label`; label is -1 outside the sublevel set.
void write_sublevel_csv(std::ostream& os, const SampledField& f, const SublevelAnalysis& s);

}  // namespace envmin

#endif  // ENVMIN_REPORT_HPP
