#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhb/compact.hpp"
#include "qhb/field.hpp"

namespace qhb {

// One published validation run: initial data (compactified or original),
// chart, and the expected enclosures.
struct ReferenceRow {
  std::string chart;
  std::optional<std::vector<double>> x0;
  std::optional<std::vector<double>> y0;
  std::optional<double> eps;
  std::optional<double> tau_N;
  Interval t_max;
};

struct ProblemSpec {
  std::string id;
  std::map<std::string, std::string> params;
  VectorFieldModel model;
  // Default initial data when none is given: compactified x0 or original y0.
  std::optional<std::vector<double>> default_x0;
  std::optional<IntervalVector> default_y0;
  std::string default_chart = "para";
  std::vector<ReferenceRow> reference;
};

ProblemSpec make_kk_simple();

struct KKConstants {
  Interval u_L, v_L, u_R, v_R, s, c1, c2;
};
KKConstants kk_default_constants();
ProblemSpec make_kk(const KKConstants& k = kk_default_constants());

ProblemSpec make_fvks(int d, int N, double L_domain = 1.0, double amplitude = 100.0);

struct ProblemInfo {
  std::string id;
  std::string params;
  std::string description;
};

// Registered problems in lexicographic order of id.
std::vector<ProblemInfo> list_problems();

// Builds a problem from its id and string parameters (d, N, L, amplitude,
// s, c1, c2, ...). Throws std::invalid_argument for unknown ids or bad values.
ProblemSpec make_problem(const std::string& id, const std::map<std::string, std::string>& params);

// Parses "a" or "lo,hi" into an interval (outward for decimal input).
Interval parse_interval(const std::string& text);

}  // namespace qhb
