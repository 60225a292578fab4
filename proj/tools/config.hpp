#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhb/blowup.hpp"

namespace qhb::cli {

struct RunConfig {
  std::string problem;
  std::map<std::string, std::string> params;
  std::string chart;  // empty: problem default
  std::optional<std::vector<double>> x0;
  std::optional<std::vector<double>> y0;
  double tol = 1e-12;
  double tau_max = 1e4;
  int order = 16;
  std::optional<double> eps_override;
  std::string out;  // empty: stdout
};

// Splits "a,b,c" into reals; throws std::invalid_argument on bad input.
std::vector<double> parse_vector(const std::string& text);

// Checks invariants (problem set, x0/y0 exclusive, tol > 0, ...).
void check_config(const RunConfig& cfg);

struct Resolved {
  ProblemSpec problem;
  CompactChart chart;
  InitialData init;
  BlowUpOptions options;
};

// Builds the problem, chart, initial data and options; falls back to the
// problem's default initial data when neither x0 nor y0 is set.
Resolved resolve(const RunConfig& cfg);

}  // namespace qhb::cli
