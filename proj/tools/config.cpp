#include "config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qhb::cli {

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size() || !std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty vector");
  return out;
}

void check_config(const RunConfig& cfg) {
  if (cfg.problem.empty()) throw std::invalid_argument("--problem is required");
  if (cfg.x0 && cfg.y0) throw std::invalid_argument("give at most one of --x0 and --y0");
  if (!(cfg.tol > 0)) throw std::invalid_argument("--tol must be positive");
  if (!(cfg.tau_max >= 0)) throw std::invalid_argument("--tau-max must be nonnegative");
  if (cfg.order < 1 || cfg.order > 60) throw std::invalid_argument("--order must be in 1..60");
  if (cfg.eps_override && !(*cfg.eps_override > 0)) throw std::invalid_argument("--eps must be positive");
}

Resolved resolve(const RunConfig& cfg) {
  check_config(cfg);
  ProblemSpec p = make_problem(cfg.problem, cfg.params);
  const std::string chart_text = cfg.chart.empty() ? p.default_chart : cfg.chart;
  CompactChart chart = CompactChart::parse(chart_text, p.model.type());
  InitialData init;
  if (cfg.x0) {
    init.x0 = cfg.x0;
  } else if (cfg.y0) {
    init.y0 = IntervalVector::point(*cfg.y0);
  } else if (p.default_y0) {
    init.y0 = p.default_y0;
  } else if (p.default_x0) {
    if (!chart.is_para()) throw std::invalid_argument("problem default x0 is quasi-parabolic; give --x0 or --y0");
    init.x0 = p.default_x0;
  } else {
    throw std::invalid_argument("no initial data: give --x0 or --y0");
  }
  BlowUpOptions o;
  o.integrator.tol = cfg.tol;
  o.integrator.order = cfg.order;
  o.tau_max = cfg.tau_max;
  o.eps_override = cfg.eps_override;
  return {std::move(p), chart, std::move(init), o};
}

}  // namespace qhb::cli
