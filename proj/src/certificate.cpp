#include "qhb/certificate.hpp"

#include <cstdio>

namespace qhb {

using nlohmann::json;

std::string real_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json interval_json(const Interval& x) { return json::array({decimal_down(x.lo()), decimal_up(x.hi())}); }

json interval_vector_json(const IntervalVector& x) {
  json a = json::array();
  for (const Interval& c : x) a.push_back(interval_json(c));
  return a;
}

json certificate_json(const BlowUpCertificate& c) {
  json j;
  j["schema"] = kCertificateSchema;
  j["problem"] = {{"id", c.problem_id}, {"params", c.params}};
  j["chart"] = c.chart;
  j["initial"] = {{"x0", interval_vector_json(c.x0)},
                  {"y0", c.y0 ? interval_vector_json(*c.y0) : json(nullptr)}};
  j["status"] = c.succeeded() ? "succeeded" : "failed";
  j["stage"] = c.succeeded() ? json(nullptr) : json(c.stage);
  j["message"] = c.message;
  if (c.cert) {
    const LyapunovCert& l = *c.cert;
    json Y = json::array();
    for (Eigen::Index r = 0; r < l.Y.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index s = 0; s < l.Y.cols(); ++s) row.push_back(real_string(l.Y(r, s)));
      Y.push_back(row);
    }
    j["x_star"] = interval_vector_json(l.x_star);
    j["lyapunov"] = {{"basis", c.lyapunov_basis},
                     {"Y", Y},
                     {"domain_radius", real_string(l.domain_radius)},
                     {"eps", real_string(l.eps)},
                     {"c_A", interval_json(l.c_A)},
                     {"lambda_min_Y", interval_json(l.lam_min_Y)},
                     {"lambda_max_Y", interval_json(l.lam_max_Y)},
                     {"c1", interval_json(l.c1)},
                     {"c_tildeN", interval_json(l.c_tildeN)}};
  } else {
    j["x_star"] = nullptr;
    j["lyapunov"] = nullptr;
  }
  if (c.succeeded()) {
    j["tau_entry"] = real_string(c.tau_entry);
    j["tau_N"] = real_string(c.tau_N);
    j["steps"] = c.steps;
    j["L_end"] = interval_json(c.L_end);
    j["t_N"] = interval_json(c.t_N);
    j["tail"] = interval_json(c.tail_bound);
    j["t_max"] = interval_json(c.t_max);
  } else {
    for (const char* k : {"tau_entry", "tau_N", "steps", "L_end", "t_N", "tail", "t_max"}) j[k] = nullptr;
  }
  j["wall_time_seconds"] = real_string(c.wall_seconds);
  return j;
}

}  // namespace qhb
