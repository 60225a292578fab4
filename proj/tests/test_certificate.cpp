#include <doctest.h>

#include <string>

#include "qhb/certificate.hpp"
#include "qhb/problems.hpp"

using namespace qhb;

namespace {

BlowUpCertificate run(std::vector<double> x0, double tau_max = 1e4) {
  const ProblemSpec p = make_kk_simple();
  InitialData d;
  d.x0 = std::move(x0);
  BlowUpOptions o;
  o.tau_max = tau_max;
  return validate_blowup(p, CompactChart::para(p.model.type()), d, o);
}

}  // namespace

TEST_CASE("real_string round-trips doubles exactly") {
  for (double x : {0.1, 1.0 / 3.0, 84.083847335778827, -2.5e-300, 6.02214076e23})
    CHECK(std::stod(real_string(x)) == x);
}

TEST_CASE("interval_json bounds the interval outward") {
  const Interval x(0.1, 1.0 / 3.0);
  const nlohmann::json j = interval_json(x);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(parse_down(j[0].get<std::string>()) <= x.lo());
  CHECK(parse_up(j[1].get<std::string>()) >= x.hi());
}

TEST_CASE("successful certificate serializes and round-trips") {
  const BlowUpCertificate c = run({-0.1, -0.1});
  REQUIRE(c.succeeded());
  const nlohmann::json j = certificate_json(c);
  CHECK(j["schema"] == kCertificateSchema);
  CHECK(j["status"] == "succeeded");
  CHECK(j["stage"].is_null());
  CHECK(j["problem"]["id"] == "kk-simple");
  CHECK(j["chart"] == "para");
  CHECK(j["x_star"].size() == 2);
  CHECK(j["lyapunov"]["Y"].size() == 2);
  CHECK(j["lyapunov"]["basis"] == "eigenvectors");
  CHECK(parse_down(j["t_max"][0].get<std::string>()) <= c.t_max.lo());
  CHECK(parse_up(j["t_max"][1].get<std::string>()) >= c.t_max.hi());
  CHECK(std::stod(j["lyapunov"]["eps"].get<std::string>()) == c.cert->eps);
  const std::string text = j.dump(2);
  CHECK(nlohmann::json::parse(text).dump(2) == text);
  CHECK(nlohmann::json::parse(j.dump()) == j);
}

TEST_CASE("failed certificate records the stage and nulls") {
  const BlowUpCertificate c = run({-0.1, 0.0001}, 1.0);
  REQUIRE_FALSE(c.succeeded());
  const nlohmann::json j = certificate_json(c);
  CHECK(j["status"] == "failed");
  CHECK(j["stage"] == "integration");
  CHECK(j["t_max"].is_null());
  CHECK(j["tau_N"].is_null());
  CHECK(nlohmann::json::parse(j.dump()) == j);
}
