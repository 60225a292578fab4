#pragma once

#include <json.hpp>
#include <string>

#include "qhb/blowup.hpp"

namespace qhb {

inline constexpr int kCertificateSchema = 1;

// Exact round-trip decimal for a double ("%.17g").
std::string real_string(double x);
// [lo, hi] as outward-rounded 17-digit decimal strings.
nlohmann::json interval_json(const Interval& x);
nlohmann::json interval_vector_json(const IntervalVector& x);

nlohmann::json certificate_json(const BlowUpCertificate& cert);

}  // namespace qhb
