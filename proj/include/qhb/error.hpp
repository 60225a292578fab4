#pragma once

#include <stdexcept>
#include <string>

namespace qhb {

// A rigorous test could not be completed (no contraction, no enclosure, ...).
// Mathematical failures are values for callers to report, not program bugs.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qhb
