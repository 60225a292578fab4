#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qhb/interval.hpp"
#include "qhb/linalg.hpp"

namespace qhb::testing {

// Seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  // Magnitude spread over [10^lo_exp, 10^hi_exp] with random sign.
  double log_uniform(double lo_exp, double hi_exp) {
    double m = std::pow(10.0, uniform(lo_exp, hi_exp));
    return coin() ? m : -m;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }
  // Random interval with endpoints of mixed magnitudes.
  Interval interval(double scale = 10.0) {
    double a = uniform(-scale, scale);
    double w = std::pow(10.0, uniform(-12, 0)) * scale;
    if (integer(0, 9) == 0) w = 0;
    return {a, a + w};
  }
  double member(const Interval& x) {
    if (x.is_point()) return x.lo();
    switch (integer(0, 3)) {
      case 0: return x.lo();
      case 1: return x.hi();
      default: {
        double v = uniform(x.lo(), x.hi());
        return std::fmin(std::fmax(v, x.lo()), x.hi());
      }
    }
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline mpq_class exact(double x) { return mpq_class(x); }

inline bool encloses(const Interval& x, const mpq_class& v) {
  return exact(x.lo()) <= v && v <= exact(x.hi());
}

inline IntervalVector point_vector(const std::vector<double>& v) { return IntervalVector::point(v); }

}  // namespace qhb::testing
