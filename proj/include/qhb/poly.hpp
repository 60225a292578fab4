#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "qhb/interval.hpp"
#include "qhb/linalg.hpp"

namespace qhb {

using Exponents = std::vector<unsigned>;

// Sparse multivariate polynomial with interval coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Interval& c);
  static Poly var(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Interval>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponents& e, const Interval& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Interval& c);

  Poly derivative(std::size_t i) const;
  Interval eval(const IntervalVector& x) const;
  // Evaluation with coefficient midpoints; for floating-point work only.
  double eval(const std::vector<double>& x) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, Interval> terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Interval& c, Poly a);
Poly operator*(Poly a, const Interval& c);
Poly pow(const Poly& a, unsigned n);

}  // namespace qhb
