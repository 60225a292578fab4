#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>

namespace qhb {

// Directed-rounding primitives. Each result is the round-to-nearest value,
// moved by one ulp only when an error-free transformation shows the exact
// result lies on the wrong side of it.
namespace rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double next_down(double x) { return std::nextafter(x, -kInf); }
inline double next_up(double x) { return std::nextafter(x, kInf); }

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
// a^n for a >= 0.
double pow_down(double a, unsigned n);
double pow_up(double a, unsigned n);

}  // namespace rnd

class Interval {
 public:
  constexpr Interval() = default;
  Interval(double v);  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi);

  static Interval entire() { return {-rnd::kInf, rnd::kInf}; }
  // Enclosure of num/den.
  static Interval ratio(long long num, long long den);
  static Interval pi();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const;
  // Upper bounds on the radius and width.
  double rad() const;
  double width() const;
  double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
  double mig() const;

  bool is_point() const { return lo_ == hi_; }
  bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  // o lies strictly inside this interval.
  bool interior_contains(const Interval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
// Throws std::domain_error when b contains zero.
Interval operator/(const Interval& a, const Interval& b);

inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo() == b.lo() && a.hi() == b.hi();
}

Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);
Interval abs(const Interval& x);
Interval sqr(const Interval& x);
Interval pow_int(const Interval& x, unsigned n);
// Throws std::domain_error for negative arguments.
Interval sqrt(const Interval& x);
Interval root(const Interval& x, unsigned n);
Interval cos(const Interval& x);
// Symmetric widening by an absolute amount.
Interval inflate(const Interval& x, double r);

std::ostream& operator<<(std::ostream& os, const Interval& x);

// Decimal rendering with 17 significant digits, rounded toward -inf / +inf,
// so that the printed number bounds the binary value from the given side.
std::string decimal_down(double x);
std::string decimal_up(double x);
// Parses a decimal string into a double that bounds it from the given side.
double parse_down(const std::string& s);
double parse_up(const std::string& s);

}  // namespace qhb
