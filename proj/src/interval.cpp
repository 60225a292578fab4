#include "qhb/interval.hpp"

#include <algorithm>
#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace qhb {
namespace rnd {
namespace {

// Below this magnitude FMA residuals may be inexact; fall back to a blind ulp step.
constexpr double kTiny = 0x1p-968;

// Overflowed sums/products of finite operands: replace the infinity by the
// largest finite value on the side that stays a valid bound.
double overflow_down(double r, double a, double b) {
  if (std::isinf(r) && std::isfinite(a) && std::isfinite(b) && r > 0) return DBL_MAX;
  return r;
}
double overflow_up(double r, double a, double b) {
  if (std::isinf(r) && std::isfinite(a) && std::isfinite(b) && r < 0) return -DBL_MAX;
  return r;
}

// Sign of the TwoSum error term of a + b = s.
double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return overflow_down(s, a, b);
  return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return overflow_up(s, a, b);
  return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (!std::isfinite(p)) return overflow_down(p, a, b);
  if (std::fabs(p) < kTiny) return next_down(p);
  return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (!std::isfinite(p)) return overflow_up(p, a, b);
  if (std::fabs(p) < kTiny) return next_up(p);
  return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

namespace {
// Sign of a/b - q, with q = fl(a/b).
int div_err_sign(double a, double b, double q) {
  double r = std::fma(-q, b, a);
  if (r == 0.0) return 0;
  return ((r < 0) == (b < 0)) ? 1 : -1;
}
}  // namespace

double div_down(double a, double b) {
  if (a == 0.0) return 0.0;
  double q = a / b;
  if (!std::isfinite(q)) return overflow_down(q, a, b);
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny * 0x1p60) return next_down(q);
  return div_err_sign(a, b, q) < 0 ? next_down(q) : q;
}

double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  double q = a / b;
  if (!std::isfinite(q)) return overflow_up(q, a, b);
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny * 0x1p60) return next_up(q);
  return div_err_sign(a, b, q) > 0 ? next_up(q) : q;
}

double sqrt_down(double a) {
  double s = std::sqrt(a);
  if (s == 0.0 || !std::isfinite(s)) return s;
  if (a < kTiny * 0x1p60) return next_down(s);
  return std::fma(-s, s, a) < 0 ? next_down(s) : s;
}

double sqrt_up(double a) {
  double s = std::sqrt(a);
  if (s == 0.0 || !std::isfinite(s)) return s;
  if (a < kTiny * 0x1p60) return next_up(s);
  return std::fma(-s, s, a) > 0 ? next_up(s) : s;
}

double pow_down(double a, unsigned n) {
  double r = 1.0;
  double base = a;
  while (n) {
    if (n & 1u) r = mul_down(r, base);
    n >>= 1u;
    if (n) base = mul_down(base, base);
  }
  return r;
}

double pow_up(double a, unsigned n) {
  double r = 1.0;
  double base = a;
  while (n) {
    if (n & 1u) r = mul_up(r, base);
    n >>= 1u;
    if (n) base = mul_up(base, base);
  }
  return r;
}

}  // namespace rnd

Interval::Interval(double v) : lo_(v), hi_(v) {
  if (std::isnan(v)) throw std::invalid_argument("Interval: NaN");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw std::invalid_argument("Interval: NaN endpoint");
  if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
}

Interval Interval::ratio(long long num, long long den) {
  double n = static_cast<double>(num);
  double d = static_cast<double>(den);
  if (static_cast<long long>(n) != num || static_cast<long long>(d) != den)
    throw std::invalid_argument("Interval::ratio: operands not exactly representable");
  return Interval(n) / Interval(d);
}

Interval Interval::pi() {
  constexpr double lo = 0x1.921fb54442d18p+1;
  return {lo, rnd::next_up(lo)};
}

double Interval::mid() const {
  if (lo_ == -rnd::kInf && hi_ == rnd::kInf) return 0.0;
  if (lo_ == -rnd::kInf) return -DBL_MAX;
  if (hi_ == rnd::kInf) return DBL_MAX;
  return 0.5 * lo_ + 0.5 * hi_;
}

double Interval::rad() const {
  double m = mid();
  return std::fmax(rnd::sub_up(m, lo_), rnd::sub_up(hi_, m));
}

double Interval::width() const { return rnd::sub_up(hi_, lo_); }

double Interval::mig() const {
  if (contains_zero()) return 0.0;
  return std::fmin(std::fabs(lo_), std::fabs(hi_));
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator+(const Interval& a, const Interval& b) {
  return {rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi())};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo())};
}

Interval operator*(const Interval& a, const Interval& b) {
  using rnd::mul_down;
  using rnd::mul_up;
  const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (al >= 0) {
    if (bl >= 0) return {mul_down(al, bl), mul_up(ah, bh)};
    if (bh <= 0) return {mul_down(ah, bl), mul_up(al, bh)};
    return {mul_down(ah, bl), mul_up(ah, bh)};
  }
  if (ah <= 0) {
    if (bl >= 0) return {mul_down(al, bh), mul_up(ah, bl)};
    if (bh <= 0) return {mul_down(ah, bh), mul_up(al, bl)};
    return {mul_down(al, bh), mul_up(al, bl)};
  }
  if (bl >= 0) return {mul_down(al, bh), mul_up(ah, bh)};
  if (bh <= 0) return {mul_down(ah, bl), mul_up(al, bl)};
  return {std::fmin(mul_down(al, bh), mul_down(ah, bl)),
          std::fmax(mul_up(al, bl), mul_up(ah, bh))};
}

Interval operator/(const Interval& a, const Interval& b) {
  using rnd::div_down;
  using rnd::div_up;
  if (b.contains_zero()) throw std::domain_error("Interval: division by an interval containing zero");
  const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (bl > 0) {
    if (al >= 0) return {div_down(al, bh), div_up(ah, bl)};
    if (ah <= 0) return {div_down(al, bl), div_up(ah, bh)};
    return {div_down(al, bl), div_up(ah, bl)};
  }
  if (al >= 0) return {div_down(ah, bh), div_up(al, bl)};
  if (ah <= 0) return {div_down(ah, bl), div_up(al, bh)};
  return {div_down(ah, bh), div_up(al, bh)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi())};
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  double lo = std::fmax(a.lo(), b.lo());
  double hi = std::fmin(a.hi(), b.hi());
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

Interval abs(const Interval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return {0.0, x.mag()};
}

Interval sqr(const Interval& x) {
  double g = x.mig(), m = x.mag();
  return {rnd::mul_down(g, g), rnd::mul_up(m, m)};
}

Interval pow_int(const Interval& x, unsigned n) {
  if (n == 0) return Interval(1.0);
  if (n == 1) return x;
  if (n % 2 == 0) return {rnd::pow_down(x.mig(), n), rnd::pow_up(x.mag(), n)};
  auto signed_down = [n](double v) { return v >= 0 ? rnd::pow_down(v, n) : -rnd::pow_up(-v, n); };
  auto signed_up = [n](double v) { return v >= 0 ? rnd::pow_up(v, n) : -rnd::pow_down(-v, n); };
  return {signed_down(x.lo()), signed_up(x.hi())};
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0) throw std::domain_error("Interval: sqrt of negative argument");
  return {rnd::sqrt_down(x.lo()), rnd::sqrt_up(x.hi())};
}

namespace {
double root_down(double a, unsigned n) {
  if (a == 0.0 || std::isinf(a)) return a;
  double r = std::pow(a, 1.0 / n);
  while (rnd::pow_up(r, n) > a) r = rnd::next_down(r);
  return r;
}
double root_up(double a, unsigned n) {
  if (a == 0.0 || std::isinf(a)) return a;
  double r = std::pow(a, 1.0 / n);
  while (rnd::pow_down(r, n) < a) r = rnd::next_up(r);
  return r;
}
}  // namespace

Interval root(const Interval& x, unsigned n) {
  if (n == 0) throw std::domain_error("Interval: zeroth root");
  if (n == 1) return x;
  if (n == 2) return sqrt(x);
  if (x.lo() < 0) throw std::domain_error("Interval: root of negative argument");
  return {root_down(x.lo(), n), root_up(x.hi(), n)};
}

Interval cos(const Interval& x) {
  if (!x.is_finite() || x.width() >= 7.0) return {-1.0, 1.0};
  // libm cos is accurate to within an ulp; widen by two to be safe.
  auto widen = [](double v, double dir) {
    return std::nextafter(std::nextafter(v, dir), dir);
  };
  double cl = std::cos(x.lo()), ch = std::cos(x.hi());
  double lo = std::fmax(-1.0, widen(std::fmin(cl, ch), -rnd::kInf));
  double hi = std::fmin(1.0, widen(std::fmax(cl, ch), rnd::kInf));
  const Interval pi = Interval::pi();
  long long j0 = static_cast<long long>(std::floor(x.lo() / pi.mid())) - 1;
  long long j1 = static_cast<long long>(std::ceil(x.hi() / pi.mid())) + 1;
  for (long long j = j0; j <= j1; ++j) {
    Interval pt = Interval(static_cast<double>(j)) * pi;
    if (!pt.overlaps(x)) continue;
    if (j % 2 == 0) hi = 1.0;
    else lo = -1.0;
  }
  return {lo, hi};
}

Interval inflate(const Interval& x, double r) {
  return {rnd::sub_down(x.lo(), r), rnd::add_up(x.hi(), r)};
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << decimal_down(x.lo()) << ", " << decimal_up(x.hi()) << ']';
}

namespace {

// Exact decimal value of a finite double, normalized: value = 0.d1d2... * 10^exp.
struct Decimal {
  bool neg = false;
  std::string digits;  // no leading or trailing zeros; empty means zero
  int exp = 0;
};

Decimal exact_decimal(double x) {
  Decimal d;
  if (x == 0.0) return d;
  d.neg = x < 0;
  // 767 significant digits suffice for the exact expansion of any double.
  char buf[900];
  std::snprintf(buf, sizeof buf, "%.780e", std::fabs(x));
  std::string s(buf);
  auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  int e10 = std::atoi(s.c_str() + epos + 1);
  mant.erase(std::remove(mant.begin(), mant.end(), '.'), mant.end());
  while (!mant.empty() && mant.back() == '0') mant.pop_back();
  d.digits = mant;
  d.exp = e10 + 1;
  return d;
}

Decimal parse_decimal(const std::string& text) {
  Decimal d;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) d.neg = text[i++] == '-';
  std::string mant;
  int point = -1;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') mant.push_back(c);
    else if (c == '.' && point < 0) point = static_cast<int>(mant.size());
    else break;
  }
  if (mant.empty()) throw std::invalid_argument("malformed decimal: " + text);
  int e10 = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw std::invalid_argument("malformed decimal: " + text);
    char* end = nullptr;
    long v = std::strtol(text.c_str() + i + 1, &end, 10);
    if (*end != '\0') throw std::invalid_argument("malformed decimal: " + text);
    e10 = static_cast<int>(v);
  }
  if (point < 0) point = static_cast<int>(mant.size());
  std::size_t lead = mant.find_first_not_of('0');
  if (lead == std::string::npos) return Decimal{};
  d.exp = point - static_cast<int>(lead) + e10;
  d.digits = mant.substr(lead);
  while (!d.digits.empty() && d.digits.back() == '0') d.digits.pop_back();
  return d;
}

// Compares |a| and |b|.
int compare_mag(const Decimal& a, const Decimal& b) {
  if (a.digits.empty() || b.digits.empty()) {
    return static_cast<int>(!a.digits.empty()) - static_cast<int>(!b.digits.empty());
  }
  if (a.exp != b.exp) return a.exp < b.exp ? -1 : 1;
  int c = a.digits.compare(b.digits);
  return (c > 0) - (c < 0);
}

int compare(const Decimal& a, const Decimal& b) {
  bool az = a.digits.empty(), bz = b.digits.empty();
  int sa = az ? 0 : (a.neg ? -1 : 1);
  int sb = bz ? 0 : (b.neg ? -1 : 1);
  if (sa != sb) return sa < sb ? -1 : 1;
  int m = compare_mag(a, b);
  return sa >= 0 ? m : -m;
}

std::string render(double x, bool toward_up) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  Decimal d = exact_decimal(x);
  if (d.digits.empty()) return "0";
  constexpr std::size_t kDigits = 17;
  std::string keep = d.digits.substr(0, std::min(kDigits, d.digits.size()));
  bool dropped = d.digits.size() > kDigits;
  bool bump = dropped && (toward_up != d.neg);
  int exp = d.exp;
  if (bump) {
    keep.resize(kDigits, '0');
    int i = static_cast<int>(keep.size()) - 1;
    while (i >= 0 && keep[i] == '9') keep[i--] = '0';
    if (i < 0) {
      keep.insert(keep.begin(), '1');
      keep.pop_back();
      ++exp;
    } else {
      ++keep[i];
    }
  }
  while (keep.size() > 1 && keep.back() == '0') keep.pop_back();
  std::string out = d.neg ? "-" : "";
  out += keep[0];
  if (keep.size() > 1) {
    out += '.';
    out += keep.substr(1);
  }
  out += 'e';
  out += std::to_string(exp - 1);
  return out;
}

double parse_directed(const std::string& s, bool toward_up) {
  if (s == "inf" || s == "+inf") return rnd::kInf;
  if (s == "-inf") return -rnd::kInf;
  Decimal target = parse_decimal(s);
  double v = std::strtod(s.c_str(), nullptr);
  if (std::isinf(v)) return toward_up ? v : (v > 0 ? DBL_MAX : v);
  int c = compare(exact_decimal(v), target);
  if (!toward_up && c > 0) return rnd::next_down(v);
  if (toward_up && c < 0) return rnd::next_up(v);
  return v;
}

}  // namespace

std::string decimal_down(double x) { return render(x, false); }
std::string decimal_up(double x) { return render(x, true); }
double parse_down(const std::string& s) { return parse_directed(s, false); }
double parse_up(const std::string& s) { return parse_directed(s, true); }

}  // namespace qhb
