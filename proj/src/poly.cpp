#include "qhb/poly.hpp"

#include <stdexcept>

namespace qhb {

Poly Poly::constant(std::size_t nvars, const Interval& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::var(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("Poly::var index");
  Poly p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Interval(1.0));
  return p;
}

void Poly::add_term(const Exponents& e, const Interval& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Poly: exponent arity mismatch");
  if (c == Interval(0.0)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == Interval(0.0)) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Interval& c) {
  Poly r(nvars_);
  for (const auto& [e, a] : terms_) r.add_term(e, a * c);
  return *this = std::move(r);
}

Poly Poly::derivative(std::size_t i) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    r.add_term(d, c * Interval(static_cast<double>(e[i])));
  }
  return r;
}

Interval Poly::eval(const IntervalVector& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("Poly::eval arity");
  Interval s(0.0);
  for (const auto& [e, c] : terms_) {
    Interval t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= pow_int(x[i], e[i]);
    s += t;
  }
  return s;
}

double Poly::eval(const std::vector<double>& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("Poly::eval arity");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.mid();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(const Poly& a) { return Interval(-1.0) * a; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("Poly: arity mismatch");
  Poly r(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly operator*(const Interval& c, Poly a) { return a *= c; }
Poly operator*(Poly a, const Interval& c) { return a *= c; }

Poly pow(const Poly& a, unsigned n) {
  Poly r = Poly::constant(a.nvars(), Interval(1.0));
  for (unsigned k = 0; k < n; ++k) r *= a;
  return r;
}

}  // namespace qhb
