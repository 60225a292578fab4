#include "qhb/compact.hpp"

#include <numeric>
#include <stdexcept>

#include "qhb/error.hpp"

namespace qhb {

QHType make_type(const std::vector<int>& alpha, int order_k) {
  if (alpha.empty()) throw std::invalid_argument("make_type: empty weight vector");
  if (order_k < 1) throw std::invalid_argument("make_type: order k must be positive");
  QHType t;
  unsigned c = 1;
  for (int a : alpha) {
    if (a <= 0) throw std::invalid_argument("make_type: weights must be positive");
    c = std::lcm(c, static_cast<unsigned>(a));
  }
  t.c = c;
  t.order_k = static_cast<unsigned>(order_k);
  for (int a : alpha) {
    t.alpha.push_back(static_cast<unsigned>(a));
    t.beta.push_back(c / static_cast<unsigned>(a));
  }
  return t;
}

CompactChart CompactChart::para(const QHType& t) {
  CompactChart ch;
  ch.kind = Kind::QuasiParabolic;
  ch.type = t;
  return ch;
}

CompactChart CompactChart::directional(const QHType& t, std::size_t index, int sign) {
  if (index < 1 || index > t.n()) throw std::invalid_argument("directional chart index out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("directional chart sign must be +1 or -1");
  CompactChart ch;
  ch.kind = Kind::Directional;
  ch.index = index;
  ch.sign = sign;
  ch.type = t;
  return ch;
}

CompactChart CompactChart::parse(const std::string& text, const QHType& t) {
  if (text == "para") return para(t);
  if (text.rfind("dir:", 0) == 0) {
    auto colon = text.find(':', 4);
    if (colon == std::string::npos || colon + 2 != text.size())
      throw std::invalid_argument("chart must look like dir:<i>:<+|->");
    std::size_t idx = 0;
    try {
      idx = std::stoul(text.substr(4, colon - 4));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad chart index in '" + text + "'");
    }
    char s = text[colon + 1];
    if (s != '+' && s != '-') throw std::invalid_argument("chart sign must be + or -");
    return directional(t, idx, s == '+' ? 1 : -1);
  }
  throw std::invalid_argument("unknown chart '" + text + "'");
}

std::string CompactChart::label() const {
  if (is_para()) return "para";
  return "dir:" + std::to_string(index) + ":" + (sign > 0 ? "+" : "-");
}

Interval p_pow2c(const IntervalVector& x, const QHType& t) {
  if (x.size() != t.n()) throw std::invalid_argument("p_functional: dimension mismatch");
  Interval s(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s += pow_int(x[i], 2 * t.beta[i]);
  return s;
}

PValue p_functional(const IntervalVector& x, const QHType& t) {
  Interval p2c = p_pow2c(x, t);
  return {root(p2c, 2 * t.c), p2c};
}

ParaPoint para_forward(const IntervalVector& y, const QHType& t) {
  const PValue pv = p_functional(y, t);
  if (!pv.p2c.is_finite()) throw VerificationError("para_forward: non-finite input");
  const unsigned m = 2 * t.c;
  const Interval p2c = pv.p2c;
  ScalarMap F{
      [m, p2c](const Interval& k) { return pow_int(k, m - 1) * (k - Interval(1.0)) - p2c; },
      [m](const Interval& k) {
        return Interval(static_cast<double>(m)) * pow_int(k, m - 1) -
               Interval(static_cast<double>(m - 1)) * pow_int(k, m - 2);
      }};
  const double base = std::fmax(1.0, pv.p.hi());
  Interval cand(std::fmax(1.0, pv.p.lo()), rnd::add_up(rnd::mul_up(2.0, base), 1.0));
  auto kappa = krawczyk_scalar(F, cand);
  if (!kappa) throw VerificationError("para_forward: kappa root not validated");
  // kappa > max(1, p(y)) on the validated root.
  auto k2 = intersect(*kappa, Interval(1.0, rnd::kInf));
  if (!k2) throw VerificationError("para_forward: kappa enclosure below 1");
  ParaPoint out{IntervalVector(y.size()), *k2};
  for (std::size_t i = 0; i < y.size(); ++i) out.x[i] = y[i] / pow_int(out.kappa, t.alpha[i]);
  if (!(p_pow2c(out.x, t).hi() < 1.0)) {
    // Use the exact identity p(x)^{2c} = 1 - 1/kappa when direct evaluation is too wide.
    Interval alt = Interval(1.0) - Interval(1.0) / out.kappa;
    if (!(alt.hi() < 1.0)) throw VerificationError("para_forward: image not certified inside the disk");
  }
  return out;
}

IntervalVector para_inverse(const IntervalVector& x, const QHType& t) {
  Interval w = Interval(1.0) - p_pow2c(x, t);
  if (!(w.lo() > 0.0)) throw std::domain_error("para_inverse: point at or beyond the horizon");
  IntervalVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / pow_int(w, t.alpha[i]);
  return y;
}

IntervalVector DirPoint::state() const {
  IntervalVector z(x.size() + 1);
  z[0] = s;
  for (std::size_t i = 0; i < x.size(); ++i) z[i + 1] = x[i];
  return z;
}

DirPoint dir_forward(const IntervalVector& y, const CompactChart& chart) {
  if (chart.is_para()) throw std::invalid_argument("dir_forward: directional chart required");
  const QHType& t = chart.type;
  if (y.size() != t.n()) throw std::invalid_argument("dir_forward: dimension mismatch");
  const std::size_t i = chart.index - 1;
  Interval yi = chart.sign > 0 ? y[i] : -y[i];
  if (!(yi.lo() > 0.0)) throw std::domain_error("dir_forward: chart coordinate has wrong sign or contains zero");
  DirPoint out{root(Interval(1.0) / yi, t.alpha[i]), IntervalVector()};
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (j == i) continue;
    out.x.push_back(y[j] * pow_int(out.s, t.alpha[j]));
  }
  return out;
}

IntervalVector dir_inverse(const Interval& s, const IntervalVector& x, const CompactChart& chart) {
  if (chart.is_para()) throw std::invalid_argument("dir_inverse: directional chart required");
  const QHType& t = chart.type;
  if (x.size() + 1 != t.n()) throw std::invalid_argument("dir_inverse: dimension mismatch");
  if (!(s.lo() > 0.0)) throw std::domain_error("dir_inverse: s not certified positive");
  const std::size_t i = chart.index - 1;
  IntervalVector y(t.n());
  std::size_t k = 0;
  for (std::size_t j = 0; j < t.n(); ++j) {
    if (j == i) y[j] = Interval(static_cast<double>(chart.sign)) / pow_int(s, t.alpha[j]);
    else y[j] = x[k++] / pow_int(s, t.alpha[j]);
  }
  return y;
}

IntervalVector dir_inverse(const IntervalVector& state, const CompactChart& chart) {
  if (state.size() == 0) throw std::invalid_argument("dir_inverse: empty state");
  IntervalVector x(state.size() - 1);
  for (std::size_t j = 1; j < state.size(); ++j) x[j - 1] = state[j];
  return dir_inverse(state[0], x, chart);
}

IntervalVector chart_inverse(const IntervalVector& state, const CompactChart& chart) {
  return chart.is_para() ? para_inverse(state, chart.type) : dir_inverse(state, chart);
}

IntervalVector chart_forward(const IntervalVector& y, const CompactChart& chart) {
  return chart.is_para() ? para_forward(y, chart.type).x : dir_forward(y, chart).state();
}

}  // namespace qhb
