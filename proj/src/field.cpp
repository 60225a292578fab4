#include "qhb/field.hpp"

#include <functional>
#include <stdexcept>

namespace qhb {

namespace {

unsigned weighted_degree(const Exponents& e, const QHType& t) {
  unsigned d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += t.alpha[i] * e[i];
  return d;
}

}  // namespace

VectorFieldModel::VectorFieldModel(QHType type, std::vector<Poly> f) : type_(std::move(type)), f_(std::move(f)) {
  const std::size_t n = type_.n();
  if (f_.size() != n) throw std::invalid_argument("VectorFieldModel: component count mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (f_[j].nvars() != n) throw std::invalid_argument("VectorFieldModel: polynomial arity mismatch");
    std::vector<Poly> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(f_[j].derivative(i));
    df_.push_back(std::move(row));
    const unsigned top = type_.order_k + type_.alpha[j];
    Poly ft(n + 1);
    for (const auto& [e, c] : f_[j].terms()) {
      unsigned d = weighted_degree(e, type_);
      if (d > top)
        throw std::invalid_argument("VectorFieldModel: component " + std::to_string(j + 1) +
                                    " exceeds the declared quasi-homogeneous order");
      Exponents ex = e;
      ex.push_back(top - d);
      ft.add_term(ex, c);
    }
    f_tilde_.push_back(std::move(ft));
  }
}

IntervalVector VectorFieldModel::eval_f(const IntervalVector& y) const {
  IntervalVector out(n());
  for (std::size_t j = 0; j < n(); ++j) out[j] = f_[j].eval(y);
  return out;
}

Eigen::VectorXd VectorFieldModel::eval_f(const Eigen::VectorXd& y) const {
  std::vector<double> v(y.data(), y.data() + y.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(n()));
  for (std::size_t j = 0; j < n(); ++j) out(static_cast<Eigen::Index>(j)) = f_[j].eval(v);
  return out;
}

IntervalMatrix VectorFieldModel::eval_Df(const IntervalVector& y) const {
  IntervalMatrix m(n(), n());
  for (std::size_t j = 0; j < n(); ++j)
    for (std::size_t i = 0; i < n(); ++i) m(j, i) = df_[j][i].eval(y);
  return m;
}

IntervalVector VectorFieldModel::eval_f_tilde(const IntervalVector& x, const Interval& w) const {
  IntervalVector xw = x;
  xw.push_back(w);
  IntervalVector out(n());
  for (std::size_t j = 0; j < n(); ++j) out[j] = f_tilde_[j].eval(xw);
  return out;
}

IntervalVector VectorFieldModel::eval_qh_part(const IntervalVector& y) const {
  return eval_f_tilde(y, Interval(0.0));
}

std::vector<Poly> VectorFieldModel::f_hat(const CompactChart& chart) const {
  if (chart.is_para()) throw std::invalid_argument("f_hat: directional chart required");
  const std::size_t n = this->n();
  const std::size_t ci = chart.index - 1;
  std::vector<Poly> out;
  for (std::size_t j = 0; j < n; ++j) {
    const unsigned top = type_.order_k + type_.alpha[j];
    Poly fh(n);
    for (const auto& [e, c] : f_[j].terms()) {
      unsigned d = weighted_degree(e, type_);
      if (d > top) throw std::invalid_argument("f_hat: field exceeds the declared order");
      Exponents ex(n, 0);
      ex[0] = top - d;
      std::size_t k = 1;
      for (std::size_t l = 0; l < n; ++l)
        if (l != ci) ex[k++] = e[l];
      Interval coef = (chart.sign < 0 && e[ci] % 2 == 1) ? -c : c;
      fh.add_term(ex, coef);
    }
    out.push_back(std::move(fh));
  }
  return out;
}

namespace {

using Ref = TapeBuilder::Ref;

struct Emitted {
  std::vector<Ref> g;
  Ref dt = 0;
  std::optional<Ref> normal;
};

using Recipe = std::function<Emitted(TapeBuilder&, const std::vector<Ref>&)>;

struct Tapes {
  Tape g, dt, aug;
  std::optional<Tape> normal;
};

Tapes build_tapes(std::size_t n, const Recipe& recipe) {
  auto vars_of = [n](TapeBuilder& b) {
    std::vector<Ref> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(b.var(i));
    return v;
  };
  Tapes t;
  {
    TapeBuilder b(n);
    Emitted e = recipe(b, vars_of(b));
    for (Ref r : e.g) b.output(r);
    t.g = b.finish();
  }
  {
    TapeBuilder b(n);
    Emitted e = recipe(b, vars_of(b));
    b.output(e.dt);
    t.dt = b.finish();
  }
  {
    TapeBuilder b(n + 1);
    Emitted e = recipe(b, vars_of(b));
    for (Ref r : e.g) b.output(r);
    b.output(e.dt);
    t.aug = b.finish();
  }
  {
    TapeBuilder b(n);
    Emitted e = recipe(b, vars_of(b));
    if (e.normal) {
      b.output(*e.normal);
      t.normal = b.finish();
    }
  }
  return t;
}

}  // namespace

Interval DesingularizedField::normal_rate(const IntervalVector& x) const {
  if (!normal_) throw std::logic_error("normal_rate: quasi-parabolic field required");
  return normal_->eval(x)[0];
}

DesingularizedField DesingularizedField::from_polys(const std::vector<Poly>& g, const Poly& dt_dtau) {
  const std::size_t n = g.size();
  Recipe recipe = [&](TapeBuilder& b, const std::vector<Ref>& v) {
    Emitted e;
    for (const Poly& p : g) e.g.push_back(b.poly(p, v));
    e.dt = b.poly(dt_dtau, v);
    return e;
  };
  Tapes t = build_tapes(n, recipe);
  DesingularizedField f;
  f.dim_ = n;
  f.g_ = std::move(t.g);
  f.dt_ = std::move(t.dt);
  f.aug_ = std::move(t.aug);
  return f;
}

DesingularizedField desing_para(const VectorFieldModel& model) {
  const QHType& t = model.type();
  const std::size_t n = t.n();
  const std::vector<Poly>& ft = model.f_tilde();
  const Interval shrink = Interval::ratio(2 * t.c - 1, 2 * t.c);
  Recipe recipe = [&](TapeBuilder& b, const std::vector<Ref>& x) {
    Ref one = b.constant(Interval(1.0));
    Ref p2c = b.constant(Interval(0.0));
    for (std::size_t i = 0; i < n; ++i) p2c = b.add(p2c, b.pow(x[i], 2 * t.beta[i]));
    Ref w = b.sub(one, p2c);
    std::vector<Ref> xw(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    xw.push_back(w);
    std::vector<Ref> f;
    for (std::size_t j = 0; j < n; ++j) f.push_back(b.poly(ft[j], xw));
    Ref d = b.sub(one, b.scale(shrink, w));
    Ref g_sum = b.constant(Interval(0.0));
    Ref normal = b.constant(Interval(0.0));
    for (std::size_t j = 0; j < n; ++j) {
      Ref term = b.mul(b.pow(x[j], 2 * t.beta[j] - 1), f[j]);
      g_sum = b.add(g_sum, b.scale(Interval::ratio(1, t.alpha[j]), term));
      normal = b.add(normal, b.scale(Interval(static_cast<double>(t.beta[j])), term));
    }
    Emitted e;
    for (std::size_t i = 0; i < n; ++i) {
      Ref radial = b.scale(Interval(static_cast<double>(t.alpha[i])), b.mul(x[i], g_sum));
      e.g.push_back(b.sub(b.mul(d, f[i]), radial));
    }
    e.dt = b.mul(b.pow(w, t.order_k), d);
    e.normal = normal;
    return e;
  };
  Tapes tp = build_tapes(n, recipe);
  DesingularizedField out;
  out.dim_ = n;
  out.chart_ = CompactChart::para(t);
  out.g_ = std::move(tp.g);
  out.dt_ = std::move(tp.dt);
  out.aug_ = std::move(tp.aug);
  out.normal_ = std::move(tp.normal);
  return out;
}

DesingularizedField desing_dir(const VectorFieldModel& model, const CompactChart& chart) {
  if (chart.is_para()) throw std::invalid_argument("desing_dir: directional chart required");
  const QHType& t = model.type();
  const std::size_t n = t.n();
  const std::size_t ci = chart.index - 1;
  const std::vector<Poly> fh = model.f_hat(chart);
  const long long sigma = chart.sign;
  const long long ai = t.alpha[ci];
  // Inverse of the chart's structured matrix, applied to f^:
  //   r_0 = sigma f^_i / alpha_i,  r_l = f^_l - alpha_l x_l r_0  (l != i).
  Recipe recipe = [&](TapeBuilder& b, const std::vector<Ref>& z) {
    std::vector<Ref> vars(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<Ref> f;
    for (std::size_t j = 0; j < n; ++j) f.push_back(b.poly(fh[j], vars));
    Emitted e;
    Ref s = z[0];
    Ref r0 = b.scale(Interval::ratio(sigma, ai), f[ci]);
    e.g.push_back(b.neg(b.mul(s, r0)));
    std::size_t k = 1;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == ci) continue;
      Ref xl = z[k++];
      Ref corr = b.scale(Interval(static_cast<double>(t.alpha[l])), b.mul(xl, r0));
      e.g.push_back(b.sub(f[l], corr));
    }
    e.dt = b.pow(s, t.order_k);
    return e;
  };
  Tapes tp = build_tapes(n, recipe);
  DesingularizedField out;
  out.dim_ = n;
  out.chart_ = chart;
  out.g_ = std::move(tp.g);
  out.dt_ = std::move(tp.dt);
  out.aug_ = std::move(tp.aug);
  return out;
}

DesingularizedField desingularize(const VectorFieldModel& model, const CompactChart& chart) {
  return chart.is_para() ? desing_para(model) : desing_dir(model, chart);
}

Interval horizon_residual(const DesingularizedField& g, const IntervalVector& x) {
  if (!g.chart() || !g.chart()->is_para())
    throw std::invalid_argument("horizon_residual: quasi-parabolic field required");
  const QHType& t = g.chart()->type;
  IntervalVector v = g.eval_g(x);
  Interval w = Interval(1.0) - p_pow2c(x, t);
  Interval lhs(0.0);
  for (std::size_t j = 0; j < x.size(); ++j)
    lhs -= Interval(2.0 * t.beta[j]) * pow_int(x[j], 2 * t.beta[j] - 1) * v[j];
  return lhs + Interval::ratio(1, t.c) * g.normal_rate(x) * w;
}

}  // namespace qhb
