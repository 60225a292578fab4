#include "qhb/tape.hpp"

#include <stdexcept>

#include "qhb/mp_interval.hpp"

namespace qhb {

IntervalVector Tape::eval(const IntervalVector& x) const {
  if (x.size() != num_vars_) throw std::invalid_argument("Tape::eval arity");
  std::vector<Interval> out(outputs_.size());
  eval_generic<Interval>(std::span<const Interval>(x.data()), std::span<Interval>(out),
                         [](const Interval& c) { return c; });
  return IntervalVector(std::move(out));
}

IntervalVector Tape::eval_precise(const IntervalVector& x) const {
  if (x.size() != num_vars_) throw std::invalid_argument("Tape::eval_precise arity");
  std::vector<MpInterval> in(x.begin(), x.end());
  std::vector<MpInterval> out(outputs_.size());
  eval_generic<MpInterval>(std::span<const MpInterval>(in), std::span<MpInterval>(out),
                           [](const Interval& c) { return MpInterval(c); });
  IntervalVector res(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) res[i] = out[i].to_interval();
  return res;
}

Eigen::VectorXd Tape::eval(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != num_vars_) throw std::invalid_argument("Tape::eval arity");
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<double> out(outputs_.size());
  eval_generic<double>(std::span<const double>(in), std::span<double>(out),
                       [](const Interval& c) { return c.mid(); });
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

namespace {

template <class S, class Lift>
void forward_jacobian(const Tape& t, std::span<const S> x, std::vector<S>& val, std::vector<S>& grad, Lift lift) {
  const std::size_t n = t.num_vars();
  const auto& nodes = t.nodes();
  val.assign(nodes.size(), S(0.0));
  grad.assign(nodes.size() * n, S(0.0));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    S* g = &grad[i * n];
    const S* ga = &grad[nd.a * n];
    const S* gb = &grad[nd.b * n];
    switch (nd.op) {
      case Op::Var:
        val[i] = x[nd.a];
        g[nd.a] = S(1.0);
        break;
      case Op::Const: val[i] = lift(t.constants()[nd.a]); break;
      case Op::Add:
        val[i] = val[nd.a] + val[nd.b];
        for (std::size_t j = 0; j < n; ++j) g[j] = ga[j] + gb[j];
        break;
      case Op::Sub:
        val[i] = val[nd.a] - val[nd.b];
        for (std::size_t j = 0; j < n; ++j) g[j] = ga[j] - gb[j];
        break;
      case Op::Mul:
        val[i] = val[nd.a] * val[nd.b];
        for (std::size_t j = 0; j < n; ++j) g[j] = ga[j] * val[nd.b] + val[nd.a] * gb[j];
        break;
      case Op::Sqr: {
        val[i] = square(val[nd.a]);
        S two_a = S(2.0) * val[nd.a];
        for (std::size_t j = 0; j < n; ++j) g[j] = two_a * ga[j];
        break;
      }
      case Op::Neg:
        val[i] = -val[nd.a];
        for (std::size_t j = 0; j < n; ++j) g[j] = -ga[j];
        break;
      case Op::Scale: {
        S c = lift(t.constants()[nd.b]);
        val[i] = c * val[nd.a];
        for (std::size_t j = 0; j < n; ++j) g[j] = c * ga[j];
        break;
      }
    }
  }
}

}  // namespace

IntervalMatrix Tape::jacobian(const IntervalVector& x) const {
  if (x.size() != num_vars_) throw std::invalid_argument("Tape::jacobian arity");
  std::vector<Interval> val, grad;
  forward_jacobian<Interval>(*this, std::span<const Interval>(x.data()), val, grad,
                             [](const Interval& c) { return c; });
  IntervalMatrix j(outputs_.size(), num_vars_);
  for (std::size_t r = 0; r < outputs_.size(); ++r)
    for (std::size_t c = 0; c < num_vars_; ++c) j(r, c) = grad[outputs_[r] * num_vars_ + c];
  return j;
}

Eigen::MatrixXd Tape::jacobian(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != num_vars_) throw std::invalid_argument("Tape::jacobian arity");
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<double> val, grad;
  forward_jacobian<double>(*this, std::span<const double>(in), val, grad,
                           [](const Interval& c) { return c.mid(); });
  Eigen::MatrixXd j(static_cast<Eigen::Index>(outputs_.size()), static_cast<Eigen::Index>(num_vars_));
  for (std::size_t r = 0; r < outputs_.size(); ++r)
    for (std::size_t c = 0; c < num_vars_; ++c)
      j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = grad[outputs_[r] * num_vars_ + c];
  return j;
}

TapeBuilder::TapeBuilder(std::size_t num_vars) {
  tape_.num_vars_ = num_vars;
  for (std::size_t i = 0; i < num_vars; ++i)
    var_refs_.push_back(push({Op::Var, static_cast<std::uint32_t>(i), 0}));
}

TapeBuilder::Ref TapeBuilder::push(Node n) {
  tape_.nodes_.push_back(n);
  return static_cast<Ref>(tape_.nodes_.size() - 1);
}

bool TapeBuilder::is_const(Ref r, double v) const {
  const Node& n = tape_.nodes_[r];
  return n.op == Op::Const && tape_.consts_[n.a] == Interval(v);
}

TapeBuilder::Ref TapeBuilder::constant(const Interval& c) {
  tape_.consts_.push_back(c);
  return push({Op::Const, static_cast<std::uint32_t>(tape_.consts_.size() - 1), 0});
}

TapeBuilder::Ref TapeBuilder::add(Ref a, Ref b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return push({Op::Add, a, b});
}

TapeBuilder::Ref TapeBuilder::sub(Ref a, Ref b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(b);
  return push({Op::Sub, a, b});
}

TapeBuilder::Ref TapeBuilder::mul(Ref a, Ref b) {
  if (a == b) return sqr(a);
  if (tape_.nodes_[a].op == Op::Const) return scale(tape_.consts_[tape_.nodes_[a].a], b);
  if (tape_.nodes_[b].op == Op::Const) return scale(tape_.consts_[tape_.nodes_[b].a], a);
  return push({Op::Mul, a, b});
}

TapeBuilder::Ref TapeBuilder::sqr(Ref a) { return push({Op::Sqr, a, 0}); }

TapeBuilder::Ref TapeBuilder::neg(Ref a) { return push({Op::Neg, a, 0}); }

TapeBuilder::Ref TapeBuilder::scale(const Interval& c, Ref a) {
  if (c == Interval(1.0)) return a;
  if (c == Interval(-1.0)) return neg(a);
  if (c == Interval(0.0)) return constant(Interval(0.0));
  tape_.consts_.push_back(c);
  return push({Op::Scale, a, static_cast<std::uint32_t>(tape_.consts_.size() - 1)});
}

TapeBuilder::Ref TapeBuilder::pow(Ref a, unsigned n) {
  if (n == 0) return constant(Interval(1.0));
  if (n == 1) return a;
  auto key = std::make_pair(a, n);
  if (auto it = pow_cache_.find(key); it != pow_cache_.end()) return it->second;
  Ref half = pow(a, n / 2);
  Ref r = sqr(half);
  if (n % 2) r = mul(r, a);
  pow_cache_[key] = r;
  return r;
}

TapeBuilder::Ref TapeBuilder::poly(const Poly& p, std::span<const Ref> vars) {
  if (vars.size() != p.nvars()) throw std::invalid_argument("TapeBuilder::poly arity");
  Ref acc = constant(Interval(0.0));
  for (const auto& [e, c] : p.terms()) {
    Ref term = 0;
    bool have = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      Ref f = pow(vars[i], e[i]);
      term = have ? mul(term, f) : f;
      have = true;
    }
    term = have ? scale(c, term) : constant(c);
    acc = add(acc, term);
  }
  return acc;
}

TaylorEngine::TaylorEngine(const Tape& tape) : tape_(&tape), n_(tape.num_vars()) {
  if (tape.num_outputs() != tape.num_vars())
    throw std::invalid_argument("TaylorEngine: field must map R^n to R^n");
}

void TaylorEngine::compute(const IntervalVector& x0, int order, bool variational) {
  if (x0.size() != n_) throw std::invalid_argument("TaylorEngine: dimension mismatch");
  const auto& nodes = tape_->nodes();
  const auto& consts = tape_->constants();
  const auto& outs = tape_->outputs();
  const std::size_t stride = static_cast<std::size_t>(order) + 1;
  order_ = order;
  xs_.assign(n_ * stride, Interval(0.0));
  val_.assign(nodes.size() * stride, Interval(0.0));
  if (variational) {
    dxs_.assign(n_ * stride * n_, Interval(0.0));
    grad_.assign(nodes.size() * stride * n_, Interval(0.0));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    xs_[i * stride] = x0[i];
    if (variational) dxs_[(i * stride) * n_ + i] = Interval(1.0);
  }
  const std::size_t n = n_;
  auto V = [&](std::size_t node, std::size_t k) -> Interval& { return val_[node * stride + k]; };
  auto G = [&](std::size_t node, std::size_t k) -> Interval* { return &grad_[(node * stride + k) * n]; };

  for (std::size_t k = 0; k < static_cast<std::size_t>(order); ++k) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& nd = nodes[i];
      switch (nd.op) {
        case Op::Var:
          V(i, k) = xs_[nd.a * stride + k];
          if (variational)
            for (std::size_t j = 0; j < n; ++j) G(i, k)[j] = dxs_[(nd.a * stride + k) * n + j];
          break;
        case Op::Const:
          V(i, k) = k == 0 ? consts[nd.a] : Interval(0.0);
          break;
        case Op::Add:
          V(i, k) = V(nd.a, k) + V(nd.b, k);
          if (variational)
            for (std::size_t j = 0; j < n; ++j) G(i, k)[j] = G(nd.a, k)[j] + G(nd.b, k)[j];
          break;
        case Op::Sub:
          V(i, k) = V(nd.a, k) - V(nd.b, k);
          if (variational)
            for (std::size_t j = 0; j < n; ++j) G(i, k)[j] = G(nd.a, k)[j] - G(nd.b, k)[j];
          break;
        case Op::Neg:
          V(i, k) = -V(nd.a, k);
          if (variational)
            for (std::size_t j = 0; j < n; ++j) G(i, k)[j] = -G(nd.a, k)[j];
          break;
        case Op::Scale: {
          const Interval& c = consts[nd.b];
          V(i, k) = c * V(nd.a, k);
          if (variational)
            for (std::size_t j = 0; j < n; ++j) G(i, k)[j] = c * G(nd.a, k)[j];
          break;
        }
        case Op::Mul: {
          Interval s(0.0);
          for (std::size_t l = 0; l <= k; ++l) s += V(nd.a, l) * V(nd.b, k - l);
          V(i, k) = s;
          if (variational) {
            Interval* g = G(i, k);
            for (std::size_t j = 0; j < n; ++j) g[j] = Interval(0.0);
            for (std::size_t l = 0; l <= k; ++l) {
              const Interval& al = V(nd.a, l);
              const Interval& bl = V(nd.b, k - l);
              const Interval* ga = G(nd.a, l);
              const Interval* gb = G(nd.b, k - l);
              for (std::size_t j = 0; j < n; ++j) g[j] += al * gb[j] + bl * ga[j];
            }
          }
          break;
        }
        case Op::Sqr: {
          Interval s(0.0);
          for (std::size_t l = 0; 2 * l < k; ++l) s += V(nd.a, l) * V(nd.a, k - l);
          s = Interval(2.0) * s;
          if (k % 2 == 0) s += sqr(V(nd.a, k / 2));
          V(i, k) = s;
          if (variational) {
            Interval* g = G(i, k);
            for (std::size_t j = 0; j < n; ++j) g[j] = Interval(0.0);
            for (std::size_t l = 0; l <= k; ++l) {
              const Interval& al = V(nd.a, l);
              const Interval* ga = G(nd.a, k - l);
              for (std::size_t j = 0; j < n; ++j) g[j] += al * ga[j];
            }
            for (std::size_t j = 0; j < n; ++j) g[j] = Interval(2.0) * g[j];
          }
          break;
        }
      }
    }
    const Interval kp1(static_cast<double>(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
      xs_[i * stride + k + 1] = V(outs[i], k) / kp1;
      if (variational)
        for (std::size_t j = 0; j < n; ++j) dxs_[(i * stride + k + 1) * n + j] = G(outs[i], k)[j] / kp1;
    }
  }
}

}  // namespace qhb
