#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "qhb/interval.hpp"
#include "qhb/linalg.hpp"
#include "qhb/poly.hpp"

namespace qhb {

template <class S>
S square(const S& x) {
  if constexpr (std::is_same_v<S, Interval>) return sqr(x);
  else return x * x;
}

enum class Op : std::uint8_t { Var, Const, Add, Sub, Mul, Sqr, Neg, Scale };

struct Node {
  Op op;
  std::uint32_t a = 0;  // operand, variable index, or constant index
  std::uint32_t b = 0;  // second operand or constant index for Scale
};

// Straight-line polynomial program: the shared representation of every
// desingularized field. Evaluates over doubles, intervals, interval
// Jacobians and interval Taylor series.
class Tape {
 public:
  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Interval>& constants() const { return consts_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }

  IntervalVector eval(const IntervalVector& x) const;
  Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
  IntervalMatrix jacobian(const IntervalVector& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  // Interval evaluation carried out in multiple precision, rounded outward.
  IntervalVector eval_precise(const IntervalVector& x) const;

  // Generic evaluation; lift converts an interval constant into S.
  template <class S, class Lift>
  void eval_generic(std::span<const S> x, std::span<S> out, Lift lift) const {
    std::vector<S> w(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& nd = nodes_[i];
      switch (nd.op) {
        case Op::Var: w[i] = x[nd.a]; break;
        case Op::Const: w[i] = lift(consts_[nd.a]); break;
        case Op::Add: w[i] = w[nd.a] + w[nd.b]; break;
        case Op::Sub: w[i] = w[nd.a] - w[nd.b]; break;
        case Op::Mul: w[i] = w[nd.a] * w[nd.b]; break;
        case Op::Sqr: w[i] = square(w[nd.a]); break;
        case Op::Neg: w[i] = -w[nd.a]; break;
        case Op::Scale: w[i] = lift(consts_[nd.b]) * w[nd.a]; break;
      }
    }
    for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = w[outputs_[k]];
  }

 private:
  friend class TapeBuilder;
  std::size_t num_vars_ = 0;
  std::vector<Node> nodes_;
  std::vector<Interval> consts_;
  std::vector<std::uint32_t> outputs_;
};

class TapeBuilder {
 public:
  using Ref = std::uint32_t;

  explicit TapeBuilder(std::size_t num_vars);

  Ref var(std::size_t i) const { return var_refs_.at(i); }
  Ref constant(const Interval& c);
  Ref add(Ref a, Ref b);
  Ref sub(Ref a, Ref b);
  Ref mul(Ref a, Ref b);
  Ref sqr(Ref a);
  Ref neg(Ref a);
  Ref scale(const Interval& c, Ref a);
  Ref pow(Ref a, unsigned n);
  // Emits p with its variables bound to the given references.
  Ref poly(const Poly& p, std::span<const Ref> vars);

  void output(Ref r) { tape_.outputs_.push_back(r); }
  Tape finish() { return std::move(tape_); }

 private:
  Ref push(Node n);
  bool is_const(Ref r, double v) const;

  Tape tape_;
  std::vector<Ref> var_refs_;
  std::map<std::pair<Ref, unsigned>, Ref> pow_cache_;
};

// Taylor coefficients of the solution of the autonomous ODE x' = F(x), with F
// given by a tape whose inputs and outputs have equal dimension. Optionally
// propagates first-order sensitivities with respect to x(0).
class TaylorEngine {
 public:
  explicit TaylorEngine(const Tape& tape);

  void compute(const IntervalVector& x0, int order, bool variational);

  int order() const { return order_; }
  std::size_t dim() const { return n_; }
  // k-th Taylor coefficient of component i.
  const Interval& coeff(std::size_t i, int k) const { return xs_[i * (order_ + 1) + k]; }
  // d coeff(i, k) / d x0_j.
  const Interval& dcoeff(std::size_t i, std::size_t j, int k) const {
    return dxs_[(i * (order_ + 1) + k) * n_ + j];
  }

 private:
  const Tape* tape_;
  std::size_t n_;
  int order_ = 0;
  std::vector<Interval> xs_, dxs_;
  std::vector<Interval> val_, grad_;
};

}  // namespace qhb
