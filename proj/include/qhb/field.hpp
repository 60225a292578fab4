#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "qhb/compact.hpp"
#include "qhb/poly.hpp"
#include "qhb/tape.hpp"

namespace qhb {

// Polynomial vector field f on R^n declared asymptotically quasi-homogeneous
// of the given type. Construction derives f~ (quasi-parabolic scaling) and
// rejects fields with residual positive powers of kappa.
class VectorFieldModel {
 public:
  VectorFieldModel(QHType type, std::vector<Poly> f);

  std::size_t n() const { return type_.n(); }
  const QHType& type() const { return type_; }
  const std::vector<Poly>& f() const { return f_; }
  // f~_j as polynomials in (x_1, ..., x_n, w) with w = 1/kappa.
  const std::vector<Poly>& f_tilde() const { return f_tilde_; }

  IntervalVector eval_f(const IntervalVector& y) const;
  Eigen::VectorXd eval_f(const Eigen::VectorXd& y) const;
  IntervalMatrix eval_Df(const IntervalVector& y) const;
  IntervalVector eval_f_tilde(const IntervalVector& x, const Interval& w) const;
  // Quasi-homogeneous part: f~ at w = 0.
  IntervalVector eval_qh_part(const IntervalVector& y) const;
  // f^_j in the directional chart, as polynomials in (s, x) with x the
  // remaining n-1 coordinates.
  std::vector<Poly> f_hat(const CompactChart& chart) const;

 private:
  QHType type_;
  std::vector<Poly> f_;
  std::vector<std::vector<Poly>> df_;
  std::vector<Poly> f_tilde_;
};

// Right-hand side of a desingularized system together with dt/dtau, stored
// as tapes so that values, Jacobians and Taylor series share one definition.
class DesingularizedField {
 public:
  std::size_t dim() const { return dim_; }
  const std::optional<CompactChart>& chart() const { return chart_; }

  IntervalVector eval_g(const IntervalVector& x) const { return g_.eval(x); }
  IntervalVector eval_g_precise(const IntervalVector& x) const { return g_.eval_precise(x); }
  Eigen::VectorXd eval_g(const Eigen::VectorXd& x) const { return g_.eval(x); }
  IntervalMatrix eval_Dg(const IntervalVector& x) const { return g_.jacobian(x); }
  Eigen::MatrixXd eval_Dg(const Eigen::VectorXd& x) const { return g_.jacobian(x); }
  Interval dt_dtau(const IntervalVector& x) const { return dt_.eval(x)[0]; }
  double dt_dtau(const Eigen::VectorXd& x) const { return dt_.eval(x)(0); }
  // Quasi-parabolic only: sum_j beta_j x_j^{2 beta_j - 1} f~_j(x).
  Interval normal_rate(const IntervalVector& x) const;

  const Tape& g_tape() const { return g_; }
  // (x, t) -> (g(x), dt/dtau(x)); the t input is unused.
  const Tape& augmented_tape() const { return aug_; }

  // Generic field from polynomials, without a chart (test and utility use).
  static DesingularizedField from_polys(const std::vector<Poly>& g, const Poly& dt_dtau);

 private:
  friend DesingularizedField desing_para(const VectorFieldModel& model);
  friend DesingularizedField desing_dir(const VectorFieldModel& model, const CompactChart& chart);

  std::size_t dim_ = 0;
  std::optional<CompactChart> chart_;
  Tape g_, dt_, aug_;
  std::optional<Tape> normal_;
};

DesingularizedField desing_para(const VectorFieldModel& model);
DesingularizedField desing_dir(const VectorFieldModel& model, const CompactChart& chart);
DesingularizedField desingularize(const VectorFieldModel& model, const CompactChart& chart);

// <grad(1 - p^{2c}), g(x)> + (1/c)(sum_j beta_j x_j^{2beta_j-1} f~_j)(1 - p^{2c});
// encloses zero for a correct quasi-parabolic field.
Interval horizon_residual(const DesingularizedField& g, const IntervalVector& x);

}  // namespace qhb
