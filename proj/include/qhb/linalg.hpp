#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include "qhb/interval.hpp"

namespace qhb {

class IntervalVector {
 public:
  IntervalVector() = default;
  explicit IntervalVector(std::size_t n, Interval v = Interval(0.0)) : v_(n, v) {}
  IntervalVector(std::initializer_list<Interval> xs) : v_(xs) {}
  explicit IntervalVector(std::vector<Interval> xs) : v_(std::move(xs)) {}
  static IntervalVector point(const std::vector<double>& xs);
  static IntervalVector point(const Eigen::VectorXd& xs);

  std::size_t size() const { return v_.size(); }
  Interval& operator[](std::size_t i) { return v_[i]; }
  const Interval& operator[](std::size_t i) const { return v_[i]; }
  auto begin() { return v_.begin(); }
  auto end() { return v_.end(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Interval>& data() const { return v_; }
  void push_back(const Interval& x) { v_.push_back(x); }

  Eigen::VectorXd mid() const;
  Eigen::VectorXd rad() const;
  double max_rad() const;
  double max_mag() const;
  // Enclosure of the Euclidean norm over all member vectors.
  Interval norm2() const;
  bool contains(const IntervalVector& o) const;
  bool interior_contains(const IntervalVector& o) const;
  bool contains(const Eigen::VectorXd& x) const;

 private:
  std::vector<Interval> v_;
};

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b);
IntervalVector operator-(const IntervalVector& a, const IntervalVector& b);
IntervalVector operator*(const Interval& s, const IntervalVector& a);
IntervalVector hull(const IntervalVector& a, const IntervalVector& b);
std::optional<IntervalVector> intersect(const IntervalVector& a, const IntervalVector& b);
IntervalVector inflate(const IntervalVector& a, double r);
Interval dot(const IntervalVector& a, const IntervalVector& b);

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols, Interval v = Interval(0.0))
      : rows_(rows), cols_(cols), a_(rows * cols, v) {}
  static IntervalMatrix point(const Eigen::MatrixXd& m);
  static IntervalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Interval& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntervalMatrix transpose() const;
  Eigen::MatrixXd mid() const;
  Eigen::MatrixXd rad() const;
  // Upper bound on the infinity norm over all members.
  double norm_inf() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Interval> a_;
};

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a);
IntervalVector operator*(const IntervalMatrix& a, const IntervalVector& x);
IntervalMatrix operator*(const Eigen::MatrixXd& a, const IntervalMatrix& b);
IntervalMatrix operator*(const IntervalMatrix& a, const Eigen::MatrixXd& b);
IntervalVector operator*(const Eigen::MatrixXd& a, const IntervalVector& x);
// Hull of (M + M^T)/2.
IntervalMatrix symmetrize(const IntervalMatrix& m);
// Interval quadratic form d^T M d.
Interval quad_form(const IntervalMatrix& m, const IntervalVector& d);

// Rigorous enclosure of the inverse of a nonsingular point matrix, or nullopt
// when the approximate inverse cannot be certified.
std::optional<IntervalMatrix> enclose_inverse(const Eigen::MatrixXd& a);

struct ScalarMap {
  std::function<Interval(const Interval&)> f;
  std::function<Interval(const Interval&)> df;
};

// Krawczyk test with up to 50 re-seed/inflation rounds. On success the result
// contains the unique zero of f in the accepted candidate.
std::optional<Interval> krawczyk_scalar(const ScalarMap& f, const Interval& x0,
                                        double target_rel_width = 1e-14);

struct NegDefResult {
  bool verified = false;
  // Encloses -lambda_max over all member matrices; lo is the certified bound.
  Interval c_A = Interval(0.0);
};

NegDefResult verify_negative_definite(const IntervalMatrix& m);

struct EigBounds {
  Interval lam_min;
  Interval lam_max;
};

EigBounds sym_eig_bounds(const IntervalMatrix& m);

}  // namespace qhb
