#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qhb/interval.hpp"
#include "qhb/linalg.hpp"

namespace qhb {

struct QHType {
  std::vector<unsigned> alpha;
  std::vector<unsigned> beta;
  unsigned c = 1;
  unsigned order_k = 1;

  std::size_t n() const { return alpha.size(); }
};

// c = lcm(alpha), beta_i = c / alpha_i. Throws std::invalid_argument for
// nonpositive weights or order.
QHType make_type(const std::vector<int>& alpha, int order_k);

struct CompactChart {
  enum class Kind { QuasiParabolic, Directional };

  Kind kind = Kind::QuasiParabolic;
  std::size_t index = 0;  // 1-based chart index for directional charts
  int sign = 1;
  QHType type;

  static CompactChart para(const QHType& t);
  static CompactChart directional(const QHType& t, std::size_t index, int sign);
  // Parses "para" or "dir:<i>:<+|->".
  static CompactChart parse(const std::string& text, const QHType& t);

  bool is_para() const { return kind == Kind::QuasiParabolic; }
  std::string label() const;
};

struct PValue {
  Interval p;
  Interval p2c;  // p^{2c}, computed without the root
};

PValue p_functional(const IntervalVector& x, const QHType& t);
Interval p_pow2c(const IntervalVector& x, const QHType& t);

struct ParaPoint {
  IntervalVector x;
  Interval kappa;
};

// Throws VerificationError when the kappa root cannot be validated or the
// image is not certified to lie in p(x) < 1.
ParaPoint para_forward(const IntervalVector& y, const QHType& t);
// Throws std::domain_error when p(x)^{2c} is not certified below 1.
IntervalVector para_inverse(const IntervalVector& x, const QHType& t);

struct DirPoint {
  Interval s;
  IntervalVector x;  // the n-1 remaining coordinates, in original order

  IntervalVector state() const;  // (s, x)
};

// Throws std::domain_error when y_i has the wrong sign or contains zero.
DirPoint dir_forward(const IntervalVector& y, const CompactChart& chart);
// Throws std::domain_error when s is not certified positive.
IntervalVector dir_inverse(const Interval& s, const IntervalVector& x, const CompactChart& chart);
IntervalVector dir_inverse(const IntervalVector& state, const CompactChart& chart);

// Maps a compactified state back to the original coordinates for any chart.
IntervalVector chart_inverse(const IntervalVector& state, const CompactChart& chart);
// Maps original coordinates into the chart's state space.
IntervalVector chart_forward(const IntervalVector& y, const CompactChart& chart);

}  // namespace qhb
