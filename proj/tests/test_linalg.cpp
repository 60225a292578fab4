#include <doctest.h>

#include <Eigen/Dense>

#include "qhb/linalg.hpp"

using namespace qhb;

namespace {

IntervalMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size(), m = rows.begin()->size();
  IntervalMatrix a(n, m);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) a(i, j++) = Interval(v);
    ++i;
  }
  return a;
}

}  // namespace

TEST_CASE("verify_negative_definite examples") {
  NegDefResult a = verify_negative_definite(mat({{-2}}));
  CHECK(a.verified);
  CHECK(a.c_A.contains(2.0));
  CHECK(a.c_A.lo() > 0);

  CHECK_FALSE(verify_negative_definite(mat({{0, 0}, {0, -1}})).verified);

  NegDefResult b = verify_negative_definite(mat({{-4, 1}, {1, -4}}));
  CHECK(b.verified);
  CHECK(b.c_A.contains(3.0));
  CHECK(b.c_A.lo() > 2.9);

  CHECK_FALSE(verify_negative_definite(mat({{1, 0}, {0, -1}})).verified);
}

TEST_CASE("verify_negative_definite handles interval members") {
  IntervalMatrix m = mat({{-4, 1}, {1, -4}});
  m(0, 1) = Interval(0.5, 1.5);
  m(1, 0) = Interval(0.5, 1.5);
  NegDefResult r = verify_negative_definite(m);
  CHECK(r.verified);
  CHECK(r.c_A.lo() <= 2.5);
  CHECK(r.c_A.lo() > 2.0);
  // A member with a nonnegative eigenvalue must fail.
  m(0, 1) = m(1, 0) = Interval(0.5, 4.5);
  CHECK_FALSE(verify_negative_definite(m).verified);
}

TEST_CASE("sym_eig_bounds examples") {
  EigBounds id = sym_eig_bounds(IntervalMatrix::identity(2));
  CHECK(id.lam_min.contains(1.0));
  CHECK(id.lam_max.contains(1.0));

  EigBounds d = sym_eig_bounds(mat({{2, 0}, {0, 5}}));
  CHECK(d.lam_min.contains(2.0));
  CHECK(d.lam_max.contains(5.0));

  EigBounds c = sym_eig_bounds(mat({{2, 1}, {1, 2}}));
  CHECK(c.lam_min.contains(1.0));
  CHECK(c.lam_max.contains(3.0));
  CHECK(c.lam_min.width() < 1e-12);
  CHECK(c.lam_max.width() < 1e-12);
}

TEST_CASE("enclose_inverse contains the exact inverse") {
  Eigen::MatrixXd a(2, 2);
  a << 4, 1, 2, 3;
  auto inv = enclose_inverse(a);
  REQUIRE(inv.has_value());
  // Exact inverse is [[3, -1], [-2, 4]] / 10.
  CHECK((*inv)(0, 0).contains(0.3));
  CHECK((*inv)(0, 1).contains(-0.1));
  CHECK((*inv)(1, 0).contains(-0.2));
  CHECK((*inv)(1, 1).contains(0.4));
  Eigen::MatrixXd s(2, 2);
  s << 1, 2, 2, 4;
  CHECK_FALSE(enclose_inverse(s).has_value());
}

TEST_CASE("vector and matrix products enclose pointwise results") {
  IntervalVector x{Interval(1, 2), Interval(-1, 1)};
  IntervalMatrix m = mat({{1, 2}, {3, 4}});
  IntervalVector y = m * x;
  CHECK(y[0].contains(Interval(-1, 4)));
  CHECK(y[1].contains(Interval(-1, 10)));
  CHECK(x.norm2().contains(Interval(1, std::sqrt(5.0))));
  CHECK(quad_form(mat({{2, 0}, {0, 3}}), IntervalVector{Interval(1.0), Interval(2.0)}).contains(14.0));
  IntervalMatrix ns = mat({{1, 2}, {4, 3}});
  IntervalMatrix s = symmetrize(ns);
  CHECK(s(0, 1).contains(3.0));
  CHECK(s(1, 0).contains(3.0));
}
