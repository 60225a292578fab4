#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qhb/field.hpp"
#include "qhb/problems.hpp"
#include "support.hpp"

using namespace qhb;
using qhb::testing::encloses;
using qhb::testing::exact;
using qhb::testing::Gen;

TEST_CASE("kk-simple: origin is an equilibrium") {
  const DesingularizedField g = desing_para(make_kk_simple().model);
  IntervalVector v = g.eval_g(IntervalVector{Interval(0.0), Interval(0.0)});
  CHECK(v[0] == Interval(0.0));
  CHECK(v[1] == Interval(0.0));
}

TEST_CASE("kk-simple: desingularized field matches the closed form") {
  // g1 = (x1^2 - x2) F - x1 G, g2 = x1^3 F / 3 - 2 x2 G with F = (1 + 3 p^4)/4
  // and G = x1^3 (x1^2 - x2) + x1^3 x2 / 6, in exact rationals.
  const DesingularizedField g = desing_para(make_kk_simple().model);
  Gen gen(21);
  for (int c = 0; c < 200; ++c) {
    const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1);
    const mpq_class x1 = exact(a), x2 = exact(b);
    const mpq_class p4 = x1 * x1 * x1 * x1 + x2 * x2;
    const mpq_class F = (1 + 3 * p4) / 4;
    const mpq_class G = x1 * x1 * x1 * (x1 * x1 - x2) + x1 * x1 * x1 * x2 / 6;
    const mpq_class g1 = (x1 * x1 - x2) * F - x1 * G;
    const mpq_class g2 = x1 * x1 * x1 * F / 3 - 2 * x2 * G;
    const IntervalVector v = g.eval_g(IntervalVector{Interval(a), Interval(b)});
    CHECK(encloses(v[0], g1));
    CHECK(encloses(v[1], g2));
    // dt/dtau = (1 - p^4)(1 - (3/4)(1 - p^4)).
    const mpq_class w = 1 - p4;
    CHECK(encloses(g.dt_dtau(IntervalVector{Interval(a), Interval(b)}), w * (1 - mpq_class(3, 4) * w)));
  }
}

TEST_CASE("kk: desingularized field carries the kappa^-1 terms") {
  KKConstants k = kk_default_constants();
  k.s = Interval(0.5);
  k.c1 = Interval(1.25);
  k.c2 = Interval(-0.5);
  const DesingularizedField g = desing_para(make_kk(k).model);
  Gen gen(22);
  for (int c = 0; c < 200; ++c) {
    const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1);
    const mpq_class x1 = exact(a), x2 = exact(b), s(1, 2), c1(5, 4), c2(-1, 2);
    const mpq_class p4 = x1 * x1 * x1 * x1 + x2 * x2;
    const mpq_class w = 1 - p4;
    const mpq_class f1 = x1 * x1 - x2 - s * w * x1 - w * w * c1;
    const mpq_class f2 = x1 * x1 * x1 / 3 - w * w * x1 - s * w * x2 - c2 * w * w * w;
    const mpq_class F = (1 + 3 * p4) / 4;
    const mpq_class G = x1 * x1 * x1 * f1 + x2 * f2 / 2;
    const IntervalVector v = g.eval_g(IntervalVector{Interval(a), Interval(b)});
    CHECK(encloses(v[0], f1 * F - x1 * G));
    CHECK(encloses(v[1], f2 * F - 2 * x2 * G));
  }
}

TEST_CASE("kk: zero constants leave kk-simple plus the linear -u term") {
  KKConstants k = kk_default_constants();
  k.s = k.c1 = k.c2 = Interval(0.0);
  const ProblemSpec a = make_kk(k), b = make_kk_simple();
  Gen gen(23);
  for (int c = 0; c < 50; ++c) {
    Eigen::VectorXd y(2);
    y << gen.uniform(-5, 5), gen.uniform(-5, 5);
    const Eigen::VectorXd diff = a.model.eval_f(y) - b.model.eval_f(y);
    CHECK(diff(0) == 0.0);
    CHECK(diff(1) == doctest::Approx(-y(0)).epsilon(1e-12));
  }
}

TEST_CASE("kk-simple: g encloses zero on the displayed sink enclosure") {
  const DesingularizedField g = desing_para(make_kk_simple().model);
  const IntervalVector box{Interval(parse_down("0.98913699589497727"), parse_up("0.98913699589497773")),
                           Interval(parse_down("0.20675855700518036"), parse_up("0.2067585570051809"))};
  const IntervalVector v = g.eval_g(box);
  CHECK(v[0].contains_zero());
  CHECK(v[1].contains_zero());
}

TEST_CASE("fvks directional chart: s-equation closed form") {
  Gen gen(24);
  for (int d : {2, 3, 4}) {
    const int N = 4;
    const ProblemSpec p = make_fvks(d, N);
    const CompactChart ch = CompactChart::directional(p.model.type(), 1, 1);
    const DesingularizedField g = desing_dir(p.model, ch);
    const double h = 1.0 / N;
    const double r1 = h / 2, r32 = h;
    for (int c = 0; c < 50; ++c) {
      // State (s, x_2..x_N, y_1..y_N).
      Eigen::VectorXd z(2 * N);
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = gen.uniform(-1, 1);
      z(0) = gen.uniform(0, 1);
      const double s = z(0), x2 = z(1), y1 = z(N), y2 = z(N + 1);
      const double expect = -s * std::pow(r1, 1 - d) / (2 * h * h) * std::pow(r32, d - 1) * (s * (x2 - 1) - (y2 - y1));
      const double got = g.eval_g(z)(0);
      CHECK(std::fabs(got - expect) <= 1e-12 * (1 + std::fabs(expect)));
      CHECK(g.dt_dtau(z) == doctest::Approx(s));
    }
  }
}

TEST_CASE("directional fields leave s = 0 invariant") {
  Gen gen(25);
  struct Case {
    ProblemSpec p;
    const char* chart;
  };
  for (const Case& cs : {Case{make_fvks(3, 4), "dir:1:+"}, Case{make_kk(), "dir:2:+"}, Case{make_kk_simple(), "dir:1:-"}}) {
    const DesingularizedField g = desing_dir(cs.p.model, CompactChart::parse(cs.chart, cs.p.model.type()));
    for (int c = 0; c < 50; ++c) {
      IntervalVector z(g.dim());
      for (std::size_t i = 1; i < z.size(); ++i) z[i] = Interval(gen.uniform(-2, 2));
      CHECK(g.eval_g(z)[0] == Interval(0.0));
    }
  }
}

TEST_CASE("one-dimensional directional chart reduces to s' = -s") {
  const QHType t = make_type({1}, 1);
  Poly y = Poly::var(1, 0);
  const VectorFieldModel m(t, {y * y});
  const DesingularizedField g = desing_dir(m, CompactChart::directional(t, 1, 1));
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(g.eval_g(IntervalVector{Interval(s)})[0].contains(-s));
    CHECK(g.dt_dtau(IntervalVector{Interval(s)}).contains(s));
  }
}

TEST_CASE("model rejects fields above the declared order") {
  const QHType t = make_type({1, 2}, 1);
  Poly u = Poly::var(2, 0), v = Poly::var(2, 1);
  CHECK_THROWS_AS(VectorFieldModel(t, {pow(u, 3), v}), std::invalid_argument);
  CHECK_NOTHROW(VectorFieldModel(t, {u * u - v, u * v}));
}

TEST_CASE("f tilde consistency: kappa^{k+alpha} f~(x) encloses f(y)") {
  Gen gen(26);
  for (const ProblemSpec& p : {make_kk_simple(), make_kk(), make_fvks(2, 3)}) {
    const QHType& t = p.model.type();
    for (int c = 0; c < 50; ++c) {
      IntervalVector y(t.n());
      for (auto& v : y) v = Interval(gen.uniform(-3, 3));
      const ParaPoint pp = para_forward(y, t);
      const IntervalVector ft = p.model.eval_f_tilde(pp.x, Interval(1.0) / pp.kappa);
      const IntervalVector f = p.model.eval_f(y);
      for (std::size_t j = 0; j < t.n(); ++j)
        CHECK((pow_int(pp.kappa, t.order_k + t.alpha[j]) * ft[j]).overlaps(f[j]));
    }
  }
}

TEST_CASE("horizon_residual examples") {
  const DesingularizedField g = desing_para(make_kk_simple().model);
  CHECK(horizon_residual(g, IntervalVector{Interval(1.0), Interval(0.0)}).contains_zero());
  CHECK(horizon_residual(g, IntervalVector{Interval(0.3), Interval(0.2)}).contains_zero());
  const DesingularizedField gf = desing_para(make_fvks(4, 4).model);
  Gen gen(27);
  for (int c = 0; c < 20; ++c) {
    IntervalVector x(8);
    for (auto& v : x) v = Interval(gen.uniform(-0.5, 0.5));
    CHECK(horizon_residual(gf, x).contains_zero());
  }
  const DesingularizedField gd = desing_dir(make_kk_simple().model, CompactChart::parse("dir:1:+", make_type({1, 2}, 1)));
  CHECK_THROWS_AS(horizon_residual(gd, IntervalVector{Interval(0.5), Interval(0.0)}), std::invalid_argument);
}
