#include "property_checks.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qhb/blowup.hpp"
#include "qhb/compact.hpp"
#include "qhb/field.hpp"
#include "qhb/lyapunov.hpp"
#include "qhb/problems.hpp"
#include "support.hpp"

namespace qhb::testing {

namespace {

std::string show(const Interval& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string show(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

const std::vector<std::vector<int>>& chart_types() {
  static const std::vector<std::vector<int>> types{{1, 2}, {1, 1}, {2, 2, 1, 1}};
  return types;
}

// Point with p(x) close to rho, from a random direction.
std::vector<double> point_at_level(Gen& gen, const QHType& t, double rho) {
  std::vector<double> z(t.n());
  double pz = 0;
  while (!(pz > 1e-3)) {
    for (double& v : z) v = gen.uniform(-1, 1);
    pz = p_functional(IntervalVector::point(z), t).p.mid();
  }
  std::vector<double> x(t.n());
  for (std::size_t i = 0; i < t.n(); ++i) x[i] = std::pow(rho / pz, static_cast<double>(t.alpha[i])) * z[i];
  return x;
}

}  // namespace

PropertyReport interval_containment(int cases, std::uint64_t seed) {
  PropertyReport rep{"interval containment (exact rational oracle)"};
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) {
    const double scale = std::pow(10.0, gen.uniform(-6, 6));
    Interval a = gen.interval(scale), b = gen.interval(scale);
    const double pa = gen.member(a), pb = gen.member(b);
    const mpq_class qa = exact(pa), qb = exact(pb);
    const int op = gen.integer(0, 6);
    ++rep.cases;
    std::string what;
    bool ok = true;
    switch (op) {
      case 0: ok = encloses(a + b, qa + qb), what = "+"; break;
      case 1: ok = encloses(a - b, qa - qb), what = "-"; break;
      case 2: ok = encloses(a * b, qa * qb), what = "*"; break;
      case 3:
        what = "/";
        if (b.contains_zero()) {
          try {
            (void)(a / b);
            ok = false;
          } catch (const std::domain_error&) {
          }
        } else {
          ok = encloses(a / b, qa / qb);
        }
        break;
      case 4: ok = encloses(sqr(a), qa * qa), what = "sqr"; break;
      case 5: {
        const unsigned n = static_cast<unsigned>(gen.integer(0, 9));
        mpq_class q = 1;
        for (unsigned i = 0; i < n; ++i) q *= qa;
        Interval r = pow_int(a, n);
        ok = encloses(r, q) && (n % 2 == 1 || r.lo() >= 0);
        what = "pow_int " + std::to_string(n);
        break;
      }
      default: {
        Interval nn = abs(a);
        const double p = gen.member(nn);
        Interval r = sqrt(nn);
        const mpq_class lo = exact(r.lo()), hi = exact(r.hi());
        ok = r.lo() >= 0 && lo * lo <= exact(p) && exact(p) <= hi * hi;
        what = "sqrt";
        break;
      }
    }
    if (!ok) rep.fail(what + " on " + show(a) + ", " + show(b));
  }
  return rep;
}

PropertyReport interval_monotonicity(int cases, std::uint64_t seed) {
  PropertyReport rep{"interval inclusion monotonicity"};
  Gen gen(seed);
  auto widen = [&gen](const Interval& x) {
    const double s = std::fmax(1.0, x.mag());
    const double dl = gen.coin() ? 0.0 : s * std::pow(10.0, gen.uniform(-14, 0));
    const double dh = gen.coin() ? 0.0 : s * std::pow(10.0, gen.uniform(-14, 0));
    return Interval(rnd::sub_down(x.lo(), dl), rnd::add_up(x.hi(), dh));
  };
  for (int c = 0; c < cases; ++c) {
    const double scale = std::pow(10.0, gen.uniform(-3, 3));
    Interval a = gen.interval(scale), b = gen.interval(scale);
    Interval A = widen(a), B = widen(b);
    const int op = gen.integer(0, 7);
    ++rep.cases;
    Interval inner, outer;
    switch (op) {
      case 0: inner = a + b, outer = A + B; break;
      case 1: inner = a - b, outer = A - B; break;
      case 2: inner = a * b, outer = A * B; break;
      case 3:
        while (B.contains_zero()) {
          b = gen.interval(scale);
          B = widen(b);
        }
        inner = a / b, outer = A / B;
        break;
      case 4: inner = sqr(a), outer = sqr(A); break;
      case 5: {
        const unsigned n = static_cast<unsigned>(gen.integer(0, 7));
        inner = pow_int(a, n), outer = pow_int(A, n);
        break;
      }
      case 6: inner = abs(a), outer = abs(A); break;
      default: inner = sqrt(abs(a)), outer = sqrt(hull(abs(a), abs(A))); break;
    }
    if (!outer.contains(inner))
      rep.fail("op " + std::to_string(op) + ": " + show(inner) + " not in " + show(outer));
  }
  return rep;
}

PropertyReport chart_round_trips(int cases_per_type, std::uint64_t seed) {
  PropertyReport rep{"compactification round trips"};
  Gen gen(seed);
  for (const auto& alpha : chart_types()) {
    const QHType t = make_type(alpha, 1);
    const std::size_t n = t.n();
    for (int c = 0; c < cases_per_type; ++c) {
      try {
        // T then S.
        std::vector<double> y(n);
        for (double& v : y) v = gen.integer(0, 19) == 0 ? 0.0 : gen.log_uniform(-3, 3);
        const IntervalVector Y = IntervalVector::point(y);
        ++rep.cases;
        if (!para_inverse(para_forward(Y, t).x, t).contains(Y)) rep.fail("S(T(y)) misses y, y0 = " + show(y[0]));
        // S then T.
        const IntervalVector X = IntervalVector::point(point_at_level(gen, t, gen.uniform(0, 0.99)));
        ++rep.cases;
        if (!para_forward(para_inverse(X, t), t).x.contains(X)) rep.fail("T(S(x)) misses x, x0 = " + show(X[0]));
        // Directional chart 1, either sign.
        const int sign = gen.coin() ? 1 : -1;
        const CompactChart ch = CompactChart::directional(t, 1, sign);
        std::vector<double> yd = y;
        yd[0] = sign * std::fabs(gen.log_uniform(-3, 3));
        const IntervalVector YD = IntervalVector::point(yd);
        const DirPoint dp = dir_forward(YD, ch);
        ++rep.cases;
        if (!dir_inverse(dp.s, dp.x, ch).contains(YD)) rep.fail("directional y round trip, y0 = " + show(yd[0]));
        std::vector<double> sx(n);
        sx[0] = gen.uniform(1e-3, 2.0);
        for (std::size_t i = 1; i < n; ++i) sx[i] = gen.uniform(-3, 3);
        const IntervalVector SX = IntervalVector::point(sx);
        const DirPoint back = dir_forward(dir_inverse(SX, ch), ch);
        ++rep.cases;
        if (!back.state().contains(SX)) rep.fail("directional (s, x) round trip, s = " + show(sx[0]));
      } catch (const std::exception& e) {
        ++rep.cases;
        rep.fail(std::string("exception: ") + e.what());
      }
    }
  }
  return rep;
}

PropertyReport kappa_residual(int cases_per_type, std::uint64_t seed) {
  PropertyReport rep{"kappa residual F_y(kappa) encloses 0"};
  Gen gen(seed);
  for (const auto& alpha : chart_types()) {
    const QHType t = make_type(alpha, 1);
    for (int c = 0; c < cases_per_type; ++c) {
      std::vector<double> y(t.n());
      for (double& v : y) v = gen.log_uniform(-4, 4);
      const IntervalVector Y = IntervalVector::point(y);
      ++rep.cases;
      try {
        const Interval kappa = para_forward(Y, t).kappa;
        const Interval F = pow_int(kappa, 2 * t.c) - pow_int(kappa, 2 * t.c - 1) - p_pow2c(Y, t);
        if (!F.contains_zero()) rep.fail("F_y(kappa) = " + show(F) + " at y0 = " + show(y[0]));
      } catch (const std::exception& e) {
        rep.fail(std::string("exception: ") + e.what());
      }
    }
  }
  return rep;
}

PropertyReport horizon_residual_all(int cases_per_problem, std::uint64_t seed) {
  PropertyReport rep{"horizon residual encloses 0"};
  Gen gen(seed);
  const std::vector<ProblemSpec> problems{make_kk_simple(), make_kk(), make_fvks(4, 4)};
  for (const ProblemSpec& p : problems) {
    const QHType& t = p.model.type();
    const DesingularizedField g = desing_para(p.model);
    for (int c = 0; c < cases_per_problem; ++c) {
      const double rho = gen.integer(0, 9) == 0 ? 1.0 : gen.uniform(0, 1);
      const IntervalVector X = IntervalVector::point(point_at_level(gen, t, rho));
      ++rep.cases;
      const Interval r = horizon_residual(g, X);
      if (!r.contains_zero()) rep.fail(p.id + ": residual " + show(r) + " at rho = " + show(rho));
    }
  }
  return rep;
}

PropertyReport symmetry_kk_simple(int cases, std::uint64_t seed) {
  PropertyReport rep{"kk-simple symmetry g(iota x) = (-1)^(k+alpha) g(x)"};
  Gen gen(seed);
  const ProblemSpec p = make_kk_simple();
  const QHType& t = p.model.type();
  const DesingularizedField g = desing_para(p.model);
  for (int c = 0; c < cases; ++c) {
    const std::vector<double> x = point_at_level(gen, t, gen.uniform(0, 1));
    std::vector<double> ix = x;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (t.alpha[i] % 2 == 1) ix[i] = -x[i];
    const IntervalVector gx = g.eval_g(IntervalVector::point(x));
    const IntervalVector gix = g.eval_g(IntervalVector::point(ix));
    ++rep.cases;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const bool flip = (t.order_k + t.alpha[i]) % 2 == 1;
      const Interval expect = flip ? -gx[i] : gx[i];
      if (!gix[i].overlaps(expect)) rep.fail("component " + std::to_string(i) + ": " + show(gix[i]) + " vs " + show(expect));
    }
  }
  return rep;
}

PropertyReport lyapunov_decrease(int cases_per_cert, std::uint64_t seed) {
  PropertyReport rep{"Lyapunov decrease on certified domains"};
  Gen gen(seed);
  struct Case {
    ProblemSpec problem;
    std::string chart;
  };
  std::vector<Case> cases{{make_kk_simple(), "para"}, {make_kk(), "para"}, {make_fvks(2, 4), "dir:1:+"}};
  for (const Case& cs : cases) {
    const CompactChart chart = CompactChart::parse(cs.chart, cs.problem.model.type());
    InitialData init;
    if (cs.problem.default_x0) init.x0 = cs.problem.default_x0;
    else init.y0 = cs.problem.default_y0;
    const BlowUpCertificate bc = validate_blowup(cs.problem, chart, init);
    if (!bc.cert) {
      ++rep.cases;
      rep.fail(cs.problem.id + ": no certificate (" + bc.stage + ")");
      continue;
    }
    const LyapunovCert& cert = *bc.cert;
    const DesingularizedField g = desingularize(cs.problem.model, chart);
    const Eigen::VectorXd center = cert.x_star.mid();
    const double r = cert.domain_radius;
    for (int c = 0; c < cases_per_cert; ++c) {
      Eigen::VectorXd d(center.size());
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = gen.uniform(-1, 1);
      d *= r * std::pow(10.0, gen.uniform(-3, 0)) / d.cwiseAbs().maxCoeff();
      ++rep.cases;
      const Interval rate = lyapunov_rate(cert, g, IntervalVector::point(Eigen::VectorXd(center + d)));
      if (!(rate.hi() < 0)) rep.fail(cs.problem.id + ": rate " + show(rate) + " at |d| = " + show(d.norm()));
    }
  }
  return rep;
}

PropertyReport tail_vs_quadrature(int cases, std::uint64_t seed) {
  PropertyReport rep{"k = 1 tail closed form vs rational quadrature"};
  Gen gen(seed);
  const int panels = 400;
  for (int c = 0; c < cases; ++c) {
    // a and e have short mantissas so that c1 = a^2 and eps = e^2 are exact.
    const double a = gen.integer(1 << 18, 1 << 22) / double(1 << 20);
    const double e = gen.integer(1, 1 << 20) / double(1 << 20);
    const double cn = gen.uniform(0.01, 2.0);
    const int terms = gen.integer(1, 4);
    BoundCoefficients coeffs;
    std::vector<double> norms;
    for (int j = 0; j < terms; ++j) {
      norms.push_back(gen.uniform(0, 5));
      coeffs.norms.emplace_back(norms.back());
    }
    LyapunovCert cert;
    cert.c1 = Interval(a * a);
    cert.c_tildeN = Interval(cn);
    const Interval closed = tmax_tail_para(cert, coeffs, 1, e * e);

    // With L = u^2: (1/(cn a^2)) int_0^e 2 sum_m n_m a^m u^{m-1} du; the
    // integrand is nondecreasing, so left and right sums bracket it.
    auto integrand = [&](const mpq_class& u) {
      mpq_class s = 0, am = 1, um = 1;
      for (int m = 1; m <= terms; ++m) {
        am *= exact(a);
        if (m > 1) um *= u;
        s += 2 * exact(norms[static_cast<std::size_t>(m - 1)]) * am * um;
      }
      return s;
    };
    const mpq_class h = exact(e) / panels;
    mpq_class lower = 0, upper = 0;
    mpq_class prev = integrand(0);
    for (int i = 1; i <= panels; ++i) {
      mpq_class cur = integrand(h * i);
      lower += prev * h;
      upper += cur * h;
      prev = cur;
    }
    const mpq_class scale = exact(cn) * exact(a) * exact(a);
    lower /= scale;
    upper /= scale;
    ++rep.cases;
    if (!(exact(closed.lo()) <= upper && lower <= exact(closed.hi())))
      rep.fail("closed form " + show(closed) + " vs quadrature [" + show(lower.get_d()) + ", " + show(upper.get_d()) + "]");
  }
  return rep;
}

}  // namespace qhb::testing
