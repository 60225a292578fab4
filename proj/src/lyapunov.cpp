#include "qhb/lyapunov.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>

#include "qhb/compact.hpp"
#include "qhb/log.hpp"

namespace qhb {

namespace {

struct VecMap {
  std::function<IntervalVector(const IntervalVector&)> F;
  std::function<IntervalMatrix(const IntervalVector&)> DF;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> DF_point;
};

struct KrawczykResult {
  IntervalVector unique_box;  // box on which the zero is unique
  IntervalVector enclosure;   // refined enclosure of the zero
};

IntervalVector around(const Eigen::VectorXd& c, double r) {
  IntervalVector x(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    x[static_cast<std::size_t>(i)] = Interval(rnd::sub_down(c(i), r), rnd::add_up(c(i), r));
  return x;
}

IntervalVector krawczyk_image(const VecMap& map, const Eigen::MatrixXd& C, const IntervalVector& X,
                              const Eigen::VectorXd& m) {
  const std::size_t n = X.size();
  const IntervalVector mI = IntervalVector::point(m);
  IntervalMatrix R = IntervalMatrix::identity(n) - C * map.DF(X);
  return mI - C * map.F(mI) + R * (X - mI);
}

std::optional<KrawczykResult> krawczyk(const VecMap& map, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd D = map.DF_point(x);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::MatrixXd C = lu.inverse();
  double delta = 1e-13 * (1.0 + x.cwiseAbs().maxCoeff());
  for (int round = 0; round < 12; ++round, delta *= 10) {
    IntervalVector X = around(x, delta);
    IntervalVector K = krawczyk_image(map, C, X, x);
    if (!X.interior_contains(K)) continue;
    KrawczykResult res{X, K};
    for (int it = 0; it < 40; ++it) {
      const IntervalVector& cur = res.enclosure;
      IntervalVector Kn = krawczyk_image(map, C, cur, cur.mid());
      auto next = intersect(cur, Kn);
      if (!next) throw VerificationError("krawczyk: empty refinement");
      bool shrunk = false;
      for (std::size_t i = 0; i < cur.size(); ++i)
        if ((*next)[i].width() < cur[i].width()) shrunk = true;
      res.enclosure = *next;
      if (!shrunk) break;
    }
    return res;
  }
  return std::nullopt;
}

VecMap field_map(const DesingularizedField& g) {
  return {[&g](const IntervalVector& x) { return g.eval_g_precise(x); },
          [&g](const IntervalVector& x) { return g.eval_Dg(x); },
          [&g](const Eigen::VectorXd& x) { return g.eval_Dg(x); }};
}

// g with component r replaced by 1 - p^{2c}.
VecMap horizon_map(const DesingularizedField& g, const QHType& t, std::size_t r) {
  VecMap m;
  m.F = [&g, t, r](const IntervalVector& x) {
    IntervalVector v = g.eval_g_precise(x);
    v[r] = Interval(1.0) - p_pow2c(x, t);
    return v;
  };
  m.DF = [&g, t, r](const IntervalVector& x) {
    IntervalMatrix D = g.eval_Dg(x);
    for (std::size_t j = 0; j < x.size(); ++j)
      D(r, j) = -(Interval(2.0 * t.beta[j]) * pow_int(x[j], 2 * t.beta[j] - 1));
    return D;
  };
  m.DF_point = [&g, t, r](const Eigen::VectorXd& x) {
    Eigen::MatrixXd D = g.eval_Dg(x);
    for (Eigen::Index j = 0; j < x.size(); ++j)
      D(static_cast<Eigen::Index>(r), j) = -2.0 * t.beta[static_cast<std::size_t>(j)] *
                                           std::pow(x(j), 2 * t.beta[static_cast<std::size_t>(j)] - 1);
    return D;
  };
  return m;
}

// g restricted to s = 0, as a map of the remaining coordinates.
VecMap restricted_map(const DesingularizedField& g) {
  auto lift = [](const IntervalVector& xh) {
    IntervalVector z(xh.size() + 1);
    for (std::size_t i = 0; i < xh.size(); ++i) z[i + 1] = xh[i];
    return z;
  };
  VecMap m;
  m.F = [&g, lift](const IntervalVector& xh) {
    IntervalVector v = g.eval_g_precise(lift(xh));
    return IntervalVector(std::vector<Interval>(v.begin() + 1, v.end()));
  };
  m.DF = [&g, lift](const IntervalVector& xh) {
    IntervalMatrix D = g.eval_Dg(lift(xh));
    IntervalMatrix out(xh.size(), xh.size());
    for (std::size_t i = 0; i < xh.size(); ++i)
      for (std::size_t j = 0; j < xh.size(); ++j) out(i, j) = D(i + 1, j + 1);
    return out;
  };
  m.DF_point = [&g](const Eigen::VectorXd& xh) {
    Eigen::VectorXd z(xh.size() + 1);
    z << 0.0, xh;
    Eigen::MatrixXd D = g.eval_Dg(z);
    return Eigen::MatrixXd(D.bottomRightCorner(xh.size(), xh.size()));
  };
  return m;
}

}  // namespace

std::optional<Eigen::VectorXd> newton_refine(const DesingularizedField& g, const Eigen::VectorXd& x0) {
  Eigen::VectorXd x = x0;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd r = g.eval_g(x);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g.eval_Dg(x));
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::VectorXd dx = lu.solve(r);
    if (!dx.allFinite()) return std::nullopt;
    x -= dx;
    if (dx.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + x.cwiseAbs().maxCoeff())) {
      // A few extra sweeps settle the last bits.
      for (int k = 0; k < 3; ++k) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu2(g.eval_Dg(x));
        x -= lu2.solve(g.eval_g(x));
      }
      return x;
    }
  }
  if (g.eval_g(x).cwiseAbs().maxCoeff() < 1e-12) return x;
  return std::nullopt;
}

IntervalVector validate_equilibrium(const DesingularizedField& g, const Eigen::VectorXd& x_approx,
                                    EquilibriumOptions opts) {
  if (static_cast<std::size_t>(x_approx.size()) != g.dim())
    throw std::invalid_argument("validate_equilibrium: dimension mismatch");
  Eigen::VectorXd x = newton_refine(g, x_approx).value_or(x_approx);
  auto full = krawczyk(field_map(g), x);
  if (!full) throw VerificationError("equilibrium: Krawczyk test failed");
  IntervalVector X = full->enclosure;

  const auto& chart = g.chart();
  if (chart && chart->is_para() && opts.require_horizon) {
    const QHType& t = chart->type;
    std::size_t r = 0;
    double best = -1;
    for (std::size_t j = 0; j < t.n(); ++j) {
      double v = std::pow(std::abs(x(static_cast<Eigen::Index>(j))), 2 * t.beta[j] - 1);
      if (v > best) best = v, r = j;
    }
    auto hz = krawczyk(horizon_map(g, t, r), X.mid());
    if (!hz || hz->enclosure[r].contains_zero() || !full->unique_box.contains(hz->enclosure))
      throw VerificationError("equilibrium: horizon membership not verified");
    auto both = intersect(X, hz->enclosure);
    if (!both) throw VerificationError("equilibrium: inconsistent enclosures");
    X = *both;
  } else if (chart && !chart->is_para()) {
    Eigen::VectorXd xh = X.mid().tail(X.size() - 1);
    if (auto rz = krawczyk(restricted_map(g), xh)) {
      IntervalVector Z(X.size());
      for (std::size_t i = 0; i < rz->enclosure.size(); ++i) Z[i + 1] = rz->enclosure[i];
      if (full->unique_box.contains(Z))
        if (auto both = intersect(X, Z)) X = *both;
    }
  }
  log_info("equilibrium validated, max radius", X.max_rad());
  return X;
}

Eigen::MatrixXd schur_Y(const Eigen::MatrixXd& J) {
  Eigen::RealSchur<Eigen::MatrixXd> rs(J);
  if (rs.info() != Eigen::Success) throw SpectrumNotStable("Schur decomposition failed");
  const Eigen::MatrixXd& T = rs.matrixT();
  // Real parts of the spectrum sit on the diagonal of T (2x2 blocks share theirs).
  for (Eigen::Index i = 0; i < T.rows(); ++i)
    if (!(T(i, i) < 0)) throw SpectrumNotStable("spectrum-not-stable: eigenvalue with nonnegative real part");
  return Eigen::MatrixXd::Identity(J.rows(), J.cols());
}

Eigen::MatrixXd build_Y(const Eigen::MatrixXd& J, double cond_threshold) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success) throw SpectrumNotStable("eigen decomposition failed");
  const Eigen::VectorXcd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (!(lam(i).real() < 0)) throw SpectrumNotStable("spectrum-not-stable: eigenvalue with nonnegative real part");
  const Eigen::MatrixXcd X = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(cond < cond_threshold)) {
    log_info("eigenvector matrix ill-conditioned (", cond, "); using Y = I");
    return schur_Y(J);
  }
  const Eigen::MatrixXcd Xi = X.inverse();
  Eigen::MatrixXd Y = (Xi.adjoint() * Xi).real();
  return 0.5 * (Y + Y.transpose());
}

IntervalVector lyapunov_domain(const LyapunovCert& cert) { return around(cert.x_star.mid(), cert.domain_radius); }

std::optional<LyapunovCert> certify_domain(const DesingularizedField& g, const IntervalVector& x_star,
                                           const Eigen::MatrixXd& Y, RadiusSchedule schedule,
                                           std::optional<double> eps_override) {
  const Eigen::VectorXd c = x_star.mid();
  double w = 0;
  for (std::size_t i = 0; i < x_star.size(); ++i)
    w = std::max({w, rnd::sub_up(x_star[i].hi(), c(static_cast<Eigen::Index>(i))),
                  rnd::sub_up(c(static_cast<Eigen::Index>(i)), x_star[i].lo())});
  const IntervalMatrix YI = IntervalMatrix::point(Y);
  const EigBounds eb = sym_eig_bounds(YI);
  if (!(eb.lam_min.lo() > 0)) return std::nullopt;
  double r = schedule.r0;
  for (int m = 0; m <= schedule.m_max; ++m, r *= 0.5) {
    if (!(r > w)) break;
    LyapunovCert cert{x_star, Y, r, Interval(0.0), eb.lam_min, eb.lam_max, Interval(0.0), Interval(0.0), 0};
    const IntervalMatrix Dg = g.eval_Dg(lyapunov_domain(cert));
    const IntervalMatrix A = Dg.transpose() * YI + YI * Dg;
    const NegDefResult nd = verify_negative_definite(A);
    if (!nd.verified || !(nd.c_A.lo() > 0)) continue;
    cert.c_A = nd.c_A;
    cert.c1 = Interval(1.0) / eb.lam_min;
    cert.c_tildeN = nd.c_A * eb.lam_min / eb.lam_max;
    const double d = rnd::sub_down(r, w);
    cert.eps = rnd::mul_down(eb.lam_min.lo(), rnd::mul_down(d, d));
    if (eps_override) cert.eps = std::min(cert.eps, *eps_override);
    log_info("Lyapunov domain certified: radius", r, "eps", cert.eps);
    return cert;
  }
  return std::nullopt;
}

Interval lyapunov_value(const LyapunovCert& cert, const IntervalVector& x) {
  return quad_form(IntervalMatrix::point(cert.Y), x - cert.x_star);
}

Interval lyapunov_rate(const LyapunovCert& cert, const DesingularizedField& g, const IntervalVector& x) {
  const IntervalVector d = x - cert.x_star;
  return Interval(2.0) * dot(d, cert.Y * g.eval_g(x));
}

}  // namespace qhb
