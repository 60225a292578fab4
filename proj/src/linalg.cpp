#include "qhb/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhb {

IntervalVector IntervalVector::point(const std::vector<double>& xs) {
  IntervalVector v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = Interval(xs[i]);
  return v;
}

IntervalVector IntervalVector::point(const Eigen::VectorXd& xs) {
  IntervalVector v(static_cast<std::size_t>(xs.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Interval(xs(static_cast<Eigen::Index>(i)));
  return v;
}

Eigen::VectorXd IntervalVector::mid() const {
  Eigen::VectorXd m(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) m(static_cast<Eigen::Index>(i)) = v_[i].mid();
  return m;
}

Eigen::VectorXd IntervalVector::rad() const {
  Eigen::VectorXd r(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) r(static_cast<Eigen::Index>(i)) = v_[i].rad();
  return r;
}

double IntervalVector::max_rad() const {
  double r = 0.0;
  for (const auto& x : v_) r = std::fmax(r, x.rad());
  return r;
}

double IntervalVector::max_mag() const {
  double r = 0.0;
  for (const auto& x : v_) r = std::fmax(r, x.mag());
  return r;
}

Interval IntervalVector::norm2() const {
  Interval s(0.0);
  for (const auto& x : v_) s += sqr(x);
  return sqrt(s);
}

bool IntervalVector::contains(const IntervalVector& o) const {
  if (o.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!v_[i].contains(o[i])) return false;
  return true;
}

bool IntervalVector::interior_contains(const IntervalVector& o) const {
  if (o.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!v_[i].interior_contains(o[i])) return false;
  return true;
}

bool IntervalVector::contains(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!v_[i].contains(x(static_cast<Eigen::Index>(i)))) return false;
  return true;
}

namespace {
void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}
}  // namespace

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b) {
  check_same(a.size(), b.size());
  IntervalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntervalVector operator-(const IntervalVector& a, const IntervalVector& b) {
  check_same(a.size(), b.size());
  IntervalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntervalVector operator*(const Interval& s, const IntervalVector& a) {
  IntervalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

IntervalVector hull(const IntervalVector& a, const IntervalVector& b) {
  check_same(a.size(), b.size());
  IntervalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
  return r;
}

std::optional<IntervalVector> intersect(const IntervalVector& a, const IntervalVector& b) {
  check_same(a.size(), b.size());
  IntervalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = intersect(a[i], b[i]);
    if (!x) return std::nullopt;
    r[i] = *x;
  }
  return r;
}

IntervalVector inflate(const IntervalVector& a, double r) {
  IntervalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = inflate(a[i], r);
  return out;
}

Interval dot(const IntervalVector& a, const IntervalVector& b) {
  check_same(a.size(), b.size());
  Interval s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntervalMatrix IntervalMatrix::point(const Eigen::MatrixXd& m) {
  IntervalMatrix r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Interval(m(i, j));
  return r;
}

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = Interval(1.0);
  return r;
}

IntervalMatrix IntervalMatrix::transpose() const {
  IntervalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Eigen::MatrixXd IntervalMatrix::mid() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).mid();
  return m;
}

Eigen::MatrixXd IntervalMatrix::rad() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).rad();
  return m;
}

double IntervalMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s = rnd::add_up(s, (*this)(i, j).mag());
    best = std::fmax(best, s);
  }
  return best;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
  check_same(a.rows(), b.rows());
  check_same(a.cols(), b.cols());
  IntervalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
  check_same(a.rows(), b.rows());
  check_same(a.cols(), b.cols());
  IntervalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
  check_same(a.cols(), b.rows());
  IntervalMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Interval s(0.0);
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a) {
  IntervalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

IntervalVector operator*(const IntervalMatrix& a, const IntervalVector& x) {
  check_same(a.cols(), x.size());
  IntervalVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Interval s(0.0);
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    r[i] = s;
  }
  return r;
}

IntervalMatrix operator*(const Eigen::MatrixXd& a, const IntervalMatrix& b) {
  return IntervalMatrix::point(a) * b;
}

IntervalMatrix operator*(const IntervalMatrix& a, const Eigen::MatrixXd& b) {
  return a * IntervalMatrix::point(b);
}

IntervalVector operator*(const Eigen::MatrixXd& a, const IntervalVector& x) {
  return IntervalMatrix::point(a) * x;
}

IntervalMatrix symmetrize(const IntervalMatrix& m) {
  check_same(m.rows(), m.cols());
  IntervalMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      s(i, j) = (i == j) ? m(i, i) : Interval(0.5) * (m(i, j) + m(j, i));
  return s;
}

Interval quad_form(const IntervalMatrix& m, const IntervalVector& d) {
  return dot(d, m * d);
}

std::optional<IntervalMatrix> enclose_inverse(const Eigen::MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::MatrixXd r = lu.inverse();
  IntervalMatrix rp = IntervalMatrix::point(r);
  IntervalMatrix e = IntervalMatrix::identity(n) - rp * IntervalMatrix::point(a);
  double delta = e.norm_inf();
  if (!(delta < 1.0)) return std::nullopt;
  // A^{-1} = sum_m E^m R; the terms m >= 2 are bounded entrywise in the inf norm.
  double tail = rnd::div_up(rnd::mul_up(rnd::mul_up(delta, delta), rp.norm_inf()),
                            rnd::sub_down(1.0, delta));
  IntervalMatrix inv = rp + e * rp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = inflate(inv(i, j), tail);
  return inv;
}

namespace {

std::optional<Interval> krawczyk_attempt(const ScalarMap& f, Interval x, double target) {
  auto kop = [&f](const Interval& xx) -> std::optional<Interval> {
    double m = xx.mid();
    Interval dfm = f.df(Interval(m));
    if (dfm.contains_zero()) return std::nullopt;
    Interval c(1.0 / dfm.mid());
    return Interval(m) - c * f.f(Interval(m)) + (Interval(1.0) - c * f.df(xx)) * (xx - Interval(m));
  };
  auto k = kop(x);
  if (!k || !x.interior_contains(*k)) return std::nullopt;
  x = *k;
  for (int it = 0; it < 100; ++it) {
    if (x.width() <= target * std::fabs(x.mid())) break;
    auto kn = kop(x);
    if (!kn) break;
    auto xn = intersect(*kn, x);
    if (!xn) return std::nullopt;
    bool progress = xn->width() < x.width();
    x = *xn;
    if (!progress) break;
  }
  if (f.df(x).contains_zero()) return std::nullopt;
  return x;
}

}  // namespace

std::optional<Interval> krawczyk_scalar(const ScalarMap& f, const Interval& x0, double target) {
  constexpr int kRounds = 50;
  if (auto r = krawczyk_attempt(f, x0, target)) return r;
  // Re-seed around a floating-point Newton estimate, then inflate.
  double z = x0.mid();
  for (int it = 0; it < 100; ++it) {
    double fz = f.f(Interval(z)).mid();
    double dz = f.df(Interval(z)).mid();
    if (dz == 0.0 || !std::isfinite(fz)) break;
    double zn = z - fz / dz;
    if (!std::isfinite(zn)) break;
    zn = std::clamp(zn, x0.lo(), x0.hi());
    if (zn == z) break;
    z = zn;
  }
  double delta = std::fmax(std::fabs(z) * 1e-15, 1e-300);
  for (int round = 1; round < kRounds; ++round) {
    Interval cand(rnd::sub_down(z, delta), rnd::add_up(z, delta));
    if (auto r = krawczyk_attempt(f, cand, target)) return r;
    delta *= 4.0;
  }
  return std::nullopt;
}

namespace {

bool interval_cholesky(const IntervalMatrix& a) {
  const std::size_t n = a.rows();
  IntervalMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Interval d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= sqr(l(j, k));
    if (!(d.lo() > 0.0)) return false;
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Interval s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

bool all_finite(const IntervalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_finite()) return false;
  return true;
}

// Conjugation V^T S V by approximate eigenvectors, plus e >= ||V^T V - I||_2.
struct Conjugated {
  IntervalMatrix t;
  double e = 0.0;
};

Conjugated conjugate(const IntervalMatrix& s) {
  const std::size_t n = s.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.mid());
  Eigen::MatrixXd v = es.eigenvectors();
  IntervalMatrix vi = IntervalMatrix::point(v);
  IntervalMatrix vt = vi.transpose();
  IntervalMatrix g = vt * vi - IntervalMatrix::identity(n);
  double fro = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fro = rnd::add_up(fro, rnd::mul_up(g(i, j).mag(), g(i, j).mag()));
  double e = rnd::sqrt_up(fro);
  if (!(e < 0.5)) return {s, 0.0};
  return {vt * s * vi, e};
}

double gershgorin_radius(const IntervalMatrix& t, std::size_t i) {
  double r = 0.0;
  for (std::size_t j = 0; j < t.cols(); ++j)
    if (j != i) r = rnd::add_up(r, t(i, j).mag());
  return r;
}

}  // namespace

NegDefResult verify_negative_definite(const IntervalMatrix& m) {
  NegDefResult out;
  if (m.rows() != m.cols() || m.rows() == 0 || !all_finite(m)) return out;
  const std::size_t n = m.rows();
  IntervalMatrix s = symmetrize(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.mid());
  double lam_max = es.eigenvalues()(static_cast<Eigen::Index>(n) - 1);
  if (!(lam_max < 0.0)) return out;

  double best = 0.0;
  // Verified Cholesky of -S - sigma I.
  double rho = s.rad().cwiseAbs().rowwise().sum().maxCoeff();
  double sigma0 = -lam_max - rho;
  if (sigma0 <= 0.0) sigma0 = -lam_max * 0.5;
  for (double f : {0.999, 0.99, 0.9, 0.5, 0.1, 0.01}) {
    double sigma = sigma0 * f;
    IntervalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = -s(i, j) - (i == j ? Interval(sigma) : Interval(0.0));
    if (interval_cholesky(a)) {
      best = sigma;
      break;
    }
  }
  // Gershgorin after approximate diagonalization.
  Conjugated cj = conjugate(s);
  double upper = -rnd::kInf;
  for (std::size_t i = 0; i < n; ++i)
    upper = std::fmax(upper, rnd::add_up(cj.t(i, i).hi(), gershgorin_radius(cj.t, i)));
  if (upper < 0.0) best = std::fmax(best, rnd::div_down(-upper, rnd::add_up(1.0, cj.e)));

  if (!(best > 0.0)) return out;
  Eigen::VectorXd v = es.eigenvectors().col(static_cast<Eigen::Index>(n) - 1);
  IntervalVector vi = IntervalVector::point(v);
  Interval rq = quad_form(s, vi) / dot(vi, vi);
  out.verified = true;
  out.c_A = Interval(best, std::fmax(best, (-rq).hi()));
  return out;
}

EigBounds sym_eig_bounds(const IntervalMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("sym_eig_bounds: square matrix required");
  const std::size_t n = m.rows();
  IntervalMatrix s = symmetrize(m);
  if (!all_finite(s)) return {Interval::entire(), Interval::entire()};
  Conjugated cj = conjugate(s);
  double min_lo = rnd::kInf, min_hi = rnd::kInf, max_lo = -rnd::kInf, max_hi = -rnd::kInf;
  for (std::size_t i = 0; i < n; ++i) {
    double r = gershgorin_radius(cj.t, i);
    min_lo = std::fmin(min_lo, rnd::sub_down(cj.t(i, i).lo(), r));
    min_hi = std::fmin(min_hi, cj.t(i, i).hi());
    max_lo = std::fmax(max_lo, cj.t(i, i).lo());
    max_hi = std::fmax(max_hi, rnd::add_up(cj.t(i, i).hi(), r));
  }
  // Ostrowski: lambda_k(V^T S V) = theta_k lambda_k(S), theta_k in [1-e, 1+e].
  Interval theta(rnd::sub_down(1.0, cj.e), rnd::add_up(1.0, cj.e));
  return {Interval(min_lo, min_hi) / theta, Interval(max_lo, max_hi) / theta};
}

}  // namespace qhb
