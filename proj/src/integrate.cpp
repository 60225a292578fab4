#include "qhb/integrate.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numeric>

#include "qhb/log.hpp"

namespace qhb {

namespace {

IntervalVector with_t(const IntervalVector& x, const Interval& t) {
  IntervalVector a = x;
  a.push_back(t);
  return a;
}

IntervalVector drop_t(const IntervalVector& a) {
  return IntervalVector(std::vector<Interval>(a.begin(), a.end() - 1));
}

double state_norm(const IntervalVector& a) {
  double m = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) m = std::max(m, a[i].mag());
  return m;
}

double max_width(const IntervalVector& v) {
  double w = 0;
  for (const Interval& x : v) w = std::max(w, x.width());
  return w;
}

// Grows every component by a fraction of its width plus an absolute floor.
IntervalVector widen(const IntervalVector& v, double rel, double abs_floor) {
  IntervalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r = rnd::add_up(rnd::mul_up(rel, v[i].width()), rnd::add_up(abs_floor, rnd::mul_up(1e-15, v[i].mag())));
    out[i] = inflate(v[i], r);
  }
  return out;
}

}  // namespace

Interval accumulate_time(const DesingularizedField& g, const IntervalVector& coarse_box, double h) {
  return g.dt_dtau(coarse_box) * Interval(h);
}

Integrator::Integrator(const DesingularizedField& g, const IntervalVector& x0, IntegratorOptions opts)
    : g_(&g),
      opts_(opts),
      n_(g.dim() + 1),
      box_engine_(g.augmented_tape()),
      point_engine_(g.augmented_tape()),
      rem_engine_(g.augmented_tape()) {
  if (x0.size() != g.dim()) throw std::invalid_argument("Integrator: dimension mismatch");
  if (opts_.order < 1) throw std::invalid_argument("Integrator: order must be positive");
  if (!(opts_.tol > 0)) throw std::invalid_argument("Integrator: tolerance must be positive");
  for (const Interval& c : x0)
    if (!c.is_finite()) throw std::invalid_argument("Integrator: non-finite initial box");
  aug_ = with_t(x0, Interval(0.0));
  x_ = x0;
  m_ = aug_.mid();
  A_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  r_ = aug_ - IntervalVector::point(m_);
  last_.tight_endpoint = x0;
  last_.coarse_box = x0;
}

double Integrator::initial_step(const IntervalVector& X) {
  point_engine_.compute(IntervalVector::point(X.mid()), opts_.order, false);
  const double scale = opts_.tol * (1.0 + state_norm(X));
  double h = std::numeric_limits<double>::infinity();
  for (int k = opts_.order - 1; k <= opts_.order; ++k) {
    double c = 0;
    for (std::size_t i = 0; i < n_; ++i) c = std::max(c, point_engine_.coeff(i, k).mag());
    if (c > 0) h = std::min(h, std::pow(scale / c, 1.0 / k));
  }
  if (!std::isfinite(h)) h = 1.0;
  return std::min(h, opts_.h_max);
}

Integrator::Trial Integrator::try_enclosure(const IntervalVector& X, double h) {
  const int p = opts_.order;
  const Interval H(0.0, h);
  IntervalVector S = X;
  for (int k = 1; k <= p; ++k) {
    Interval hk = pow_int(H, static_cast<unsigned>(k));
    for (std::size_t i = 0; i < n_; ++i) S[i] += hk * box_engine_.coeff(i, k);
  }
  const Interval Hp = pow_int(H, static_cast<unsigned>(p + 1));
  auto image = [&](const IntervalVector& Y) {
    rem_engine_.compute(Y, p + 1, false);
    IntervalVector out = S;
    for (std::size_t i = 0; i < n_; ++i) out[i] += Hp * rem_engine_.coeff(i, p + 1);
    return out;
  };
  Trial tr;
  IntervalVector Y = widen(S, 0.1, 1e-300);
  Y = widen(hull(Y, image(Y)), 0.1, 1e-300);
  for (int it = 0; it < 12; ++it) {
    IntervalVector Yn = image(Y);
    for (const Interval& c : Yn)
      if (!c.is_finite()) return tr;
    if (Y.interior_contains(Yn)) {
      tr.ok = true;
      tr.coarse = Yn;
      const Interval hp1 = pow_int(Interval(h), static_cast<unsigned>(p + 1));
      rem_engine_.compute(Yn, p + 1, false);
      tr.z = IntervalVector(n_);
      for (std::size_t i = 0; i < n_; ++i) tr.z[i] = hp1 * rem_engine_.coeff(i, p + 1);
      return tr;
    }
    Y = widen(hull(Y, Yn), 0.5, 1e-300);
  }
  return tr;
}

const StepRecord& Integrator::step(double h_cap) {
  const int p = opts_.order;
  const IntervalVector X = aug_;
  box_engine_.compute(X, p, true);
  const double scale = opts_.tol * (1.0 + state_norm(X));
  double h = h_next_ > 0 ? h_next_ : initial_step(X);
  h = std::min({h, h_cap, opts_.h_max});
  if (!(h > 0)) throw std::invalid_argument("Integrator::step: nonpositive step cap");
  Trial tr;
  while (true) {
    if (h < opts_.h_min && h < h_cap) throw StepFailure("integration step size fell below h_min at tau = " + std::to_string(tau_));
    tr = try_enclosure(X, h);
    if (tr.ok && max_width(tr.z) <= scale) break;
    h *= 0.5;
  }
  const double wz = max_width(tr.z);
  double grow = wz > 0 ? 0.9 * std::pow(scale / wz, 1.0 / (p + 1)) : 2.0;
  h_next_ = h * std::clamp(grow, 0.5, 2.0);

  // Point Taylor polynomial at m and the interval Jacobian of the flow over X.
  const Interval hI(h);
  std::vector<Interval> hk(static_cast<std::size_t>(p) + 1);
  hk[0] = Interval(1.0);
  for (int k = 1; k <= p; ++k) hk[static_cast<std::size_t>(k)] = hk[static_cast<std::size_t>(k) - 1] * hI;
  point_engine_.compute(IntervalVector::point(m_), p, false);
  IntervalVector phi(n_);
  IntervalMatrix J(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Interval s(0.0);
    for (int k = p; k >= 0; --k) s += hk[static_cast<std::size_t>(k)] * point_engine_.coeff(i, k);
    phi[i] = s + tr.z[i];
    for (std::size_t j = 0; j < n_; ++j) {
      Interval d(0.0);
      for (int k = p; k >= 0; --k) d += hk[static_cast<std::size_t>(k)] * box_engine_.dcoeff(i, j, k);
      J(i, j) = d;
    }
  }
  const IntervalMatrix B = J * A_;
  const IntervalVector direct = phi + B * r_;

  // New frame: QR of mid(B) with columns ordered by their contribution.
  const Eigen::MatrixXd Bm = B.mid();
  const auto N = static_cast<Eigen::Index>(n_);
  std::vector<Eigen::Index> order(n_);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> weight(n_);
  for (Eigen::Index j = 0; j < N; ++j)
    weight[static_cast<std::size_t>(j)] = Bm.col(j).norm() * r_[static_cast<std::size_t>(j)].rad();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return weight[static_cast<std::size_t>(a)] > weight[static_cast<std::size_t>(b)];
  });
  Eigen::MatrixXd P(N, N);
  for (Eigen::Index j = 0; j < N; ++j) P.col(j) = Bm.col(order[static_cast<std::size_t>(j)]);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(P);
  Eigen::MatrixXd Q = qr.householderQ();
  auto Qinv = enclose_inverse(Q);
  if (!Qinv) {
    Q = Eigen::MatrixXd::Identity(N, N);
    Qinv = IntervalMatrix::identity(n_);
  }
  const Eigen::VectorXd m_new = phi.mid();
  const IntervalVector r_new = (*Qinv * B) * r_ + *Qinv * (phi - IntervalVector::point(m_new));
  const IntervalVector framed = IntervalVector::point(m_new) + IntervalMatrix::point(Q) * r_new;

  IntervalVector E = direct;
  if (auto both = intersect(framed, direct)) E = *both;
  // The a-priori box encloses the whole step, so it bounds the endpoint too.
  if (auto in_coarse = intersect(E, tr.coarse)) E = *in_coarse;
  // t also satisfies t1 in t0 + dt/dtau(coarse) h.
  const Interval t_coarse = tr.coarse[n_ - 1];
  const Interval t_sum = t_ + accumulate_time(*g_, drop_t(tr.coarse), h);
  if (auto tt = intersect(E[n_ - 1], t_sum)) E[n_ - 1] = *tt;

  m_ = m_new;
  A_ = Q;
  r_ = r_new;
  aug_ = E;
  x_ = drop_t(E);
  t_ = E[n_ - 1];
  last_.tau0 = tau_;
  tau_ += h;
  last_.tau1 = tau_;
  last_.coarse_box = drop_t(tr.coarse);
  last_.tight_endpoint = x_;
  last_.t_coarse = t_coarse;
  last_.t_end = t_;
  ++nsteps_;
  log_debug("step", nsteps_, "tau", tau_, "h", h, "width", max_width(x_));
  return last_;
}

TrajectoryEnclosure integrate_until(const DesingularizedField& g, const IntervalVector& x0, const StopPredicate& stop,
                                    double tau_max, IntegratorOptions opts, const StepHook& hook) {
  TrajectoryEnclosure out;
  out.endpoint = x0;
  if (stop(x0)) return out;
  Integrator integ(g, x0, opts);
  while (true) {
    if (integ.tau() >= tau_max) throw StepFailure("tau_max reached before the stop condition held");
    const StepRecord& rec = integ.step(tau_max - integ.tau());
    out.steps.push_back(rec);
    if (hook) hook(rec);
    if (stop(rec.tight_endpoint)) break;
  }
  out.endpoint = integ.box();
  out.t_elapsed = integ.t();
  out.tau_end = integ.tau();
  return out;
}

double integrate_points(const PointField& f, Eigen::VectorXd& x, double t_end,
                        const std::function<bool(double, const Eigen::VectorXd&)>& observer, double abs_tol,
                        double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  using Stepper = odeint::runge_kutta_dopri5<State>;
  auto sys = [&f](const State& s, State& ds, double) {
    Eigen::Map<const Eigen::VectorXd> sv(s.data(), static_cast<Eigen::Index>(s.size()));
    Eigen::VectorXd d(sv.size());
    f(sv, d);
    ds.assign(d.data(), d.data() + d.size());
  };
  State s(x.data(), x.data() + x.size());
  auto stepper = odeint::make_controlled(abs_tol, rel_tol, Stepper());
  double t = 0, dt = 1e-6;
  while (t < t_end) {
    dt = std::min(dt, t_end - t);
    if (stepper.try_step(sys, s, t, dt) == odeint::fail) {
      if (dt < 1e-300) break;
      continue;
    }
    bool finite = std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
    if (!finite) break;
    x = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
    if (observer && observer(t, x)) break;
  }
  x = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  return t;
}

}  // namespace qhb
