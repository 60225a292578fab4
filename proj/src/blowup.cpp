#include "qhb/blowup.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qhb/log.hpp"

namespace qhb {

namespace {

double binomial(unsigned n, unsigned k) {
  double r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Interval nonneg(const Interval& x) {
  auto c = intersect(x, Interval(0.0, rnd::kInf));
  return c ? *c : Interval(0.0);
}

void check_cert(const LyapunovCert& cert, int k) {
  if (k < 1) throw std::invalid_argument("tail bound: order k must be at least 1");
  if (!(cert.c_tildeN.lo() > 0) || !(cert.c1.lo() > 0))
    throw std::invalid_argument("tail bound: certificate constants must be positive");
}

}  // namespace

BoundCoefficients bound_coefficients(const IntervalVector& x_star, const QHType& type) {
  if (x_star.size() != type.n()) throw std::invalid_argument("bound_coefficients: dimension mismatch");
  unsigned jmax = 0;
  for (unsigned b : type.beta) jmax = std::max(jmax, 2 * b);
  BoundCoefficients bc;
  for (unsigned j = 1; j <= jmax; ++j) {
    IntervalVector v(x_star.size());
    for (std::size_t i = 0; i < x_star.size(); ++i) {
      const unsigned e = 2 * type.beta[i];
      if (j <= e) v[i] = Interval(binomial(e, j)) * pow_int(x_star[i], e - j);
    }
    if (j == 1) {
      bc.norms.push_back(v.norm2());
    } else {
      Interval m(0.0);
      for (const Interval& c : v) m = Interval(std::max(m.lo(), c.mig()), std::max(m.hi(), c.mag()));
      bc.norms.push_back(m);
    }
    bc.v.push_back(std::move(v));
  }
  return bc;
}

Interval c_bound(const Interval& L, const BoundCoefficients& coeffs, const Interval& c1) {
  const Interval q = sqrt(nonneg(c1 * nonneg(L)));
  Interval s(0.0);
  for (std::size_t j = 0; j < coeffs.norms.size(); ++j)
    s += coeffs.norms[j] * pow_int(q, static_cast<unsigned>(j + 1));
  return s;
}

Interval tmax_tail_para(const LyapunovCert& cert, const BoundCoefficients& coeffs, int k, double eps) {
  check_cert(cert, k);
  if (!(eps >= 0)) throw std::invalid_argument("tail bound: eps must be nonnegative");
  const Interval E(eps);
  const Interval& c1 = cert.c1;
  const Interval& cn = cert.c_tildeN;
  if (k == 1) {
    // (1/c~N) [2 |v_1| c1^{-1/2} eps^{1/2} + sum_j (2/j) |v_j| c1^{j/2-1} eps^{j/2}]
    const Interval q = sqrt(c1 * E);
    Interval s(0.0);
    for (std::size_t j = 0; j < coeffs.norms.size(); ++j) {
      const unsigned m = static_cast<unsigned>(j + 1);
      s += Interval::ratio(2, m) * coeffs.norms[j] * pow_int(q, m) / c1;
    }
    return s / cn;
  }
  // C(L)^k = sum_m b_m q^m with q = (c1 L)^{1/2}; int_0^eps q^m / L dL = (2/m) q(eps)^m.
  std::vector<Interval> base(coeffs.norms.size() + 1, Interval(0.0));
  for (std::size_t j = 0; j < coeffs.norms.size(); ++j) base[j + 1] = coeffs.norms[j];
  std::vector<Interval> pw = base;
  for (int p = 1; p < k; ++p) {
    std::vector<Interval> next(pw.size() + base.size() - 1, Interval(0.0));
    for (std::size_t a = 0; a < pw.size(); ++a)
      for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += pw[a] * base[b];
    pw = std::move(next);
  }
  const Interval q = sqrt(c1 * E);
  Interval s(0.0);
  for (std::size_t m = 1; m < pw.size(); ++m)
    s += Interval::ratio(2, static_cast<long long>(m)) * pw[m] * pow_int(q, static_cast<unsigned>(m));
  return s / (cn * c1);
}

Interval tmax_tail_para(const LyapunovCert& cert, const QHType& type, int k) {
  return tmax_tail_para(cert, bound_coefficients(cert.x_star, type), k, cert.eps);
}

Interval tmax_tail_dir(const LyapunovCert& cert, int k, double eps) {
  check_cert(cert, k);
  if (!(eps >= 0)) throw std::invalid_argument("tail bound: eps must be nonnegative");
  const Interval q = sqrt(cert.c1 * Interval(eps));
  return Interval::ratio(2, k) * pow_int(q, static_cast<unsigned>(k)) / (cert.c_tildeN * cert.c1);
}

Interval tmax_tail_dir(const LyapunovCert& cert, int k) { return tmax_tail_dir(cert, k, cert.eps); }

std::optional<Eigen::VectorXd> seed_equilibrium(const DesingularizedField& g, const Eigen::VectorXd& x0,
                                                double tau_end) {
  Eigen::VectorXd x = x0;
  integrate_points([&g](const Eigen::VectorXd& s, Eigen::VectorXd& ds) { ds = g.eval_g(s); }, x, tau_end,
                   [&g](double, const Eigen::VectorXd& s) { return g.eval_g(s).cwiseAbs().maxCoeff() < 1e-10; },
                   1e-10, 1e-10);
  if (!x.allFinite()) return std::nullopt;
  return newton_refine(g, x);
}

BlowUpCertificate validate_blowup(const ProblemSpec& problem, const CompactChart& chart, const InitialData& init,
                                  const BlowUpOptions& options, const StepHook& hook) {
  const auto start = std::chrono::steady_clock::now();
  const QHType& type = problem.model.type();
  if (init.x0.has_value() == init.y0.has_value())
    throw std::invalid_argument("validate_blowup: exactly one of x0, y0 is required");
  if (!(options.y_scale > 0)) throw std::invalid_argument("validate_blowup: y_scale must be positive");

  BlowUpCertificate out;
  out.problem_id = problem.id;
  out.params = problem.params;
  out.chart = chart.label();
  auto finish = [&](Status s, std::string stage, std::string msg) {
    out.status = s;
    out.stage = std::move(stage);
    out.message = std::move(msg);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s == Status::Failed) log_warn("validation failed at", out.stage + ":", out.message);
    return out;
  };

  if (init.y0) {
    if (init.y0->size() != type.n()) throw std::invalid_argument("validate_blowup: y0 has the wrong dimension");
    for (const Interval& c : *init.y0)
      if (!c.is_finite()) throw std::invalid_argument("validate_blowup: y0 must be finite");
    out.y0 = init.y0;
    try {
      out.x0 = chart_forward(*init.y0, chart);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(std::string("validate_blowup: ") + e.what());
    } catch (const VerificationError& e) {
      return finish(Status::Failed, "input", e.what());
    }
  } else {
    if (init.x0->size() != type.n()) throw std::invalid_argument("validate_blowup: x0 has the wrong dimension");
    for (double v : *init.x0)
      if (!std::isfinite(v)) throw std::invalid_argument("validate_blowup: x0 must be finite");
    out.x0 = IntervalVector::point(*init.x0);
    if (chart.is_para() && !(p_pow2c(out.x0, type).hi() < 1.0))
      throw std::invalid_argument("validate_blowup: x0 must lie inside the compactified disk");
    if (!chart.is_para() && !(out.x0[0].lo() > 0.0))
      throw std::invalid_argument("validate_blowup: directional x0 needs s > 0");
  }

  const DesingularizedField g = desingularize(problem.model, chart);
  const int k = static_cast<int>(type.order_k);

  // 1. Equilibrium on the horizon.
  IntervalVector x_star;
  try {
    std::optional<Eigen::VectorXd> seed = options.equilibrium_seed;
    if (!seed) seed = seed_equilibrium(g, out.x0.mid());
    if (!seed) return finish(Status::Failed, "equilibrium", "no numerical equilibrium found from x0");
    x_star = validate_equilibrium(g, *seed);
    const bool on_horizon = chart.is_para() ? p_pow2c(x_star, type).contains(1.0) : x_star[0].contains(0.0);
    if (!on_horizon) return finish(Status::Failed, "equilibrium", "equilibrium is not at infinity");
  } catch (const VerificationError& e) {
    return finish(Status::Failed, "equilibrium", e.what());
  }

  // 2. Lyapunov function and its certified domain.
  Eigen::MatrixXd Y;
  try {
    Y = options.y_scale * build_Y(g.eval_Dg(Eigen::VectorXd(x_star.mid())));
  } catch (const SpectrumNotStable& e) {
    return finish(Status::Failed, "spectrum-not-stable", e.what());
  }
  auto cert = certify_domain(g, x_star, Y, options.radius, options.eps_override);
  out.lyapunov_basis = "eigenvectors";
  const Eigen::MatrixXd I = options.y_scale * schur_Y(g.eval_Dg(Eigen::VectorXd(x_star.mid())));
  if (!cert && !Y.isApprox(I)) {
    // Clustered eigenvalues: orthogonal Schur frame, Y = I.
    log_info("eigenvector-based Y did not certify; retrying with Y = I");
    cert = certify_domain(g, x_star, I, options.radius, options.eps_override);
    out.lyapunov_basis = "schur";
  }
  if (!cert) return finish(Status::Failed, "domain-certification", "no radius in the schedule certifies A(x) < 0");
  out.cert = cert;
  const BoundCoefficients coeffs = bound_coefficients(cert->x_star, type);
  auto tail_for = [&](double eps) {
    return chart.is_para() ? tmax_tail_para(*cert, coeffs, k, eps) : tmax_tail_dir(*cert, k, eps);
  };

  // 3. Rigorous integration into int N, then further while the tail dominates.
  Integrator integ(g, out.x0, options.integrator);
  auto L_of = [&](const IntervalVector& x) { return lyapunov_value(*cert, x); };
  try {
    Interval L = L_of(out.x0);
    while (!(L.hi() < cert->eps)) {
      if (integ.tau() >= options.tau_max)
        return finish(Status::Failed, "integration", "tau_max reached before entering N");
      const StepRecord& rec = integ.step(options.tau_max - integ.tau());
      if (hook) hook(rec);
      L = L_of(rec.tight_endpoint);
    }
    out.tau_entry = integ.tau();
    log_info("entered N at tau", out.tau_entry, "t", integ.t());
  } catch (const StepFailure& e) {
    return finish(Status::Failed, "integration", e.what());
  }

  // 4. Tail bound; keep the narrowest valid enclosure seen while continuing.
  bool have = false;
  auto record = [&]() {
    const Interval L = L_of(integ.box());
    if (!(L.hi() < cert->eps)) return false;
    const Interval tail = tail_for(std::min(cert->eps, L.hi()));
    const Interval t = integ.t();
    const Interval tm(t.lo(), rnd::add_up(t.hi(), tail.hi()));
    if (!have || tm.width() < out.t_max.width()) {
      have = true;
      out.L_end = L;
      out.t_N = t;
      out.tail_bound = tail;
      out.t_max = tm;
      out.tau_N = integ.tau();
      out.steps = integ.steps_taken();
    }
    return true;
  };
  try {
    if (!record()) return finish(Status::Failed, "tail", "endpoint left N");
  } catch (const std::exception& e) {
    return finish(Status::Failed, "tail", e.what());
  }
  const double budget = options.tail_tau_budget >= 0 ? options.tail_tau_budget : std::max(out.tau_entry, 50.0);
  const double tau_stop = out.tau_entry + budget;
  std::size_t stale = 0;
  double best = out.t_max.width();
  while (integ.tau() < tau_stop && out.tail_bound.hi() > out.t_N.width()) {
    try {
      const StepRecord& rec = integ.step(tau_stop - integ.tau());
      if (hook) hook(rec);
      if (!record()) break;
    } catch (const StepFailure&) {
      break;
    }
    if (out.t_max.width() < 0.99 * best) {
      best = out.t_max.width();
      stale = 0;
    } else if (++stale > 200) {
      break;
    }
  }
  log_info("t_max", out.t_max, "tail", out.tail_bound.hi(), "tau_N", out.tau_N);
  return finish(Status::Succeeded, "", "");
}

}  // namespace qhb
