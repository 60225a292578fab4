#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhb/compact.hpp"
#include "qhb/integrate.hpp"
#include "qhb/lyapunov.hpp"
#include "qhb/problems.hpp"

namespace qhb {

// Coefficients of 1 - p(x)^{2c} expanded around a horizon point x*:
// (v_j)_i = C(2 beta_i, j) (x*_i)^{2 beta_i - j}.
struct BoundCoefficients {
  std::vector<IntervalVector> v;
  // norms[0] = |v_1| (Euclidean), norms[j-1] = |v_j|_inf for j >= 2.
  std::vector<Interval> norms;
};

BoundCoefficients bound_coefficients(const IntervalVector& x_star, const QHType& type);

// C(L) = |v_1| (c1 L)^{1/2} + sum_{j>=2} |v_j|_inf (c1 L)^{j/2}.
Interval c_bound(const Interval& L, const BoundCoefficients& coeffs, const Interval& c1);

// Upper bound on (1/(c~N c1)) int_0^eps C(L)^k / L dL.
Interval tmax_tail_para(const LyapunovCert& cert, const BoundCoefficients& coeffs, int k, double eps);
Interval tmax_tail_para(const LyapunovCert& cert, const QHType& type, int k);

// (2/(k c~N)) c1^{k/2-1} eps^{k/2}.
Interval tmax_tail_dir(const LyapunovCert& cert, int k, double eps);
Interval tmax_tail_dir(const LyapunovCert& cert, int k);

enum class Status { Succeeded, Failed };

struct BlowUpOptions {
  IntegratorOptions integrator;
  double tau_max = 1e4;
  std::optional<double> eps_override;
  RadiusSchedule radius;
  // Numerical equilibrium guess; found by integrating g when absent.
  std::optional<Eigen::VectorXd> equilibrium_seed;
  // Multiplies the Lyapunov matrix (the enclosure is invariant under this).
  double y_scale = 1.0;
  // After entering N, keep integrating while the tail dominates the width of
  // t_N, for at most this much extra tau (negative: max(tau_N, 50)).
  double tail_tau_budget = -1;
};

struct BlowUpCertificate {
  std::string problem_id;
  std::map<std::string, std::string> params;
  std::string chart;
  std::optional<IntervalVector> y0;
  IntervalVector x0;
  std::optional<LyapunovCert> cert;
  // "eigenvectors" (Y from the eigenmatrix) or "schur" (Y = I).
  std::string lyapunov_basis;
  double tau_entry = 0;
  double tau_N = 0;
  std::size_t steps = 0;
  Interval L_end = Interval(0.0);
  Interval t_N = Interval(0.0);
  Interval tail_bound = Interval(0.0);
  Interval t_max = Interval(0.0);
  Status status = Status::Failed;
  // Failing stage: equilibrium, spectrum-not-stable, domain-certification,
  // integration, tail.
  std::string stage;
  std::string message;
  double wall_seconds = 0;

  bool succeeded() const { return status == Status::Succeeded; }
};

// Initial data either in compactified coordinates (x0) or original (y0).
struct InitialData {
  std::optional<std::vector<double>> x0;
  std::optional<IntervalVector> y0;
};

// Runs equilibrium validation, domain certification, rigorous integration
// into N and the tail bound. Mathematical failures are reported through
// status/stage; invalid input throws std::invalid_argument.
BlowUpCertificate validate_blowup(const ProblemSpec& problem, const CompactChart& chart, const InitialData& init,
                                  const BlowUpOptions& options = {}, const StepHook& hook = {});

// Approximate horizon equilibrium reached from x0 by integrating g.
std::optional<Eigen::VectorXd> seed_equilibrium(const DesingularizedField& g, const Eigen::VectorXd& x0,
                                                double tau_end = 1e5);

}  // namespace qhb
