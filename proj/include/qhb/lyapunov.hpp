#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qhb/error.hpp"
#include "qhb/field.hpp"
#include "qhb/linalg.hpp"

namespace qhb {

class SpectrumNotStable : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

struct LyapunovCert {
  IntervalVector x_star;
  Eigen::MatrixXd Y;
  // Half-width of the box N~ = mid(x_star) +- domain_radius.
  double domain_radius = 0;
  Interval c_A = Interval(0.0);
  Interval lam_min_Y = Interval(0.0), lam_max_Y = Interval(0.0);
  Interval c1 = Interval(0.0);
  Interval c_tildeN = Interval(0.0);
  double eps = 0;
};

struct EquilibriumOptions {
  // For quasi-parabolic fields, also verify that the zero lies on p(x) = 1.
  bool require_horizon = true;
};

// Krawczyk-verified enclosure of the unique zero of g near x_approx. Throws
// VerificationError when no contracting box is found.
IntervalVector validate_equilibrium(const DesingularizedField& g, const Eigen::VectorXd& x_approx,
                                    EquilibriumOptions opts = {});

// Approximate zero of g by Newton iteration from x0, or nullopt.
std::optional<Eigen::VectorXd> newton_refine(const DesingularizedField& g, const Eigen::VectorXd& x0);

// Y = Re(X^{-H} X^{-1}) from the eigenvectors X of J, or the identity when X
// is ill-conditioned. Throws SpectrumNotStable if some Re(lambda) >= 0.
Eigen::MatrixXd build_Y(const Eigen::MatrixXd& J, double cond_threshold = 1e8);

// Checks stability through the real Schur form of J and returns Y = I.
Eigen::MatrixXd schur_Y(const Eigen::MatrixXd& J);

struct RadiusSchedule {
  double r0 = 0.1;
  int m_max = 40;
};

// Searches r = r0 2^-m, m = 0..m_max, for the largest box around mid(x_star)
// on which Dg^T Y + Y Dg is verified negative definite. Returns nullopt when
// no radius certifies. eps_override, when given, caps eps.
std::optional<LyapunovCert> certify_domain(const DesingularizedField& g, const IntervalVector& x_star,
                                           const Eigen::MatrixXd& Y, RadiusSchedule schedule = {},
                                           std::optional<double> eps_override = std::nullopt);

// L(x) = (x - x*)^T Y (x - x*) over the whole x_star enclosure.
Interval lyapunov_value(const LyapunovCert& cert, const IntervalVector& x);

// <grad L(x), g(x)> = 2 (x - x*)^T Y g(x).
Interval lyapunov_rate(const LyapunovCert& cert, const DesingularizedField& g, const IntervalVector& x);

// Box mid(x_star) +- domain_radius.
IntervalVector lyapunov_domain(const LyapunovCert& cert);

}  // namespace qhb
