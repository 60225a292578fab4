#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

#include "qhb/error.hpp"
#include "qhb/field.hpp"
#include "qhb/linalg.hpp"
#include "qhb/tape.hpp"

namespace qhb {

class StepFailure : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

struct IntegratorOptions {
  int order = 16;
  double tol = 1e-12;
  double h_min = 1e-12;
  double h_max = std::numeric_limits<double>::infinity();
};

struct StepRecord {
  double tau0 = 0, tau1 = 0;
  // A-priori enclosure of the state over [tau0, tau1] and tight enclosure at tau1.
  IntervalVector coarse_box;
  IntervalVector tight_endpoint;
  // t over the step and at tau1.
  Interval t_coarse;
  Interval t_end;
};

struct TrajectoryEnclosure {
  std::vector<StepRecord> steps;
  IntervalVector endpoint;
  Interval t_elapsed = Interval(0.0);
  double tau_end = 0;
};

// Rigorous dt/dtau bound over one step: dt_dtau(coarse_box) * h.
Interval accumulate_time(const DesingularizedField& g, const IntervalVector& coarse_box, double h);

// Interval Taylor integrator for x' = g(x) with t' = dt/dtau(x) carried as an
// extra state component. The set is kept as m + A r with A from a QR frame.
class Integrator {
 public:
  Integrator(const DesingularizedField& g, const IntervalVector& x0, IntegratorOptions opts = {});

  // Advances by one accepted step of size at most h_cap. Throws StepFailure
  // when the step size falls below h_min.
  const StepRecord& step(double h_cap = std::numeric_limits<double>::infinity());

  double tau() const { return tau_; }
  const IntervalVector& box() const { return x_; }
  const Interval& t() const { return t_; }
  const StepRecord& last() const { return last_; }
  std::size_t steps_taken() const { return nsteps_; }

 private:
  struct Trial {
    bool ok = false;
    IntervalVector coarse;
    IntervalVector z;
  };
  Trial try_enclosure(const IntervalVector& X, double h);
  double initial_step(const IntervalVector& X);

  const DesingularizedField* g_;
  IntegratorOptions opts_;
  std::size_t n_;  // dimension including t
  TaylorEngine box_engine_, point_engine_, rem_engine_;
  Eigen::VectorXd m_;
  Eigen::MatrixXd A_;
  IntervalVector r_;
  IntervalVector aug_;  // current box including t
  IntervalVector x_;    // current box without t
  Interval t_ = Interval(0.0);
  double tau_ = 0;
  double h_next_ = 0;
  std::size_t nsteps_ = 0;
  StepRecord last_;
};

using StopPredicate = std::function<bool(const IntervalVector&)>;
using StepHook = std::function<void(const StepRecord&)>;

// Integrates until stop(endpoint) holds; checked at tau = 0 first. Throws
// StepFailure on step failure or when tau_max is reached first.
TrajectoryEnclosure integrate_until(const DesingularizedField& g, const IntervalVector& x0, const StopPredicate& stop,
                                    double tau_max, IntegratorOptions opts = {}, const StepHook& hook = {});

// Non-rigorous adaptive Runge-Kutta integration of x' = f(x) from x0 over
// [0, t_end]; the observer sees (t, x) after every accepted step and may
// return true to stop early. Returns the final time reached.
using PointField = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
double integrate_points(const PointField& f, Eigen::VectorXd& x, double t_end,
                        const std::function<bool(double, const Eigen::VectorXd&)>& observer = {},
                        double abs_tol = 1e-12, double rel_tol = 1e-12);

}  // namespace qhb
