#ifndef QOC_STATESPACE_HPP
#define QOC_STATESPACE_HPP

#include <Eigen/Dense>

#include "qoc/conditioning.hpp"
#include "qoc/rational.hpp"

namespace qoc {

/// Real single-input single-output state-space realization
/// xdot = A x + B u, y = C x + D u, in the time-domain variable s = -i Omega.
struct StateSpaceRealization {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;
  double d = 0.0;

  int order() const { return static_cast<int>(a.rows()); }
  /// Transfer function evaluated back at angular frequency Omega.
  cdouble transfer(double omega) const;
};

/// Controllable canonical realization of a proper rational function of
/// Omega whose time-domain counterpart is real.
/// Throws AlgebraError for improper or intrinsically complex input.
StateSpaceRealization realize(const RationalFunction& r);

/// Closed loop of the measurement-feedback diagram: oscillator states (x, p)
/// augmented with the controller realization of the feedback kernel C,
/// driven by the correlated white pair (F, Z).
struct ClosedLoopSystem {
  Eigen::MatrixXd a;        // augmented dynamics
  Eigen::MatrixXd g;        // noise input map, columns (F, Z)
  Eigen::Matrix2d sigma;    // white-noise intensity, (S/2) convention
};

ClosedLoopSystem closed_loop_system(const SystemModel& model,
                                    const RationalFunction& c_kernel);

/// Steady-state (x, p) covariance of a stable linear loop via the Lyapunov
/// equation; the analytic cross-check for the simulator.
GaussianState lyapunov_variance(const ClosedLoopSystem& loop);

/// Eigenvalues of the loop dynamics (s-plane); throws StabilityError with a
/// pole report when any lies in the closed right half-plane.
void require_stable(const ClosedLoopSystem& loop);

}  // namespace qoc

#endif
