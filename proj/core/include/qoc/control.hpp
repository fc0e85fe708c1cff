#ifndef QOC_CONTROL_HPP
#define QOC_CONTROL_HPP

#include <complex>

#include "qoc/conditioning.hpp"

namespace qoc {

/// Coefficients and pole/zero data of the optimal Markovian controller
/// C = C0 (Omega - C1) / (Omega - C2), with closed-loop poles
/// {Omega_1, Omega_2, Omega_3} and zero Omega_4.
struct MarkovianController {
  cdouble c0, c1, c2;
  cdouble omega1, omega2, omega3, omega4;

  RationalFunction kernel() const;  // C0 (Omega - C1)/(Omega - C2)
};

/// Closed forms from the shape parameters; omega_p enters C0, C1 explicitly.
MarkovianController markovian_controller(const ShapeParams& sp,
                                         double omega_p);
MarkovianController markovian_controller(const SystemModel& model);

/// K_ctrl = (1/phi_+) [G_x(Omega) - g_x(0+)/(rho - i Omega)] with
/// rho = sqrt(Vpp^c / Vxx^c) and g_x(0+) = -i lim Omega G_x(Omega), the
/// time-domain filter kernel at t = 0+. Checks causality and properness.
RationalFunction synthesize_optimal(const RationalFunction& g_x, double rho,
                                    const RationalFunction& phi_plus);

/// Invert Eq. K_ctrl = R C / (1 + R C H) for the feedback kernel:
/// C = K / (R (1 - H K)).
RationalFunction feedback_kernel(const RationalFunction& k_ctrl,
                                 const RationalFunction& r_xx,
                                 const RationalFunction& h);

/// Controlled covariance from the conditional state:
/// U_ctrl = sqrt(Vxx^c Vpp^c) + Vxp^c, Vxx = U/rho, Vpp = U rho, Vxp = 0.
struct ControlledState {
  GaussianState state;
  double u_ctrl;
  double rho;
};
ControlledState controlled_covariance(const GaussianState& cond);

/// Closed form Eq.-(Uctrl) route: U_ctrl/(hbar/2) = mu (sqrt(1-A/B)+sqrt2)
///                                                  / sqrt(1+A/B).
double u_ctrl_closed_form(const ShapeParams& sp, double mu);

/// Frequency-integral route:
/// V_aa^ctrl = V_aa^c + int |(i Omega)^{a==p} K_ctrl - K_a|^2 S_yy dO/2pi.
/// Throws ImproperControllerError when the integrand does not decay.
GaussianState controlled_covariance_integral(const RationalFunction& k_ctrl,
                                             const WienerFilterPair& filters,
                                             const RationalFunction& s_yy,
                                             const GaussianState& cond);

/// Occupation, trap frequency of Eq. (3), and entropy (natural log, nats).
struct Occupation {
  double n_eff;
  double omega_star;  // sqrt(Vpp / Vxx), minimizing trap frequency
};
Occupation occupation(const GaussianState& state);
double entropy(double n_eff);

enum class SqueezeClass { kPositionSqueezed, kMomentumSqueezed, kNone };

struct ControlMetrics {
  double u_ctrl;
  double n_eff;
  double q_eff;
  double eta2;
  double omega_star;
  double entropy_nats;
  double mu;
  double ratio;  // A / B
  SqueezeClass squeeze;
};

/// All scalar metrics, with the internal identities asserted:
/// U_ctrl/(hbar/2) = eta2 + sqrt2 mu / sqrt(1 + A/B) and N_eff >= eta2/2.
ControlMetrics metrics(const SystemModel& model);

/// Semiclassical diagnostic N ~ Q_eff S_x(Omega) / S_SQL(Omega).
double semiclassical_estimate(double q_eff, double s_x_at_omega, double omega);

/// Full synthesis record for a Markovian model.
struct ControllerSynthesis {
  MarkovianController controller;
  RationalFunction k_ctrl;      // closed-loop transfer from y0
  RationalFunction r_eff;       // closed-loop response to external force
  GaussianState conditional;
  ControlledState controlled;
};
ControllerSynthesis synthesize(const SystemModel& model);

}  // namespace qoc

#endif
