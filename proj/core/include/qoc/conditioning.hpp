#ifndef QOC_CONDITIONING_HPP
#define QOC_CONDITIONING_HPP

#include "qoc/plant.hpp"

namespace qoc {

/// 2x2 position/momentum covariance with symmetrized cross term.
struct GaussianState {
  double v_xx;
  double v_pp;
  double v_xp;

  /// U = sqrt(Vxx Vpp - Vxp^2) >= hbar/2.
  double purity() const;
  /// N_eff = U/hbar - 1/2.
  double occupation() const { return purity() / kHbar - 0.5; }
  void validate() const;
};

/// Closed-form conditional covariance of the Markovian model
/// (gamma_p -> 0 limit); determinant is exactly (mu hbar / 2)^2.
GaussianState conditional_covariance_markovian(const ShapeParams& sp,
                                               double mu);
GaussianState conditional_covariance_markovian(const SystemModel& model);

/// Steady-state conditional covariance by the continuous algebraic Riccati
/// equation on (x, p); valid for gamma_p >= 0.
GaussianState conditional_covariance_general(const SystemModel& model);

/// Causal Wiener filter K_a = (1/phi_+) [S_ay / phi_+^*]_+ .
/// The axis policy is forwarded to the causal projection; kCausal lets the
/// undamped (gamma_p = 0) chain run exactly.
RationalFunction wiener_filter(const RationalFunction& s_ay,
                               const RationalFunction& phi_plus,
                               RealAxisPoles policy = RealAxisPoles::kReject);

/// Cross spectrum S_xy between open-loop position and output y = Z + x.
RationalFunction cross_spectrum_xy(const SystemModel& model);

struct WienerFilterPair {
  RationalFunction k_x;
  RationalFunction k_p;
};

/// Both position and momentum filters for the model (S_py = -i Omega S_xy).
WienerFilterPair wiener_filters(const SystemModel& model,
                                const RationalFunction& phi_plus,
                                RealAxisPoles policy = RealAxisPoles::kReject);

/// Frequency-domain route to the conditional variances: residual estimation
/// error integrals. Needs gamma_p > 0 (regularized); retained as a
/// validation path for the Riccati solve.
GaussianState conditional_covariance_wiener(const SystemModel& model);

}  // namespace qoc

#endif
