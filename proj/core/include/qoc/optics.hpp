#ifndef QOC_OPTICS_HPP
#define QOC_OPTICS_HPP

#include <vector>

#include "qoc/plant.hpp"

namespace qoc {

/// Interferometric readout configuration (natural units, hbar = m = 1).
struct ReadoutConfig {
  double omega_q = 1.0;      // characteristic measurement frequency
  double phi = 0.0;          // homodyne angle; 0 = phase quadrature
  double squeeze_db = 0.0;   // input squeezing (0 = vacuum)
  double squeeze_angle = 0.0;
  double loss = 0.0;         // epsilon in [0, 1)
  double zeta_x = 0.0;       // classical sensing noise SQL crossing
  double zeta_f = 0.0;       // classical force noise SQL crossing

  void validate() const;
};

struct ClassicalBudget {
  double zeta_f = 0.0;
  double zeta_x = 0.0;
  double eta_cl2() const { return 2.0 * zeta_f * zeta_x; }
  /// Symmetric split zeta_f = zeta_x = sqrt(eta_cl2 / 2).
  static ClassicalBudget symmetric(double eta_cl2);
};

/// Input quadrature covariance after squeezing: R(lambda) diag(e^-2r, e^2r)
/// R(lambda)^T, determinant 1.
struct QuadratureCovariance {
  double s11, s12, s22;
};
QuadratureCovariance input_covariance(double squeeze_db, double squeeze_angle);

/// Map a readout configuration to the Markovian noise triple.
MarkovianNoise to_markovian(const ReadoutConfig& cfg);

/// eta_cl^2 = 2 zeta_F zeta_x, closed form.
double classical_factor(const ReadoutConfig& cfg);
/// Same by brute-force frequency minimization of the classical-noise / SQL
/// ratio (independent route).
double classical_factor_numeric(const ReadoutConfig& cfg);

/// N_eff of the optimally controlled free mass under this readout.
double free_mass_occupation(const ReadoutConfig& cfg);

struct ReadoutOptimum {
  ReadoutConfig config;
  double n_eff;
  bool converged;
};

/// Minimize N_eff over (Omega_q, phi, squeeze_angle) for the free mass at
/// fixed squeezing, loss, and classical budget. Deterministic: coarse grid
/// then Nelder-Mead refinement.
ReadoutOptimum minimize_occupation(const ClassicalBudget& budget, double loss,
                                   double squeeze_db);

struct Fig2RightRow {
  double eta_cl2;
  double n_eff_vacuum;
  double n_eff_squeezed;  // 10 dB
};

std::vector<Fig2RightRow> fig2_right_sweep(
    const std::vector<double>& eta_cl2_grid, double loss = 0.01);

}  // namespace qoc

#endif
