#ifndef QOC_COLDDAMP_HPP
#define QOC_COLDDAMP_HPP

#include <vector>

#include "qoc/plant.hpp"

namespace qoc {

/// SI constants, used only at the thermal boundary.
inline constexpr double kBoltzmannSI = 1.380649e-23;  // J/K
inline constexpr double kHbarSI = 1.054571817e-34;    // J s

/// Viscously damped oscillator in a thermal bath (SI temperature).
struct ThermalEnvironment {
  double temperature_k;
  double quality;       // Q_p
  double omega_p_si;    // rad/s
};

struct CriticalTemperature {
  double t_c;    // K
  double theta;  // T / T_c
};

/// T_c = hbar omega_p Q_p / (2 sqrt2 k_B).
CriticalTemperature critical_temperature(const ThermalEnvironment& env);

/// Minimum occupation below the critical temperature,
/// N_opt = 2^{-3/2} [sqrt(2-th^2) + sqrt(2 th sqrt(2-th^2)) + th - sqrt2].
/// Throws DomainError for theta > 1 (use the T > T_c limit 1/sqrt2).
double n_opt(double theta);

/// Optimal measurement strength Omega_q / omega_p for theta in (0, 1);
/// diverges as theta -> 1.
double optimal_strength(double theta);

/// Markovian model of phase-quadrature cold damping at reduced temperature
/// theta and strength x = Omega_q^2/omega_p^2 (natural units, omega_p = 1):
/// mu^2 = 1 + sqrt2 theta / x, A = 1, B^2 = 1 + x^2 + sqrt2 theta x.
SystemModel cold_damping_model(double theta, double x);

/// N_eff of the optimally controlled state at (theta, x).
double occupation_vs_strength(double theta, double x);

/// min over x of occupation_vs_strength by golden-section on log x.
struct StrengthOptimum {
  double x;
  double n_eff;
};
StrengthOptimum minimize_over_strength(double theta);

struct Fig2LeftRow {
  double theta;
  double x;
  double n_eff;
};

/// Table for the left panel sweep: N_eff(theta, x) over a strength grid.
std::vector<Fig2LeftRow> fig2_left_sweep(const std::vector<double>& thetas,
                                         const std::vector<double>& x_grid);

}  // namespace qoc

#endif
