#ifndef QOC_PLANT_HPP
#define QOC_PLANT_HPP

#include "qoc/spectra.hpp"

namespace qoc {

/// Natural units used throughout the core: hbar = 1, mass = 1.
inline constexpr double kHbar = 1.0;

/// Suspended-mirror oscillator, mass fixed to 1. A free mass is omega_p = 0.
struct Oscillator {
  double omega_p = 1.0;
  double gamma_p = 0.0;

  Oscillator() = default;
  Oscillator(double omega, double gamma);
  double quality() const { return omega_p / gamma_p; }
};

/// Constant single-sided spectra of the sensing (Z) and force (F) noise
/// ports, with real cross spectrum.
struct MarkovianNoise {
  double s_zz = 1.0;
  double s_ff = 1.0;
  double s_zf = 0.0;

  MarkovianNoise() = default;
  MarkovianNoise(double zz, double ff, double zf);
};

/// Measurement purity mu = sqrt(S_ZZ S_FF - S_ZF^2) / hbar >= 1.
double purity_mu(const MarkovianNoise& noise);

struct SystemModel {
  Oscillator osc;
  MarkovianNoise noise;
  // Measurement transfer function H is fixed to 1.
};

/// Oscillator response R_xx = -1 / [(Omega - omega_p + i gamma_p)
///                                  (Omega + omega_p + i gamma_p)].
RationalFunction response(const Oscillator& osc);

/// Scale-free spectral shape parameters: aw2 = A omega_p^2 and
/// bw2 = B omega_p^2 of the output-spectrum numerator
///   LL* = Omega^4 - 2 aw2 Omega^2 + bw2^2.
/// They stay finite for the free mass, where aw2 = S_ZF/S_ZZ and
/// bw2 = sqrt(S_FF/S_ZZ). For omega_p > 0, (A, B) = (aw2, bw2) / omega_p^2.
struct ShapeParams {
  double aw2;
  double bw2;
  double ratio() const { return aw2 / bw2; }  // A / B
};

ShapeParams shape_params(const SystemModel& model);

/// The paper's (A, B) pair; requires omega_p > 0.
std::pair<double, double> ab_params(const SystemModel& model);

/// Open-loop output spectrum S_yy (uses the actual gamma_p of the model).
SpectralDensity output_spectrum(const SystemModel& model);

/// Force-referred noise spectrum S_G = S_yy / |R_xx|^2 = S_ZZ LL*
/// (gamma_p -> 0 shape).
SpectralDensity force_referred_spectrum(const SystemModel& model);

/// Free-mass SQL for force detection at frequency Omega.
double sql_force(double omega);

/// min over real Omega of S_G / S_G^SQL, closed form S_ZZ (bw2 - aw2) / hbar.
double eta_squared(const SystemModel& model);

/// Same minimum found by scanning/golden-section (independent route).
double eta_squared_numeric(const SystemModel& model);

}  // namespace qoc

#endif
