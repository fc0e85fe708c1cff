#include "qoc/colddamp.hpp"

#include <cmath>

#include "qoc/control.hpp"
#include "qoc/errors.hpp"

namespace qoc {

CriticalTemperature critical_temperature(const ThermalEnvironment& env) {
  if (env.temperature_k < 0.0 || !(env.quality > 0.0))
    throw DomainError("thermal environment: need T >= 0 and Q_p > 0");
  const double t_c = kHbarSI * env.omega_p_si * env.quality /
                     (2.0 * std::sqrt(2.0) * kBoltzmannSI);
  return {t_c, env.temperature_k / t_c};
}

double n_opt(double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw DomainError(
        "n_opt: theta must lie in [0, 1]; above the critical temperature the "
        "limit is 1/sqrt(2) at infinite strength");
  const double s = std::sqrt(2.0 - theta * theta);
  return std::pow(2.0, -1.5) *
         (s + std::sqrt(2.0 * theta * s) + theta - std::sqrt(2.0));
}

double optimal_strength(double theta) {
  if (!(theta > 0.0) || theta >= 1.0)
    throw DomainError(
        "optimal_strength: defined for 0 < theta < 1; diverges at theta = 1");
  const double s = std::sqrt(2.0 - theta * theta);
  const double val = std::sqrt(theta) * std::pow(2.0 - theta * theta, 0.75) /
                         (s - theta) -
                     theta / std::sqrt(2.0);
  return std::sqrt(val);
}

SystemModel cold_damping_model(double theta, double x) {
  if (!(x > 0.0)) throw DomainError("cold damping: strength x must be > 0");
  if (theta < 0.0) throw DomainError("cold damping: theta must be >= 0");
  // omega_p = 1, hbar = 1: S_ZZ = 1/x, S_FF = x + sqrt2 theta, S_ZF = 0.
  SystemModel m;
  m.osc = Oscillator{1.0, 0.0};
  m.noise = MarkovianNoise{1.0 / x, x + std::sqrt(2.0) * theta, 0.0};
  return m;
}

double occupation_vs_strength(double theta, double x) {
  return metrics(cold_damping_model(theta, x)).n_eff;
}

StrengthOptimum minimize_over_strength(double theta) {
  auto f = [theta](double t) { return occupation_vs_strength(theta, std::exp(t)); };
  double lo = -4.0 * std::log(10.0), hi = 6.0 * std::log(10.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo); fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo); fd = f(d);
    }
  }
  const double t = 0.5 * (lo + hi);
  return {std::exp(t), f(t)};
}

std::vector<Fig2LeftRow> fig2_left_sweep(const std::vector<double>& thetas,
                                         const std::vector<double>& x_grid) {
  std::vector<Fig2LeftRow> rows;
  rows.reserve(thetas.size() * x_grid.size());
  for (double theta : thetas)
    for (double x : x_grid)
      rows.push_back({theta, x, occupation_vs_strength(theta, x)});
  return rows;
}

}  // namespace qoc
