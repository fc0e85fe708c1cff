#include "qoc/plant.hpp"

#include <cmath>
#include <sstream>

#include "qoc/errors.hpp"

namespace qoc {

Oscillator::Oscillator(double omega, double gamma)
    : omega_p(omega), gamma_p(gamma) {
  if (omega_p < 0.0 || gamma_p < 0.0)
    throw DomainError("oscillator: omega_p and gamma_p must be >= 0");
}

MarkovianNoise::MarkovianNoise(double zz, double ff, double zf)
    : s_zz(zz), s_ff(ff), s_zf(zf) {
  if (!(s_zz > 0.0) || !(s_ff > 0.0))
    throw DomainError("noise: S_ZZ and S_FF must be positive");
  const double det = s_zz * s_ff - s_zf * s_zf;
  // Slack scales with the cancelling products so ill-conditioned but valid
  // triples (large spectra, mu near 1) are not rejected for rounding noise.
  const double slack = 1e-10 * std::max(kHbar * kHbar, s_zz * s_ff);
  if (det < kHbar * kHbar - slack) {
    std::ostringstream msg;
    msg << "noise violates the Heisenberg relation: S_ZZ S_FF - S_ZF^2 = "
        << det << " < hbar^2";
    throw DomainError(msg.str());
  }
}

double purity_mu(const MarkovianNoise& noise) {
  const double det = noise.s_zz * noise.s_ff - noise.s_zf * noise.s_zf;
  const double slack =
      1e-10 * std::max(kHbar * kHbar, noise.s_zz * noise.s_ff);
  if (det < kHbar * kHbar - slack)
    throw DomainError("purity_mu: Heisenberg relation violated (mu < 1)");
  return std::sqrt(std::max(det, kHbar * kHbar)) / kHbar;
}

RationalFunction response(const Oscillator& osc) {
  const double w = osc.omega_p, g = osc.gamma_p;
  // (Omega + i g)^2 - w^2, ascending coefficients.
  Polynomial den{cdouble{-g * g - w * w, 0.0}, cdouble{0.0, 2.0 * g},
                 cdouble{1.0, 0.0}};
  return {Polynomial(-1.0), den};
}

ShapeParams shape_params(const SystemModel& model) {
  const double w2 = model.osc.omega_p * model.osc.omega_p;
  const double aw2 = w2 + model.noise.s_zf / model.noise.s_zz;
  const double mu = purity_mu(model.noise);
  const double bw2 =
      std::sqrt(aw2 * aw2 + mu * mu * kHbar * kHbar /
                                (model.noise.s_zz * model.noise.s_zz));
  return {aw2, bw2};
}

std::pair<double, double> ab_params(const SystemModel& model) {
  const double w = model.osc.omega_p;
  if (!(w > 0.0))
    throw DomainError(
        "ab_params: omega_p must be positive; use shape_params for the free "
        "mass");
  const auto sp = shape_params(model);
  const double b2 = sp.bw2 * sp.bw2 / (w * w * w * w);
  if (!(b2 > 0.0)) throw DomainError("ab_params: nonpositive B^2");
  return {sp.aw2 / (w * w), std::sqrt(b2)};
}

SpectralDensity output_spectrum(const SystemModel& model) {
  const auto& n = model.noise;
  // S_yy = S_ZZ + (R + R*) S_ZF + S_FF R R* with R = -1/P, assembled over
  // the common denominator P Pbar. Generic rational arithmetic would stack
  // the term denominators into P^3 and leave reduced() to cancel numerically
  // split multiple roots, which fails at the 1e-6 level.
  const Polynomial p = response(model.osc).den();
  const Polynomial pbar = p.conj_reflect();
  const Polynomial num = p * pbar * cdouble{n.s_zz} -
                         (p + pbar) * cdouble{n.s_zf} + Polynomial(n.s_ff);
  return SpectralDensity(RationalFunction{num, p * pbar});
}

SpectralDensity force_referred_spectrum(const SystemModel& model) {
  const auto sp = shape_params(model);
  // S_ZZ (Omega^4 - 2 aw2 Omega^2 + bw2^2)
  Polynomial num{cdouble{sp.bw2 * sp.bw2}, 0.0, cdouble{-2.0 * sp.aw2}, 0.0,
                 cdouble{1.0}};
  return SpectralDensity({num * cdouble{model.noise.s_zz}, Polynomial(1.0)});
}

double sql_force(double omega) { return 2.0 * omega * omega * kHbar; }

double eta_squared(const SystemModel& model) {
  const auto sp = shape_params(model);
  return model.noise.s_zz * (sp.bw2 - sp.aw2) / kHbar;
}

double eta_squared_numeric(const SystemModel& model) {
  const SpectralDensity sg = force_referred_spectrum(model);
  const auto sp = shape_params(model);
  // Golden-section on log Omega around the expected minimum scale sqrt(bw2).
  const double center = 0.5 * std::log(sp.bw2);
  double lo = center - 8.0, hi = center + 8.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) {
    const double omega = std::exp(t);
    return sg.eval(omega) / sql_force(omega);
  };
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-12) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo); fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo); fd = f(d);
    }
  }
  return f(0.5 * (lo + hi));
}

}  // namespace qoc
