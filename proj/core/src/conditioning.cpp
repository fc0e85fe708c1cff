#include "qoc/conditioning.hpp"

#include <cmath>

#include "qoc/errors.hpp"
#include "qoc/riccati.hpp"
#include "qoc/spectra.hpp"

namespace qoc {

double GaussianState::purity() const {
  const double det = v_xx * v_pp - v_xp * v_xp;
  if (det <= 0.0) throw DomainError("state: covariance not positive definite");
  return std::sqrt(det);
}

void GaussianState::validate() const {
  if (!(v_xx > 0.0) || !(v_pp > 0.0))
    throw DomainError("state: variances must be positive");
  if (purity() < 0.5 * kHbar - 1e-12)
    throw DomainError("state: purity below hbar/2");
}

GaussianState conditional_covariance_markovian(const ShapeParams& sp,
                                               double mu) {
  if (sp.aw2 > sp.bw2 * (1.0 + 1e-12))
    throw DomainError("conditional covariance: A > B is invalid");
  const double h = 0.5 * kHbar * mu;
  const double s = std::sqrt(2.0 / (sp.aw2 + sp.bw2));
  return {h * s, h * sp.bw2 * s,
          h * std::sqrt((sp.bw2 - sp.aw2) / (sp.bw2 + sp.aw2))};
}

GaussianState conditional_covariance_markovian(const SystemModel& model) {
  return conditional_covariance_markovian(shape_params(model),
                                          purity_mu(model.noise));
}

GaussianState conditional_covariance_general(const SystemModel& model) {
  const double w = model.osc.omega_p, g = model.osc.gamma_p;
  Eigen::MatrixXd A(2, 2), C(1, 2), Q(2, 2), R(1, 1), S(2, 1);
  A << 0.0, 1.0, -(w * w + g * g), -2.0 * g;
  C << 1.0, 0.0;
  Q << 0.0, 0.0, 0.0, 0.5 * model.noise.s_ff;
  R << 0.5 * model.noise.s_zz;
  S << 0.0, 0.5 * model.noise.s_zf;
  const Eigen::MatrixXd P = solve_filter_care(A, C, Q, R, S);
  return {P(0, 0), P(1, 1), P(0, 1)};
}

RationalFunction wiener_filter(const RationalFunction& s_ay,
                               const RationalFunction& phi_plus,
                               RealAxisPoles policy) {
  const RationalFunction g =
      causal_part((s_ay / phi_plus.conj_reflect()).reduced(), policy);
  return (g / phi_plus).reduced();
}

RationalFunction cross_spectrum_xy(const SystemModel& model) {
  const RationalFunction r = response(model.osc);
  return (r * cdouble{model.noise.s_zf} +
          r.abs2() * cdouble{model.noise.s_ff})
      .reduced();
}

WienerFilterPair wiener_filters(const SystemModel& model,
                                const RationalFunction& phi_plus,
                                RealAxisPoles policy) {
  // S_xy / conj_reflect(phi_plus) is assembled structurally. Going through
  // cross_spectrum_xy would put near-cancelling pole/zero pairs at the plant
  // poles; root cancellation there fails at small gamma_p and corrupts the
  // filter exactly where |R|^2 amplifies the error.
  //
  // With R = -1/P:  S_xy = (-Pbar S_ZF + S_FF) / (P Pbar), and phi_plus's
  // denominator is c P, so  S_xy / phi_plus* = conj(c) (-Pbar S_ZF + S_FF) /
  // (P num_phi*) with no coincident roots.
  const Polynomial p = response(model.osc).den();
  const Polynomial pbar = p.conj_reflect();
  const cdouble c = phi_plus.den().leading() / p.leading();
  const Polynomial numer =
      (pbar * cdouble{-model.noise.s_zf} + Polynomial(model.noise.s_ff)) *
      std::conj(c);
  const Polynomial denom = p * phi_plus.num().conj_reflect();
  const RationalFunction h_x{numer, denom};
  const RationalFunction h_p =
      h_x * RationalFunction{Polynomial{0.0, cdouble{0.0, -1.0}},
                             Polynomial(1.0)};
  return {(causal_part(h_x, policy) / phi_plus).reduced(),
          (causal_part(h_p, policy) / phi_plus).reduced()};
}

GaussianState conditional_covariance_wiener(const SystemModel& model) {
  if (!(model.osc.gamma_p > 0.0))
    throw MarginalPoleError(
        "wiener route needs gamma_p > 0; regularize or use the Riccati path");
  const RationalFunction phi = spectral_factorize(output_spectrum(model));
  const auto filters = wiener_filters(model, phi);
  const RationalFunction r = response(model.osc);
  const double szz = model.noise.s_zz, sff = model.noise.s_ff,
               szf = model.noise.s_zf;

  // Error spectra in the grouped form e_x = R (1 - K_x) F - K_x Z and
  // e_p = R (-i Omega - K_p) F - K_p Z. Assembling S_xx, S_xy, S_yy as
  // standalone rationals and combining them pointwise loses ~all precision
  // near resonance, where terms of size |R|^2 cancel down to O(1); here the
  // cancellation happens inside (1 - K_x), which stays well conditioned.
  auto force_gains = [&](double omega) {
    const cdouble rw = r.eval(omega);
    const cdouble kx = filters.k_x.eval(omega);
    const cdouble kp = filters.k_p.eval(omega);
    return std::tuple{rw * (1.0 - kx), rw * (cdouble{0.0, -omega} - kp), kx,
                      kp};
  };
  auto cross = [&](cdouble fa, cdouble ka, cdouble fb, cdouble kb) {
    return fa * std::conj(fb) * sff + ka * std::conj(kb) * szz -
           (fa * std::conj(kb) + ka * std::conj(fb)) * szf;
  };
  auto spectrum = [&](auto pick) {
    return [&, pick](double omega) {
      const auto [fx, fp, kx, kp] = force_gains(omega);
      return pick(fx, fp, kx, kp);
    };
  };
  // Bracket the resonance: the error spectrum has a width-gamma feature
  // there that an adaptive rule on [0, inf) can step over.
  const double w0 = model.osc.omega_p, g0 = model.osc.gamma_p;
  std::vector<double> breaks;
  if (w0 > 0.0) {
    breaks.push_back(std::max(0.0, w0 - 50.0 * g0));
    breaks.push_back(w0 + 50.0 * g0);
  }
  auto variance = [&](auto e) {
    // Var = (1/2) int_{-inf}^{inf} E dOmega / 2pi, E not necessarily even.
    return integrate_halfline(
        [e](double omega) { return 0.5 * (e(omega) + e(-omega)).real(); },
        breaks);
  };

  const double vxx = variance(spectrum([&](cdouble fx, cdouble, cdouble kx,
                                           cdouble) {
    return cross(fx, kx, fx, kx);
  }));
  const double vpp = variance(spectrum([&](cdouble, cdouble fp, cdouble,
                                           cdouble kp) {
    return cross(fp, kp, fp, kp);
  }));
  const double vxp = variance(spectrum([&](cdouble fx, cdouble fp, cdouble kx,
                                           cdouble kp) {
    return cross(fx, kx, fp, kp);
  }));
  return {vxx, vpp, vxp};
}

}  // namespace qoc
