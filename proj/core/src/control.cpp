#include "qoc/control.hpp"

#include <cmath>
#include <sstream>

#include "qoc/errors.hpp"
#include "qoc/spectra.hpp"

namespace qoc {

RationalFunction MarkovianController::kernel() const {
  return {Polynomial{-c1, 1.0} * c0, Polynomial{-c2, 1.0}};
}

MarkovianController markovian_controller(const ShapeParams& sp,
                                         double omega_p) {
  if (!(sp.bw2 - sp.aw2 > 0.0)) {
    throw DomainError(
        "markovian_controller: A = B is degenerate (Q_eff -> infinity); "
        "perturb the noise correlation slightly");
  }
  const double re = std::sqrt(0.5 * (sp.bw2 + sp.aw2));
  const double im = std::sqrt(0.5 * (sp.bw2 - sp.aw2));
  const double w2 = omega_p * omega_p;
  MarkovianController mc;
  mc.omega1 = {re, -im};
  mc.omega2 = {-re, -im};
  mc.omega3 = {0.0, -std::sqrt(sp.bw2)};
  mc.omega4 = {0.0, -(std::sqrt(sp.bw2) + std::sqrt(2.0 * (sp.bw2 - sp.aw2)))};
  mc.c0 = -(w2 + mc.omega4 * mc.omega3);
  mc.c1 = (mc.omega3 * mc.omega3 * mc.omega3 + w2 * mc.omega4) / (w2 + mc.omega4 * mc.omega3);
  mc.c2 = mc.omega4;
  return mc;
}

MarkovianController markovian_controller(const SystemModel& model) {
  return markovian_controller(shape_params(model), model.osc.omega_p);
}

RationalFunction synthesize_optimal(const RationalFunction& g_x, double rho,
                                    const RationalFunction& phi_plus) {
  if (!(rho > 0.0)) throw DomainError("synthesize_optimal: rho must be > 0");
  // The subtracted constant is the time-domain kernel at t = 0+, i.e.
  // g_x(0+) = -i lim Omega G_x(Omega); exactly what makes the bracket decay
  // one power faster so K_ctrl comes out proper.
  cdouble gx0 = 0.0;
  if (g_x.relative_degree() == 1)
    gx0 = cdouble{0.0, -1.0} * g_x.num().leading() / g_x.den().leading();
  // g_x(0+) / (rho - i Omega); pole at Omega = -i rho (causal).
  const RationalFunction corr{Polynomial(gx0),
                              Polynomial{cdouble{rho}, cdouble{0.0, -1.0}}};
  RationalFunction k = ((g_x - corr) / phi_plus).reduced();
  if (k.relative_degree() < 2) {
    std::ostringstream msg;
    msg << "synthesize_optimal: K_ctrl improper (relative degree "
        << k.relative_degree() << " < 2); inputs malformed";
    throw AlgebraError(msg.str());
  }
  return k;
}

RationalFunction feedback_kernel(const RationalFunction& k_ctrl,
                                 const RationalFunction& r_xx,
                                 const RationalFunction& h) {
  const RationalFunction one(1.0);
  const RationalFunction denom = one - h * k_ctrl;
  if (denom.reduced().is_zero())
    throw AlgebraError("feedback_kernel: 1 - H K_ctrl vanishes identically");
  return (k_ctrl / (r_xx * denom)).reduced();
}

ControlledState controlled_covariance(const GaussianState& cond) {
  cond.validate();
  const double u = std::sqrt(cond.v_xx * cond.v_pp) + cond.v_xp;
  const double rho = std::sqrt(cond.v_pp / cond.v_xx);
  return {{u / rho, u * rho, 0.0}, u, rho};
}

double u_ctrl_closed_form(const ShapeParams& sp, double mu) {
  const double r = sp.ratio();
  return 0.5 * kHbar * mu * (std::sqrt(1.0 - r) + std::sqrt(2.0)) /
         std::sqrt(1.0 + r);
}

GaussianState controlled_covariance_integral(const RationalFunction& k_ctrl,
                                             const WienerFilterPair& filters,
                                             const RationalFunction& s_yy,
                                             const GaussianState& cond) {
  // p = -i Omega x in the e^{-i Omega t} convention.
  const RationalFunction iomega{Polynomial{0.0, cdouble{0.0, -1.0}},
                                Polynomial(1.0)};
  auto excess = [&s_yy](const RationalFunction& d) {
    const RationalFunction integrand = (d.abs2() * s_yy).reduced();
    if (integrand.relative_degree() < 2)
      throw ImproperControllerError(
          "controlled variance integral diverges: controller is improper for "
          "this channel");
    return integrate_spectrum(integrand);
  };
  const double dxx = excess(k_ctrl - filters.k_x);
  const double dpp = excess(iomega * k_ctrl - filters.k_p);
  return {cond.v_xx + dxx, cond.v_pp + dpp, 0.0};
}

Occupation occupation(const GaussianState& state) {
  state.validate();
  return {state.purity() / kHbar - 0.5, std::sqrt(state.v_pp / state.v_xx)};
}

double entropy(double n_eff) {
  if (n_eff < 0.0) throw DomainError("entropy: negative occupation");
  if (n_eff == 0.0) return 0.0;
  return (n_eff + 1.0) * std::log(n_eff + 1.0) - n_eff * std::log(n_eff);
}

ControlMetrics metrics(const SystemModel& model) {
  const auto sp = shape_params(model);
  const double mu = purity_mu(model.noise);
  if (!(sp.bw2 - sp.aw2 > 0.0))
    throw DomainError("metrics: A = B degenerate");

  ControlMetrics m{};
  m.mu = mu;
  m.ratio = sp.ratio();
  m.q_eff = std::sqrt(sp.bw2 + sp.aw2) / (2.0 * std::sqrt(sp.bw2 - sp.aw2));
  m.eta2 = mu / (2.0 * m.q_eff);
  m.u_ctrl = u_ctrl_closed_form(sp, mu);

  const auto cond = conditional_covariance_markovian(sp, mu);
  const auto ctrl = controlled_covariance(cond);
  m.n_eff = ctrl.state.occupation();
  m.omega_star = occupation(ctrl.state).omega_star;
  m.entropy_nats = entropy(m.n_eff);

  const double lhs = m.u_ctrl / (0.5 * kHbar);
  const double rhs = m.eta2 + std::sqrt(2.0) * mu / std::sqrt(1.0 + m.ratio);
  if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs)))
    throw AlgebraError("metrics: U_ctrl identity violated (internal bug)");
  if (m.n_eff < 0.5 * m.eta2 - 1e-10)
    throw AlgebraError("metrics: SQL bound violated (internal bug)");

  const double wp = model.osc.omega_p;
  if (std::abs(m.omega_star - wp) <= 1e-12 * std::max(1.0, wp))
    m.squeeze = SqueezeClass::kNone;
  else
    m.squeeze = m.omega_star > wp ? SqueezeClass::kPositionSqueezed
                                  : SqueezeClass::kMomentumSqueezed;
  return m;
}

double semiclassical_estimate(double q_eff, double s_x_at_omega, double omega) {
  if (!(omega > 0.0)) throw DomainError("semiclassical_estimate: Omega > 0");
  const double s_sql = 2.0 * kHbar / (omega * omega);
  return q_eff * s_x_at_omega / s_sql;
}

ControllerSynthesis synthesize(const SystemModel& model) {
  const auto sp = shape_params(model);
  const double mu = purity_mu(model.noise);
  ControllerSynthesis syn;
  syn.controller = markovian_controller(sp, model.osc.omega_p);
  syn.conditional = conditional_covariance_markovian(sp, mu);
  syn.controlled = controlled_covariance(syn.conditional);

  // gamma_p -> 0 response, consistent with the closed-form coefficients.
  const RationalFunction r = response(Oscillator{model.osc.omega_p, 0.0});
  const RationalFunction c = syn.controller.kernel();
  syn.k_ctrl = ((r * c) / (RationalFunction(1.0) + r * c)).reduced();
  syn.r_eff = (r / (RationalFunction(1.0) + r * c)).reduced();
  return syn;
}

}  // namespace qoc
