#include "qoc/verify.hpp"

#include <cmath>
#include <sstream>

#include "qoc/conditioning.hpp"
#include "qoc/control.hpp"
#include "qoc/errors.hpp"
#include "qoc/simulate.hpp"
#include "qoc/spectra.hpp"
#include "qoc/statespace.hpp"

namespace qoc {

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

void add(VerificationReport& rep, const std::string& name, double lhs,
         double rhs, double tol, const std::string& note = "") {
  const double scale = std::max({1e-30, std::abs(lhs), std::abs(rhs)});
  rep.checks.push_back(
      {name, lhs, rhs, tol, std::abs(lhs - rhs) <= tol * scale, note});
}

void add_fail(VerificationReport& rep, const std::string& name,
              const std::string& why) {
  rep.checks.push_back({name, 0.0, 0.0, 0.0, false, why});
}

SystemModel regularized(const SystemModel& model, double floor_rel) {
  SystemModel reg = model;
  const double scale = model.osc.omega_p > 0.0
                           ? model.osc.omega_p
                           : std::sqrt(shape_params(model).bw2);
  reg.osc.gamma_p = std::max(model.osc.gamma_p, floor_rel * scale);
  return reg;
}

}  // namespace

VerificationReport verify_model(const SystemModel& model,
                                const VerifyOptions& opt) {
  VerificationReport rep;
  const bool near_ideal = model.osc.gamma_p == 0.0;

  // 1. Conditional covariance: Riccati vs (for gamma_p = 0) the closed form.
  const GaussianState care = conditional_covariance_general(model);
  if (near_ideal) {
    const GaussianState cf = conditional_covariance_markovian(model);
    add(rep, "conditional V_xx: closed form vs Riccati", cf.v_xx, care.v_xx,
        1e-8);
    add(rep, "conditional V_pp: closed form vs Riccati", cf.v_pp, care.v_pp,
        1e-8);
    add(rep, "conditional V_xp: closed form vs Riccati", cf.v_xp, care.v_xp,
        1e-8);
  }

  // 2. Conditional covariance: Riccati vs Wiener-filter error integrals on a
  //    lightly damped copy (the frequency route needs poles off the axis).
  try {
    const SystemModel reg = regularized(model, 1e-6);
    const GaussianState rcare = conditional_covariance_general(reg);
    const GaussianState wiener = conditional_covariance_wiener(reg);
    add(rep, "conditional V_xx: Riccati vs Wiener integral", rcare.v_xx,
        wiener.v_xx, 1e-5);
    add(rep, "conditional V_pp: Riccati vs Wiener integral", rcare.v_pp,
        wiener.v_pp, 1e-5);
    add(rep, "conditional V_xp: Riccati vs Wiener integral", rcare.v_xp,
        wiener.v_xp, 1e-5);
  } catch (const Error& e) {
    add_fail(rep, "conditional covariance: Wiener route", e.what());
  }

  // 3. Force-sensitivity floor: closed form vs frequency scan.
  add(rep, "eta^2: closed form vs numeric scan", eta_squared(model),
      eta_squared_numeric(model), 1e-6);

  // 4. Residue summation vs adaptive quadrature on a decaying spectrum.
  {
    const SystemModel reg = regularized(model, 1e-3);
    const RationalFunction sxx =
        (response(reg.osc).abs2() * cdouble{reg.noise.s_ff}).reduced();
    add(rep, "S_xx integral: residues vs quadrature", integrate_spectrum(sxx),
        integrate_spectrum_quadrature(sxx), 1e-6);
  }

  // 5. Controlled purity: closed form vs the conditional-state construction.
  const ShapeParams sp = shape_params(model);
  const double mu = purity_mu(model.noise);
  const ControlledState ctrl =
      controlled_covariance(conditional_covariance_markovian(sp, mu));
  add(rep, "U_ctrl: closed form vs conditional route",
      u_ctrl_closed_form(sp, mu), ctrl.u_ctrl, 1e-10);

  // 6. Controlled covariance: frequency-integral route against the closed
  //    form, using the regularized output spectrum.
  try {
    const SystemModel reg = regularized(model, 1e-7);
    const RationalFunction phi = spectral_factorize(output_spectrum(reg));
    const WienerFilterPair filters = wiener_filters(reg, phi);
    const RationalFunction syy = output_spectrum(reg).rat();
    const ControllerSynthesis syn = synthesize(model);
    const GaussianState vi = controlled_covariance_integral(
        syn.k_ctrl, filters, syy, syn.conditional);
    add(rep, "controlled V_xx: integral vs closed form", vi.v_xx,
        ctrl.state.v_xx, 1e-4);
    add(rep, "controlled V_pp: integral vs closed form", vi.v_pp,
        ctrl.state.v_pp, 1e-4);
  } catch (const Error& e) {
    add_fail(rep, "controlled covariance: integral route", e.what());
  }

  // 7. Controlled covariance: Lyapunov equation on the closed loop.
  try {
    const ControllerSynthesis syn = synthesize(model);
    const ClosedLoopSystem loop =
        closed_loop_system(model, syn.controller.kernel());
    const GaussianState lyap = lyapunov_variance(loop);
    add(rep, "controlled V_xx: Lyapunov vs closed form", lyap.v_xx,
        ctrl.state.v_xx, near_ideal ? 1e-8 : 2e-2);
    add(rep, "controlled V_pp: Lyapunov vs closed form", lyap.v_pp,
        ctrl.state.v_pp, near_ideal ? 1e-8 : 2e-2);
    add(rep, "controlled V_xp: Lyapunov vs closed form", lyap.v_xp,
        ctrl.state.v_xp, near_ideal ? 1e-8 : 2e-2);

    if (opt.full) {
      // 8. Monte-Carlo simulation against the Lyapunov solution, judged
      //    against its own standard errors.
      SimulationConfig cfg;
      cfg.n_traj = opt.n_traj;
      cfg.seed = opt.seed;
      cfg.workers = opt.workers;
      const EmpiricalState sim =
          simulate_closed_loop(model, syn.controller.kernel(), cfg);
      auto mc = [&](const std::string& nm, double got, double se,
                    double want) {
        // 5 sigma statistical band plus a 1% discretization allowance.
        const double tol =
            (5.0 * se + 0.01 * std::abs(want)) / std::max(1e-30, std::abs(want));
        std::ostringstream note;
        note << "stderr " << se;
        add(rep, nm, got, want, tol, note.str());
      };
      mc("controlled V_xx: Monte-Carlo vs Lyapunov", sim.mean.v_xx,
         sim.std_err.v_xx, lyap.v_xx);
      mc("controlled V_pp: Monte-Carlo vs Lyapunov", sim.mean.v_pp,
         sim.std_err.v_pp, lyap.v_pp);
      mc("controlled V_xp: Monte-Carlo vs Lyapunov", sim.mean.v_xp,
         sim.std_err.v_xp, lyap.v_xp);
    }
  } catch (const Error& e) {
    add_fail(rep, "controlled covariance: state-space route", e.what());
  }

  if (opt.full) {
    // 9. Brute-force probe: no controller in the stable three-parameter
    //    family beats the analytic optimum, and the grid contains it.
    try {
      const ControllerSearchResult search =
          brute_force_controller_search(model, 13, opt.workers);
      std::ostringstream note;
      note << search.stable << "/" << search.evaluated << " grid points stable";
      add(rep, "optimality: grid-search minimum vs U_ctrl", search.best_u,
          ctrl.u_ctrl, 1e-3, note.str());
    } catch (const Error& e) {
      add_fail(rep, "optimality: grid search", e.what());
    }
  }

  return rep;
}

}  // namespace qoc
