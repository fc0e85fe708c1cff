#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qoc/control.hpp"
#include "qoc/errors.hpp"
#include "qoc/simulate.hpp"
#include "qoc/statespace.hpp"

using namespace qoc;

namespace {

const SystemModel kFixture{Oscillator{1.0, 0.0}, MarkovianNoise{1.0, 1.0, 0.0}};

}  // namespace

TEST_CASE("realization reproduces the transfer function") {
  // Proper but not strictly proper: (Omega^2 + 2) / (Omega^2 + i Omega + 1)
  // maps to a real rational in s = -i Omega.
  RationalFunction r{Polynomial{2.0, 0.0, 1.0},
                     Polynomial{1.0, cdouble{0.0, 1.0}, 1.0}};
  auto ss = realize(r);
  CHECK(ss.order() == 2);
  for (double w : {-2.1, -0.3, 0.0, 0.7, 3.3})
    CHECK(std::abs(ss.transfer(w) - r.eval(w)) < 1e-10);
}

TEST_CASE("realization rejects improper and complex kernels") {
  CHECK_THROWS_AS(realize(RationalFunction{Polynomial{0.0, 0.0, 1.0},
                                           Polynomial{1.0, 1.0}}),
                  AlgebraError);
  // A single pole off the imaginary s-axis pair structure: complex kernel.
  CHECK_THROWS_AS(
      realize(RationalFunction{Polynomial(1.0),
                               Polynomial{cdouble{-1.0, -1.0}, 1.0}}),
      AlgebraError);
}

TEST_CASE("closed-loop eigenvalues are the controller poles") {
  auto syn = synthesize(kFixture);
  auto loop = closed_loop_system(kFixture, syn.controller.kernel());
  require_stable(loop);
  Eigen::VectorXcd ev = loop.a.eigenvalues();
  std::vector<cdouble> want;
  for (cdouble om : {syn.controller.omega1, syn.controller.omega2,
                     syn.controller.omega3})
    want.push_back(cdouble{0.0, -1.0} * om);  // s = -i Omega
  for (cdouble s : want) {
    double best = 1e30;
    for (int k = 0; k < ev.size(); ++k)
      best = std::min(best, std::abs(cdouble(ev[k]) - s));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("lyapunov variance matches the closed form") {
  auto syn = synthesize(kFixture);
  auto loop = closed_loop_system(kFixture, syn.controller.kernel());
  auto v = lyapunov_variance(loop);
  CHECK(v.v_xx == doctest::Approx(0.6292452104).epsilon(1e-8));
  CHECK(v.v_pp == doctest::Approx(0.8898871107).epsilon(1e-8));
  CHECK(std::abs(v.v_xp) < 1e-8);
}

TEST_CASE("instability is detected with a pole report") {
  // Positive feedback destabilizes the loop.
  auto syn = synthesize(kFixture);
  auto bad = syn.controller;
  bad.c0 = -bad.c0;
  auto loop = closed_loop_system(kFixture, bad.kernel());
  CHECK_THROWS_AS(require_stable(loop), StabilityError);
  CHECK_THROWS_AS(lyapunov_variance(loop), StabilityError);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
  auto syn = synthesize(kFixture);
  SimulationConfig cfg;
  cfg.n_traj = 16;
  cfg.t_total = 60.0;
  cfg.seed = 7;
  auto a = simulate_closed_loop(kFixture, syn.controller.kernel(), cfg);
  auto b = simulate_closed_loop(kFixture, syn.controller.kernel(), cfg);
  CHECK(a.mean.v_xx == b.mean.v_xx);
  CHECK(a.mean.v_pp == b.mean.v_pp);
  CHECK(a.mean.v_xp == b.mean.v_xp);
  cfg.seed = 8;
  auto c = simulate_closed_loop(kFixture, syn.controller.kernel(), cfg);
  CHECK(c.mean.v_xx != a.mean.v_xx);
  // Worker count must not change the ensemble.
  cfg.seed = 7;
  cfg.workers = 1;
  auto d = simulate_closed_loop(kFixture, syn.controller.kernel(), cfg);
  CHECK(d.mean.v_xx == a.mean.v_xx);
}

TEST_CASE("simulated covariances bracket the lyapunov solution") {
  auto syn = synthesize(kFixture);
  auto loop = closed_loop_system(kFixture, syn.controller.kernel());
  auto v = lyapunov_variance(loop);
  SimulationConfig cfg;
  cfg.n_traj = 200;
  cfg.seed = 11;
  auto sim = simulate_closed_loop(kFixture, syn.controller.kernel(), cfg);
  CHECK(std::abs(sim.mean.v_xx - v.v_xx) < 5.0 * sim.std_err.v_xx);
  CHECK(std::abs(sim.mean.v_pp - v.v_pp) < 5.0 * sim.std_err.v_pp);
  CHECK(std::abs(sim.mean.v_xp - v.v_xp) < 5.0 * sim.std_err.v_xp);
}

TEST_CASE("simulation config validation") {
  SimulationConfig cfg;
  cfg.n_traj = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.burn_in = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}
