#include <cmath>

#include "doctest.h"
#include "qoc/colddamp.hpp"
#include "qoc/errors.hpp"

using namespace qoc;

TEST_CASE("critical temperature in SI units") {
  // 2 pi x 100 kHz, Q = 1e7: T_c = hbar omega Q / (2 sqrt2 k_B).
  ThermalEnvironment env{1.0, 1e7, 2.0 * M_PI * 1e5};
  auto ct = critical_temperature(env);
  const double want =
      kHbarSI * env.omega_p_si * env.quality / (2.0 * std::sqrt(2.0) * kBoltzmannSI);
  CHECK(ct.t_c == doctest::Approx(want).epsilon(1e-12));
  CHECK(ct.theta == doctest::Approx(1.0 / want).epsilon(1e-12));
}

TEST_CASE("minimum occupation closed form") {
  CHECK(n_opt(0.1) == doctest::Approx(0.2218984476).epsilon(1e-8));
  CHECK(n_opt(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(n_opt(1e-6) < 1e-2);  // ground-state approach as theta -> 0
  CHECK_THROWS_AS(n_opt(1.5), DomainError);
  CHECK_THROWS_AS(n_opt(-0.1), DomainError);
}

TEST_CASE("cold-damping model shape") {
  const double theta = 0.3, x = 0.7;
  auto m = cold_damping_model(theta, x);
  const double mu = purity_mu(m.noise);
  CHECK(mu * mu == doctest::Approx(1.0 + std::sqrt(2.0) * theta / x)
                       .epsilon(1e-10));
  auto [a, b] = ab_params(m);
  CHECK(a == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(b * b == doctest::Approx(1.0 + x * x + std::sqrt(2.0) * theta * x)
                     .epsilon(1e-10));
}

TEST_CASE("numerical minimization matches the closed form") {
  for (double theta : {0.1, 0.3, 0.5, 0.9}) {
    auto opt = minimize_over_strength(theta);
    CHECK(opt.n_eff == doctest::Approx(n_opt(theta)).epsilon(1e-6));
    const double want_x = std::pow(optimal_strength(theta), 2);
    CHECK(opt.x == doctest::Approx(want_x).epsilon(1e-4));
  }
}

TEST_CASE("optimal strength at theta = 0.1") {
  CHECK(optimal_strength(0.1) * optimal_strength(0.1) ==
        doctest::Approx(0.33353488).epsilon(1e-5));
  CHECK(optimal_strength(0.99) > optimal_strength(0.5));
}

TEST_CASE("above the transition N_eff decreases monotonically") {
  for (double theta : {2.0, 10.0}) {
    double prev = 1e30;
    for (double lx = -1.0; lx <= 6.0; lx += 0.25) {
      const double n = occupation_vs_strength(theta, std::pow(10.0, lx));
      CHECK(n < prev);
      prev = n;
    }
    // Saturates at 1/sqrt2 from above for strong measurement.
    const double tail = occupation_vs_strength(theta, 1e6);
    CHECK(tail == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(tail > 1.0 / std::sqrt(2.0));
  }
}

TEST_CASE("left-panel sweep covers the grid in order") {
  std::vector<double> thetas{0.1, 1.0};
  std::vector<double> xs{0.3, 1.0, 3.0};
  auto rows = fig2_left_sweep(thetas, xs);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].theta == 0.1);
  CHECK(rows[0].x == 0.3);
  CHECK(rows[5].theta == 1.0);
  CHECK(rows[5].x == 3.0);
  for (const auto& r : rows) CHECK(r.n_eff > 0.0);
  // Hotter curves sit above colder ones at fixed strength.
  CHECK(rows[3].n_eff > rows[0].n_eff);
}
