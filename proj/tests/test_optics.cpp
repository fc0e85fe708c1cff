#include <cmath>
#include <random>

#include "doctest.h"
#include "qoc/errors.hpp"
#include "qoc/optics.hpp"

using namespace qoc;

TEST_CASE("configuration validation") {
  ReadoutConfig cfg;
  cfg.omega_q = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.phi = 0.5 * M_PI;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.loss = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.squeeze_db = -3.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("input covariance has unit determinant") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> db(0.0, 20.0);
  std::uniform_real_distribution<double> ang(0.0, M_PI);
  for (int trial = 0; trial < 30; ++trial) {
    auto q = input_covariance(db(rng), ang(rng));
    CHECK(q.s11 * q.s22 - q.s12 * q.s12 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.s11 > 0.0);
    CHECK(q.s22 > 0.0);
  }
  auto v = input_covariance(0.0, 0.3);
  CHECK(v.s11 == doctest::Approx(1.0));
  CHECK(v.s22 == doctest::Approx(1.0));
  CHECK(std::abs(v.s12) < 1e-14);
}

TEST_CASE("lossless readout is a pure measurement") {
  std::mt19937 rng(73);
  std::uniform_real_distribution<double> phi_d(-1.4, 1.4);
  std::uniform_real_distribution<double> db(0.0, 20.0);
  std::uniform_real_distribution<double> ang(0.0, M_PI);
  std::uniform_real_distribution<double> logq(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    ReadoutConfig cfg;
    cfg.omega_q = std::pow(10.0, logq(rng));
    cfg.phi = phi_d(rng);
    cfg.squeeze_db = db(rng);
    cfg.squeeze_angle = ang(rng);
    CHECK(purity_mu(to_markovian(cfg)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("loss degrades the measurement purity") {
  ReadoutConfig cfg;
  cfg.loss = 0.05;
  CHECK(purity_mu(to_markovian(cfg)) > 1.0 + 1e-4);
  cfg.loss = 0.2;
  CHECK(purity_mu(to_markovian(cfg)) > 1.0 + 1e-3);
}

TEST_CASE("classical factor: closed form vs frequency scan") {
  for (double zf : {0.1, 0.5}) {
    for (double zx : {0.2, 0.8}) {
      ReadoutConfig cfg;
      cfg.zeta_f = zf;
      cfg.zeta_x = zx;
      CHECK(classical_factor(cfg) ==
            doctest::Approx(classical_factor_numeric(cfg)).epsilon(1e-5));
    }
  }
}

TEST_CASE("free mass at phase quadrature cannot beat the SQL") {
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> logq(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    ReadoutConfig cfg;
    cfg.omega_q = std::pow(10.0, logq(rng));
    CHECK(free_mass_occupation(cfg) >= 0.5 - 1e-10);
  }
}

TEST_CASE("variational readout of the lossless free mass breaks a half") {
  // With phi free, vacuum input, no loss, no classical noise, the minimum
  // occupation drops below the phase-quadrature floor of 1/2.
  auto opt = minimize_occupation(ClassicalBudget{}, 0.0, 0.0);
  CHECK(opt.converged);
  CHECK(opt.n_eff < 0.5);
  CHECK(std::abs(opt.config.phi) > 1e-3);
}

TEST_CASE("classical budget helper") {
  auto b = ClassicalBudget::symmetric(0.08);
  CHECK(b.eta_cl2() == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(b.zeta_f == doctest::Approx(b.zeta_x));
  CHECK_THROWS_AS(ClassicalBudget::symmetric(-1.0), DomainError);
}
