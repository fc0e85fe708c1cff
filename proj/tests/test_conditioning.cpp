#include <cmath>
#include <random>

#include "doctest.h"
#include "qoc/conditioning.hpp"
#include "qoc/errors.hpp"

using namespace qoc;

namespace {

SystemModel random_model(std::mt19937& rng, double gamma_p = 0.0) {
  std::uniform_real_distribution<double> mu_d(1.0, 10.0);
  std::uniform_real_distribution<double> q_d(-0.999, 0.999);
  std::uniform_real_distribution<double> logb(-0.5, 0.5);
  const double mu = mu_d(rng);
  const double q = q_d(rng);
  const double b = std::pow(10.0, logb(rng));
  const double a = q * b;
  const double s_zz = mu * kHbar / std::sqrt(b * b - a * a);
  const double s_zf = s_zz * (a - 1.0);
  const double s_ff = (mu * mu * kHbar * kHbar + s_zf * s_zf) / s_zz;
  return {Oscillator{1.0, gamma_p}, MarkovianNoise{s_zz, s_ff, s_zf}};
}

const SystemModel kFixture{Oscillator{1.0, 0.0}, MarkovianNoise{1.0, 1.0, 0.0}};

}  // namespace

TEST_CASE("gaussian state validation and purity") {
  GaussianState g{1.0, 1.0, 0.0};
  CHECK(g.purity() == doctest::Approx(1.0));
  CHECK(g.occupation() == doctest::Approx(0.5));
  CHECK_THROWS_AS((GaussianState{1.0, 1.0, 1.5}.validate()), DomainError);
  CHECK_THROWS_AS((GaussianState{-1.0, 1.0, 0.0}.validate()), DomainError);
}

TEST_CASE("conditional covariance of the reference model") {
  auto v = conditional_covariance_markovian(kFixture);
  CHECK(v.v_xx == doctest::Approx(0.4550899).epsilon(1e-6));
  CHECK(v.v_pp == doctest::Approx(0.6435943).epsilon(1e-6));
  CHECK(v.v_xp == doctest::Approx(0.2071068).epsilon(1e-6));
  // Conditional state of a pure measurement is pure: U_c = hbar / 2.
  CHECK(v.purity() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("closed form vs Riccati on random models") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_model(rng);
    auto closed = conditional_covariance_markovian(m);
    auto care = conditional_covariance_general(m);
    CHECK(closed.v_xx == doctest::Approx(care.v_xx).epsilon(1e-8));
    CHECK(closed.v_pp == doctest::Approx(care.v_pp).epsilon(1e-8));
    CHECK(closed.v_xp == doctest::Approx(care.v_xp).epsilon(1e-8));
  }
}

TEST_CASE("conditional purity is exactly mu hbar / 2") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_model(rng);
    const double mu = purity_mu(m.noise);
    auto v = conditional_covariance_markovian(m);
    CHECK(v.purity() == doctest::Approx(0.5 * mu * kHbar).epsilon(1e-10));
  }
}

TEST_CASE("wiener filters are causal") {
  SystemModel m = kFixture;
  m.osc.gamma_p = 1e-3;
  auto phi = spectral_factorize(output_spectrum(m));
  auto filters = wiener_filters(m, phi);
  for (const auto* k : {&filters.k_x, &filters.k_p}) {
    CHECK(k->is_proper());
    for (const auto& rt : roots(k->den())) CHECK(rt.value.imag() < 0.0);
  }
}

TEST_CASE("wiener integral route matches the Riccati solve") {
  std::mt19937 rng(61);
  for (double gamma : {1e-2, 1e-4}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto m = random_model(rng, gamma);
      auto care = conditional_covariance_general(m);
      auto wie = conditional_covariance_wiener(m);
      CHECK(wie.v_xx == doctest::Approx(care.v_xx).epsilon(1e-6));
      CHECK(wie.v_pp == doctest::Approx(care.v_pp).epsilon(1e-6));
      CHECK(wie.v_xp == doctest::Approx(care.v_xp).epsilon(1e-6));
    }
  }
}

TEST_CASE("damping shifts the conditional state off the undamped value") {
  SystemModel m = kFixture;
  m.osc.gamma_p = 0.1;
  auto v = conditional_covariance_general(m);
  // The model damps without the matching thermal force noise, so the
  // estimation error shrinks below the undamped (pure) value.
  CHECK(v.purity() < 0.5 * kHbar - 1e-3);
  // The undamped limit is recovered continuously.
  m.osc.gamma_p = 1e-6;
  auto v0 = conditional_covariance_general(m);
  auto closed = conditional_covariance_markovian(kFixture);
  CHECK(v0.v_xx == doctest::Approx(closed.v_xx).epsilon(1e-4));
  CHECK(v0.v_pp == doctest::Approx(closed.v_pp).epsilon(1e-4));
}
