#include <cmath>
#include <random>

#include "doctest.h"
#include "qoc/errors.hpp"
#include "qoc/plant.hpp"

using namespace qoc;

namespace {

SystemModel random_model(std::mt19937& rng) {
  std::uniform_real_distribution<double> mu_d(1.0, 10.0);
  std::uniform_real_distribution<double> q_d(-0.999, 0.999);
  std::uniform_real_distribution<double> logb(-0.5, 0.5);
  const double mu = mu_d(rng);
  const double q = q_d(rng);  // A / B
  const double b = std::pow(10.0, logb(rng));
  const double a = q * b;
  // Invert the shape map at omega_p = 1: A = 1 + S_ZF/S_ZZ,
  // B^2 = A^2 + (mu hbar / S_ZZ)^2.
  const double s_zz = mu * kHbar / std::sqrt(b * b - a * a);
  const double s_zf = s_zz * (a - 1.0);
  const double s_ff = (mu * mu * kHbar * kHbar + s_zf * s_zf) / s_zz;
  return {Oscillator{1.0, 0.0}, MarkovianNoise{s_zz, s_ff, s_zf}};
}

}  // namespace

TEST_CASE("heisenberg bound on the noise triple") {
  CHECK_THROWS_AS(MarkovianNoise(1.0, 0.5, 0.0), DomainError);   // mu < 1
  CHECK_THROWS_AS(MarkovianNoise(1.0, 1.0, 1.01), DomainError);  // det < 0
  CHECK_THROWS_AS(MarkovianNoise(-1.0, 1.0, 0.0), DomainError);
  CHECK(purity_mu(MarkovianNoise{1.0, 1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(purity_mu(MarkovianNoise{2.0, 2.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("oscillator validation") {
  CHECK_THROWS_AS(Oscillator(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Oscillator(1.0, -0.1), DomainError);
}

TEST_CASE("shape parameters of the reference model") {
  SystemModel m{Oscillator{1.0, 0.0}, MarkovianNoise{1.0, 1.0, 0.0}};
  auto sp = shape_params(m);
  CHECK(sp.aw2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sp.bw2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  auto [a, b] = ab_params(m);
  CHECK(a == doctest::Approx(1.0));
  CHECK(b == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("shape parameters stay finite for the free mass") {
  SystemModel m{Oscillator{0.0, 0.0}, MarkovianNoise{2.0, 1.0, -0.5}};
  auto sp = shape_params(m);
  CHECK(sp.aw2 == doctest::Approx(-0.25));
  CHECK(sp.bw2 == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(ab_params(m), DomainError);
}

TEST_CASE("round trip through the random-model generator") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_model(rng);
    auto sp = shape_params(m);
    const double mu = purity_mu(m.noise);
    CHECK(mu >= 1.0);
    CHECK(sp.bw2 > 0.0);
    CHECK(std::abs(sp.ratio()) < 1.0);
    // B^2 - A^2 = (mu hbar / S_ZZ)^2 must hold by construction.
    CHECK(sp.bw2 * sp.bw2 - sp.aw2 * sp.aw2 ==
          doctest::Approx(std::pow(mu * kHbar / m.noise.s_zz, 2))
              .epsilon(1e-10));
  }
}

TEST_CASE("output spectrum is even and positive") {
  SystemModel m{Oscillator{1.0, 0.01}, MarkovianNoise{1.0, 2.0, 0.3}};
  auto s = output_spectrum(m);
  for (double w : {0.0, 0.4, 1.0, 2.7}) {
    CHECK(s.eval(w) > 0.0);
    CHECK(s.eval(w) == doctest::Approx(s.eval(-w)).epsilon(1e-12));
  }
}

TEST_CASE("force-referred spectrum matches S_yy / |R|^2") {
  SystemModel m{Oscillator{1.0, 0.0}, MarkovianNoise{1.0, 1.5, -0.2}};
  auto sg = force_referred_spectrum(m);
  auto syy = output_spectrum(m);
  auto r = response(m.osc);
  for (double w : {0.3, 0.8, 1.6, 3.0}) {
    CHECK(sg.eval(w) ==
          doctest::Approx(syy.eval(w) / std::norm(r.eval(w))).epsilon(1e-10));
  }
}

TEST_CASE("eta^2: closed form vs frequency scan") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_model(rng);
    const double closed = eta_squared(m);
    CHECK(closed == doctest::Approx(eta_squared_numeric(m)).epsilon(1e-8));
    CHECK(closed > 0.0);
  }
  // Reference model: eta^2 = sqrt2 - 1.
  SystemModel m{Oscillator{1.0, 0.0}, MarkovianNoise{1.0, 1.0, 0.0}};
  CHECK(eta_squared(m) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("free-mass SQL") {
  CHECK(sql_force(1.0) == doctest::Approx(2.0 * kHbar).epsilon(1e-14));
  CHECK(sql_force(2.0) == doctest::Approx(8.0 * kHbar).epsilon(1e-14));
}
