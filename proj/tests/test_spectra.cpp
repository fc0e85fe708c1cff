#include <cmath>
#include <random>

#include "doctest.h"
#include "qoc/errors.hpp"
#include "qoc/spectra.hpp"

using namespace qoc;

TEST_CASE("constructor rejects non-spectra") {
  // Odd in Omega.
  CHECK_THROWS_AS(SpectralDensity({Polynomial{1.0, 1.0}, Polynomial{2.0, 0.0, 1.0}}),
                  DomainError);
  // Negative lobe: Omega^2 - 1 over Omega^4 + 1.
  CHECK_THROWS_AS(
      SpectralDensity({Polynomial{-1.0, 0.0, 1.0}, Polynomial{1.0, 0.0, 0.0, 0.0, 1.0}}),
      DomainError);
}

TEST_CASE("factorization of Omega^4 + 1") {
  SpectralDensity s{{Polynomial{1.0, 0.0, 0.0, 0.0, 1.0}, Polynomial(1.0)}};
  auto phi = spectral_factorize(s);
  REQUIRE(phi.den().degree() == 0);
  REQUIRE(phi.num().degree() == 2);
  // phi_+ = Omega^2 + i sqrt2 Omega - 1 up to machine noise.
  const Polynomial want{-1.0, cdouble{0.0, std::sqrt(2.0)}, 1.0};
  for (int k = 0; k <= 2; ++k)
    CHECK(std::abs(phi.num()[k] - want[k]) < 1e-12);
}

TEST_CASE("random spectra factorize and round trip") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    // Build S = |q|^2 / |p|^2 from random lower-half roots with conjugate
    // real-axis symmetry (roots come in {-r*, r} pairs so S is even).
    auto half = [&](int n) {
      std::vector<cdouble> rts;
      for (int k = 0; k < n; ++k) {
        cdouble r{re(rng), -u(rng)};
        rts.push_back(r);
        rts.push_back(-std::conj(r));
      }
      return rts;
    };
    RationalFunction mine{Polynomial::from_roots(half(1), u(rng)),
                          Polynomial::from_roots(half(2))};
    SpectralDensity s{mine.abs2()};
    auto phi = spectral_factorize(s);
    for (double w : {-2.3, -0.7, 0.4, 1.9}) {
      CHECK(std::norm(phi.eval(w)) ==
            doctest::Approx(s.eval(w)).epsilon(1e-7));
    }
    for (const auto& rt : roots(phi.den())) CHECK(rt.value.imag() < 0.0);
    for (const auto& rt : roots(phi.num())) CHECK(rt.value.imag() <= 1e-7);
  }
}

TEST_CASE("real-axis zeros of even order split between factors") {
  // S = Omega^2 / (Omega^4 + 1): double zero at 0 -> phi gets a simple zero.
  SpectralDensity s{{Polynomial{0.0, 0.0, 1.0},
                     Polynomial{1.0, 0.0, 0.0, 0.0, 1.0}}};
  auto phi = spectral_factorize(s);
  CHECK(std::abs(phi.eval(0.0)) < 1e-12);
  CHECK(std::norm(phi.eval(1.3)) == doctest::Approx(s.eval(1.3)).epsilon(1e-8));
}

TEST_CASE("lorentzian integral has the textbook value") {
  // integral_0^inf dOmega/2pi 1/(1+Omega^2) = 1/4.
  RationalFunction lor{Polynomial(1.0), Polynomial{1.0, 0.0, 1.0}};
  CHECK(integrate_spectrum(lor) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(integrate_spectrum_quadrature(lor) ==
        doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("residues agree with quadrature on random spectra") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cdouble> poles;
    for (int k = 0; k < 2; ++k) {
      cdouble r{re(rng), -u(rng)};
      poles.push_back(r);
      poles.push_back(-std::conj(r));
    }
    RationalFunction mine{Polynomial(u(rng)), Polynomial::from_roots(poles)};
    auto s = mine.abs2();
    const double a = integrate_spectrum(s);
    const double b = integrate_spectrum_quadrature(s);
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
    CHECK(a > 0.0);
  }
}

TEST_CASE("non-decaying integrand throws with the decay power named") {
  RationalFunction flat{Polynomial{1.0, 0.0, 1.0}, Polynomial{2.0, 0.0, 1.0}};
  CHECK_THROWS_AS(integrate_spectrum(flat), DivergenceError);
  try {
    integrate_spectrum(flat);
  } catch (const DivergenceError& e) {
    CHECK(std::string(e.what()).find("Omega^0") != std::string::npos);
  }
}

TEST_CASE("real-axis pole makes the integral divergent") {
  RationalFunction r{Polynomial(1.0),
                     Polynomial::from_roots({cdouble{1.0, 0.0}, cdouble{-1.0, 0.0},
                                             cdouble{0.0, -1.0}, cdouble{0.0, 1.0}})};
  CHECK_THROWS_AS(integrate_spectrum(r), DivergenceError);
}
