#include <cmath>
#include <random>

#include "doctest.h"
#include "qoc/errors.hpp"
#include "qoc/rational.hpp"

using namespace qoc;

namespace {

RationalFunction random_strictly_proper(std::mt19937& rng, int npoles) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> im(0.2, 2.0);
  std::vector<cdouble> poles;
  for (int k = 0; k < npoles; ++k) {
    double s = (rng() & 1) ? 1.0 : -1.0;
    poles.push_back({u(rng), s * im(rng)});
  }
  std::vector<cdouble> zeros;
  for (int k = 0; k + 2 < npoles; ++k) zeros.push_back({u(rng), u(rng)});
  return {Polynomial::from_roots(zeros, {u(rng) + 3.0, u(rng)}),
          Polynomial::from_roots(poles)};
}

double grid_distance(const RationalFunction& a, const RationalFunction& b) {
  double worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double w = -6.0 + 12.0 * (k + 0.37) / 40.0;
    worst = std::max(worst, std::abs(a.eval(w) - b.eval(w)));
  }
  return worst;
}

}  // namespace

TEST_CASE("reduced cancels exactly common roots") {
  Polynomial common = Polynomial::from_roots({cdouble{1.0, -0.5}});
  RationalFunction r{common * Polynomial{1.0, 1.0},
                     common * Polynomial::from_roots({cdouble{0.0, -2.0}})};
  auto red = r.reduced();
  CHECK(red.num().degree() == 1);
  CHECK(red.den().degree() == 1);
  CHECK(grid_distance(r, red) < 1e-10);
}

TEST_CASE("reduced is the identity when nothing cancels") {
  RationalFunction r{Polynomial{1.0, 2.0},
                     Polynomial::from_roots({cdouble{0.0, -1.0}})};
  auto red = r.reduced();
  // Same coefficients bit for bit; no reconstruction noise allowed.
  CHECK(red.num() == r.num());
  CHECK(red.den() == r.den());
}

TEST_CASE("zero operand does not inflate denominators") {
  RationalFunction r{Polynomial{1.0},
                     Polynomial::from_roots({cdouble{0.0, -1.0}})};
  auto sum = r + RationalFunction();
  CHECK(sum.den().degree() == 1);
  auto prod = r * RationalFunction();
  CHECK(prod.is_zero());
}

TEST_CASE("partial fractions reassemble") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    auto r = random_strictly_proper(rng, 4);
    auto pf = partial_fractions(r);
    auto back = assemble(pf.polynomial_part[0], pf.terms);
    CHECK(grid_distance(r, back) < 1e-8);
  }
}

TEST_CASE("partial fractions with a double pole") {
  const cdouble p{0.5, -1.0};
  RationalFunction r{Polynomial{1.0, 1.0},
                     Polynomial::from_roots({p, p, cdouble{-1.0, 2.0}})};
  auto pf = partial_fractions(r);
  int max_order = 0;
  for (const auto& t : pf.terms) max_order = std::max(max_order, t.order);
  CHECK(max_order == 2);
  CHECK(grid_distance(r, assemble(0.0, pf.terms)) < 1e-9);
}

TEST_CASE("causal + anticausal recovers a strictly proper function") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    auto r = random_strictly_proper(rng, 5);
    auto c = causal_part(r);
    auto a = anticausal_part(r);
    CHECK(grid_distance(r, c + a) < 1e-8);
    // Idempotence and pole locations.
    CHECK(grid_distance(c, causal_part(c)) < 1e-8);
    if (c.den().degree() > 0)
      for (const auto& rt : roots(c.den())) CHECK(rt.value.imag() < 0.0);
    if (a.den().degree() > 0)
      for (const auto& rt : roots(a.den())) CHECK(rt.value.imag() > 0.0);
  }
}

TEST_CASE("real-axis pole policy") {
  RationalFunction r{Polynomial{1.0},
                     Polynomial::from_roots({cdouble{1.0, 0.0},
                                             cdouble{0.0, -2.0}})};
  CHECK_THROWS_AS(causal_part(r), MarginalPoleError);
  // gamma -> 0+ limit: the marginal pole belongs to the causal side.
  auto c = causal_part(r, RealAxisPoles::kCausal);
  CHECK(grid_distance(r, c) < 1e-9);
  auto a = anticausal_part(r, RealAxisPoles::kCausal);
  CHECK(a.is_zero());
}

TEST_CASE("abs2 is real and nonnegative on the axis") {
  RationalFunction r{Polynomial{cdouble{1.0, 0.3}, cdouble{0.0, -1.0}},
                     Polynomial::from_roots({cdouble{0.4, -0.8}})};
  auto s = r.abs2();
  for (double w : {-3.0, -0.5, 0.0, 1.1, 4.2}) {
    cdouble v = s.eval(w);
    CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
    CHECK(v.real() >= 0.0);
    CHECK(v.real() == doctest::Approx(std::norm(r.eval(w))).epsilon(1e-10));
  }
}

TEST_CASE("division by the zero rational throws") {
  RationalFunction r(1.0);
  CHECK_THROWS_AS(r / RationalFunction(), AlgebraError);
}
