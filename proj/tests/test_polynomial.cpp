#include <cmath>
#include <random>

#include "doctest.h"
#include "qoc/errors.hpp"
#include "qoc/polynomial.hpp"

using namespace qoc;

TEST_CASE("construction trims trailing noise") {
  Polynomial p{1.0, 2.0, cdouble{1e-16, 0.0}};
  CHECK(p.degree() == 1);
  CHECK(Polynomial{0.0}.is_zero());
  CHECK_FALSE(Polynomial{0.0, 1.0}.is_zero());
}

TEST_CASE("eval and derivative") {
  Polynomial p{1.0, -2.0, 3.0};  // 1 - 2w + 3w^2
  CHECK(p.eval(2.0) == cdouble{9.0});
  Polynomial d = p.derivative();
  CHECK(d.degree() == 1);
  CHECK(d.eval(2.0) == cdouble{10.0});
}

TEST_CASE("from_roots / roots round trip") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<cdouble> rts;
    for (int k = 0; k < 5; ++k) rts.push_back({u(rng), u(rng)});
    Polynomial p = Polynomial::from_roots(rts, {1.3, -0.4});
    auto found = roots_flat(p);
    REQUIRE(found.size() == rts.size());
    for (cdouble r : rts) {
      double best = 1e30;
      for (cdouble f : found) best = std::min(best, std::abs(f - r));
      CHECK(best < 1e-7);
    }
  }
}

TEST_CASE("multiple roots cluster and polish") {
  Polynomial p = Polynomial::from_roots({2.0, 2.0, 2.0, -1.0});
  auto rs = roots(p);
  REQUIRE(rs.size() == 2);
  for (const auto& r : rs) {
    if (r.multiplicity == 3)
      CHECK(std::abs(r.value - cdouble{2.0}) < 1e-9);
    else
      CHECK(std::abs(r.value - cdouble{-1.0}) < 1e-9);
  }
}

TEST_CASE("roots of degree zero throws") {
  CHECK_THROWS_AS(roots(Polynomial(3.0)), AlgebraError);
  CHECK_THROWS_AS(roots(Polynomial(0.0)), AlgebraError);
}

TEST_CASE("divmod identity on random pairs") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cdouble> pc(7), dc(3);
    for (auto& c : pc) c = {u(rng), u(rng)};
    for (auto& c : dc) c = {u(rng), u(rng)};
    dc.back() += 2.0;  // keep the divisor well conditioned
    Polynomial p(pc), d(dc);
    auto [q, r] = p.divmod(d);
    CHECK(r.degree() < d.degree());
    Polynomial back = q * d + r;
    for (int k = 0; k <= p.degree(); ++k)
      CHECK(std::abs(back[k] - p[k]) < 1e-12);
  }
}

TEST_CASE("taylor shift") {
  Polynomial p{1.0, 2.0, 1.0};  // (w + 1)^2
  auto s = p.shifted(-1.0);     // expect eps^2
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0]) < 1e-14);
  CHECK(std::abs(s[1]) < 1e-14);
  CHECK(std::abs(s[2] - cdouble{1.0}) < 1e-14);
}

TEST_CASE("conj_reflect equals conjugate on the real axis") {
  Polynomial p{cdouble{1.0, 2.0}, cdouble{-0.5, 0.3}, cdouble{0.0, 1.0}};
  for (double w : {-1.7, 0.3, 2.4})
    CHECK(std::abs(p.conj_reflect().eval(w) - std::conj(p.eval(w))) < 1e-14);
}
