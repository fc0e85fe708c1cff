#include "qoc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qoc/errors.hpp"

namespace qoc {

namespace {
// Real-axis band (relative to pole scale) treated as marginal.
constexpr double kRealAxisRel = 1e-9;

double pole_scale(const std::vector<PolyRoot>& poles) {
  double s = 1.0;
  for (const auto& p : poles) s = std::max(s, std::abs(p.value));
  return s;
}
}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw AlgebraError("rational: zero denominator");
  // Normalize denominator to monic; keeps scales comparable.
  const cdouble lead = den_.leading();
  num_ = num_ * (1.0 / lead);
  den_ = den_ * (1.0 / lead);
}

cdouble RationalFunction::eval(cdouble omega) const {
  return num_.eval(omega) / den_.eval(omega);
}

int RationalFunction::relative_degree() const {
  if (num_.is_zero()) return std::numeric_limits<int>::max() / 2;
  return den_.degree() - num_.degree();
}

RationalFunction RationalFunction::conj_reflect() const {
  return {num_.conj_reflect(), den_.conj_reflect()};
}

RationalFunction RationalFunction::reduced(double tol) const {
  if (num_.is_zero()) return RationalFunction();
  if (num_.degree() == 0 || den_.degree() == 0) return *this;
  auto nr = roots(num_);
  auto dr = roots(den_);
  std::vector<int> dused(dr.size(), 0);
  std::vector<cdouble> nkeep, dkeep;
  for (auto& n : nr) {
    int remaining = n.multiplicity;
    while (remaining > 0) {
      // Cancel against the closest denominator root within tolerance, so a
      // lightly regularized pole pairs with its own image and not with the
      // mirrored one across the real axis.
      int best = -1;
      double bestd = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < dr.size(); ++j) {
        if (dused[j] >= dr[j].multiplicity) continue;
        const double d = std::abs(n.value - dr[j].value);
        if (d <= tol * std::max(1.0, std::abs(dr[j].value)) && d < bestd) {
          bestd = d;
          best = static_cast<int>(j);
        }
      }
      if (best < 0) break;
      ++dused[best];
      --remaining;
    }
    for (int k = 0; k < remaining; ++k) nkeep.push_back(n.value);
  }
  bool cancelled = false;
  for (size_t j = 0; j < dr.size(); ++j) {
    if (dused[j] > 0) cancelled = true;
    for (int k = dused[j]; k < dr[j].multiplicity; ++k)
      dkeep.push_back(dr[j].value);
  }
  // Root-finding + reconstruction costs ~1e-11 of coefficient noise; skip it
  // entirely when nothing cancels.
  if (!cancelled) return *this;
  const cdouble scale = num_.leading() / den_.leading();
  return {Polynomial::from_roots(nkeep, scale), Polynomial::from_roots(dkeep)};
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  // Zero terms must not inflate the common denominator.
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) return {num_ + o.num_, den_};
  return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return *this + (-o);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction();
  return {num_ * o.num_, den_ * o.den_};
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.num_.is_zero()) throw AlgebraError("rational: division by zero");
  return {num_ * o.den_, den_ * o.num_};
}

RationalFunction RationalFunction::operator*(cdouble s) const {
  return {num_ * s, den_};
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_}; }

PartialFractions partial_fractions(const RationalFunction& rin) {
  const RationalFunction r = rin.reduced();
  PartialFractions out;
  if (r.is_zero()) return out;
  if (r.den().degree() == 0) {
    out.polynomial_part = r.num() * (1.0 / r.den().leading());
    return out;
  }

  auto [quot, rem] = r.num().divmod(r.den());
  out.polynomial_part = quot;
  if (rem.is_zero()) return out;

  const auto poles = roots(r.den());
  for (const auto& p : poles) {
    // q(Omega) = rem / prod_{other}(Omega - p_j)^{m_j}; the partial-fraction
    // coefficients at this pole are the Taylor coefficients of q, obtained by
    // dividing Taylor series of rem and of the deflated denominator.
    Polynomial other(r.den().leading());
    for (const auto& q : poles) {
      if (&q == &p) continue;
      for (int k = 0; k < q.multiplicity; ++k)
        other = other * Polynomial{-q.value, 1.0};
    }
    const int m = p.multiplicity;
    std::vector<cdouble> tn = rem.shifted(p.value);
    std::vector<cdouble> td = other.shifted(p.value);
    tn.resize(m, 0.0);
    td.resize(m, 0.0);
    if (std::abs(td[0]) == 0.0)
      throw AlgebraError("partial_fractions: pole clustering failure");
    std::vector<cdouble> q(m);
    for (int k = 0; k < m; ++k) {
      cdouble acc = tn[k];
      for (int j = 1; j <= k; ++j) acc -= td[j] * q[k - j];
      q[k] = acc / td[0];
    }
    for (int l = 0; l < m; ++l)
      out.terms.push_back({p.value, m - l, q[l]});
  }
  return out;
}

RationalFunction assemble(cdouble constant,
                          const std::vector<PartialFractionTerm>& terms) {
  RationalFunction acc{Polynomial(constant), Polynomial(1.0)};
  // Group terms by pole to build a compact common denominator.
  std::vector<std::pair<cdouble, int>> poles;  // pole, max order
  for (const auto& t : terms) {
    bool found = false;
    for (auto& p : poles)
      if (p.first == t.pole) {
        p.second = std::max(p.second, t.order);
        found = true;
      }
    if (!found) poles.emplace_back(t.pole, t.order);
  }
  Polynomial den(1.0);
  for (const auto& p : poles)
    for (int k = 0; k < p.second; ++k) den = den * Polynomial{-p.first, 1.0};
  Polynomial num = Polynomial(constant) * den;
  for (const auto& t : terms) {
    Polynomial partial(cdouble(t.coeff));
    for (const auto& p : poles) {
      const int pow = (p.first == t.pole) ? p.second - t.order : p.second;
      for (int k = 0; k < pow; ++k)
        partial = partial * Polynomial{-p.first, 1.0};
    }
    num = num + partial;
  }
  return {num, den};
}

namespace {
RationalFunction half_plane_part(const RationalFunction& r, bool lower,
                                 bool include_constant,
                                 RealAxisPoles policy) {
  auto pf = partial_fractions(r);
  const auto dr = r.reduced().den().degree() > 0
                      ? roots(r.reduced().den())
                      : std::vector<PolyRoot>{};
  const double band = kRealAxisRel * pole_scale(dr);
  std::vector<PartialFractionTerm> keep;
  for (const auto& t : pf.terms) {
    bool is_lower = t.pole.imag() < 0.0;
    if (std::abs(t.pole.imag()) <= band) {
      if (policy == RealAxisPoles::kReject) {
        std::ostringstream msg;
        msg << "causal_part: pole on the real axis at Omega = " << t.pole.real()
            << "; regularize the model (gamma floor) before projecting";
        throw MarginalPoleError(msg.str());
      }
      is_lower = true;  // gamma -> 0+ limit: marginal poles are causal
    }
    if (is_lower == lower) keep.push_back(t);
  }
  const cdouble c0 = include_constant ? pf.polynomial_part[0] : cdouble{0.0};
  return assemble(c0, keep);
}
}  // namespace

RationalFunction causal_part(const RationalFunction& r, RealAxisPoles policy) {
  return half_plane_part(r, /*lower=*/true, /*include_constant=*/true, policy);
}

RationalFunction anticausal_part(const RationalFunction& r,
                                 RealAxisPoles policy) {
  return half_plane_part(r, /*lower=*/false, /*include_constant=*/false,
                         policy);
}

}  // namespace qoc
