#include "qoc/spectra.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qoc/errors.hpp"

namespace qoc {

namespace {
constexpr double kGridRel = 1e-9;
constexpr double kRealAxisRel = 1e-9;

// Representative frequency scale from the roots of a rational function.
double freq_scale(const RationalFunction& r) {
  double s = 1.0;
  auto add = [&s](const Polynomial& p) {
    if (p.degree() < 1) return;
    for (const auto& rt : roots(p)) s = std::max(s, std::abs(rt.value));
  };
  add(r.num());
  add(r.den());
  return s;
}
}  // namespace

SpectralDensity::SpectralDensity(RationalFunction rat, bool auto_spectrum)
    : rat_(std::move(rat)), auto_spectrum_(auto_spectrum) {
  // Sample-grid validation: real, nonnegative, and (for auto-spectra) even.
  // Grid offset is irrational-ish so marginal real-axis poles are not hit.
  const double scale = freq_scale(rat_);
  constexpr int kN = 64;
  double vmax = 0.0;
  std::vector<cdouble> plus(kN), minus(kN);
  for (int k = 0; k < kN; ++k) {
    const double omega = scale * 4.0 * (k + 0.318309886) / kN;
    plus[k] = rat_.eval(omega);
    minus[k] = rat_.eval(-omega);
    vmax = std::max({vmax, std::abs(plus[k]), std::abs(minus[k])});
  }
  for (int k = 0; k < kN; ++k) {
    for (const cdouble v : {plus[k], minus[k]}) {
      if (std::abs(v.imag()) > kGridRel * std::max(1.0, std::abs(v)))
        throw DomainError("spectral density not real on the real axis");
      if (v.real() < -kGridRel * vmax)
        throw DomainError("spectral density negative on the real axis");
    }
    if (auto_spectrum_ &&
        std::abs(plus[k] - minus[k]) >
            1e-6 * std::max(1.0, std::abs(plus[k])))
      throw DomainError("auto-spectrum not even in Omega");
  }
}

RationalFunction spectral_factorize(const SpectralDensity& s) {
  const RationalFunction r = s.rat().reduced();
  const double scale = freq_scale(r);
  const double band = kRealAxisRel * scale;

  auto pick_lower = [&](const Polynomial& p) -> std::vector<cdouble> {
    std::vector<cdouble> lower;
    if (p.degree() < 1) return lower;
    // An axis root of a nonnegative spectrum has even multiplicity, but a
    // numerically split pair can land as two nearby odd-multiplicity axis
    // roots; collect axis roots first and re-merge before the parity check.
    struct AxisRoot {
      double pos;
      int mult;
    };
    std::vector<AxisRoot> axis;
    for (const auto& rt : roots(p)) {
      // A multiplicity-m root is only located to ~eps^(1/m); widen the
      // real-axis band accordingly so an exactly-double axis root whose
      // numerical image sits 1e-8 off the axis still splits evenly.
      const double mult_band =
          scale * 10.0 * std::pow(1e-13, 1.0 / rt.multiplicity);
      if (std::abs(rt.value.imag()) <= std::max(band, mult_band)) {
        axis.push_back({rt.value.real(), rt.multiplicity});
      } else if (rt.value.imag() < 0.0) {
        for (int k = 0; k < rt.multiplicity; ++k) lower.push_back(rt.value);
      }
    }
    std::sort(axis.begin(), axis.end(),
              [](const AxisRoot& a, const AxisRoot& b) { return a.pos < b.pos; });
    const double pair_band = scale * 10.0 * std::pow(1e-13, 0.5);
    for (size_t i = 0; i < axis.size();) {
      double weighted = axis[i].pos * axis[i].mult;
      int mult = axis[i].mult;
      size_t j = i + 1;
      while (j < axis.size() && axis[j].pos - axis[j - 1].pos <= pair_band) {
        weighted += axis[j].pos * axis[j].mult;
        mult += axis[j].mult;
        ++j;
      }
      if (mult % 2 != 0) {
        std::ostringstream msg;
        msg << "spectral_factorize: real-axis root of odd multiplicity at "
               "Omega = "
            << weighted / mult;
        throw MarginalSpectrumError(msg.str());
      }
      for (int k = 0; k < mult / 2; ++k)
        lower.push_back({weighted / mult, 0.0});
      i = j;
    }
    return lower;
  };

  const auto zeros = pick_lower(r.num());
  const auto poles = pick_lower(r.den());
  if (static_cast<int>(2 * zeros.size()) != r.num().degree() ||
      static_cast<int>(2 * poles.size()) != r.den().degree())
    throw NonFactorizableError(
        "spectral_factorize: roots do not split into conjugate pairs");

  const cdouble lead = r.num().leading() / r.den().leading();
  if (!(lead.real() > 0.0) ||
      std::abs(lead.imag()) > kGridRel * std::abs(lead))
    throw NonFactorizableError(
        "spectral_factorize: leading coefficient not positive real");

  RationalFunction phi{Polynomial::from_roots(zeros, std::sqrt(lead.real())),
                       Polynomial::from_roots(poles)};

  // Round-trip check |phi_+|^2 = S on a grid.
  double worst = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double omega = scale * 3.0 * k / 40.0 + scale * 1e-3;
    const double sv = s.rat().eval(omega).real();
    const double pv = std::norm(phi.eval(omega));
    worst = std::max(worst, std::abs(pv - sv) / std::max(1e-300, std::abs(sv)));
  }
  if (worst > 1e-8) {
    std::ostringstream msg;
    msg << "spectral_factorize: |phi_+|^2 deviates from S by relative " << worst;
    throw NonFactorizableError(msg.str());
  }
  return phi;
}

double integrate_spectrum(const SpectralDensity& s) {
  return integrate_spectrum(s.rat());
}

double integrate_spectrum(const RationalFunction& integrand) {
  const RationalFunction r = integrand.reduced();
  if (r.is_zero()) return 0.0;
  if (r.relative_degree() < 2) {
    std::ostringstream msg;
    msg << "integrate_spectrum: non-integrable tail, integrand decays like "
           "Omega^"
        << -r.relative_degree();
    throw DivergenceError(msg.str());
  }
  const double scale = freq_scale(r);
  const double band = kRealAxisRel * scale;

  // (1/2) * (1/2pi) * closed upper contour = (i/2) * sum of upper residues.
  cdouble res_sum = 0.0;
  for (const auto& t : partial_fractions(r).terms) {
    if (std::abs(t.pole.imag()) <= band)
      throw DivergenceError("integrate_spectrum: pole on the real axis");
    if (t.pole.imag() > 0.0 && t.order == 1) res_sum += t.coeff;
  }
  const cdouble val = cdouble{0.0, 0.5} * res_sum;
  return val.real();
}

double integrate_spectrum_quadrature(const RationalFunction& integrand) {
  return integrate_halfline(
      [&integrand](double omega) { return integrand.eval(omega).real(); });
}

double integrate_halfline(const std::function<double(double)>& f) {
  return integrate_halfline(f, {});
}

double integrate_halfline(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints) {
  using boost::math::quadrature::gauss_kronrod;
  // Segment boundaries let the adaptive rule find features (e.g. gamma-narrow
  // resonance peaks) that a single pass over [0, inf) can step over.
  std::vector<double> edges{0.0};
  for (double b : breakpoints)
    if (b > edges.back()) edges.push_back(b);
  double total = 0.0, err = 0.0;
  for (size_t k = 0; k + 1 < edges.size(); ++k)
    total += gauss_kronrod<double, 61>::integrate(f, edges[k], edges[k + 1],
                                                  15, 1e-10, &err);
  total += gauss_kronrod<double, 61>::integrate(
      f, edges.back(), std::numeric_limits<double>::infinity(), 15, 1e-10,
      &err);
  return total / (2.0 * M_PI);
}

}  // namespace qoc
