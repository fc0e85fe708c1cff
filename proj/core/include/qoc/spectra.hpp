#ifndef QOC_SPECTRA_HPP
#define QOC_SPECTRA_HPP

#include <functional>

#include "qoc/rational.hpp"

namespace qoc {

/// Single-sided rational spectral density, real and nonnegative on the real
/// axis. Our white-noise convention: spectrum S has autocorrelation
/// (S/2) delta(t - t').
class SpectralDensity {
 public:
  explicit SpectralDensity(RationalFunction rat, bool auto_spectrum = true);

  const RationalFunction& rat() const { return rat_; }
  bool auto_spectrum() const { return auto_spectrum_; }
  double eval(double omega) const { return rat_.eval(omega).real(); }

 private:
  RationalFunction rat_;
  bool auto_spectrum_;
};

/// Causal spectral factor phi_+ with phi_+ phi_+^* = S on the real axis and
/// all poles and zeros in the (closed) lower half-plane. Strictly lower when
/// S has no real-axis roots; real-axis roots of even order are split between
/// the factors, odd order throws MarginalSpectrumError. A negative lobe
/// throws NonFactorizableError.
RationalFunction spectral_factorize(const SpectralDensity& s);

/// integral_0^inf S(Omega) dOmega / (2 pi) by residue summation over
/// upper-half-plane poles of the even extension.
/// Throws DivergenceError if deg den - deg num < 2 or poles touch the axis.
double integrate_spectrum(const SpectralDensity& s);
double integrate_spectrum(const RationalFunction& integrand);

/// Same integral by adaptive Gauss-Kronrod quadrature (independent route).
double integrate_spectrum_quadrature(const RationalFunction& integrand);

/// integral_0^inf f(Omega) dOmega / 2pi for an arbitrary decaying integrand
/// supplied pointwise. Breakpoints force segment boundaries so narrow
/// features (width << their location) are not stepped over.
double integrate_halfline(const std::function<double(double)>& f);
double integrate_halfline(const std::function<double(double)>& f,
                          const std::vector<double>& breakpoints);

}  // namespace qoc

#endif
