#ifndef QOC_RATIONAL_HPP
#define QOC_RATIONAL_HPP

#include <vector>

#include "qoc/polynomial.hpp"

namespace qoc {

/// Ratio of complex-coefficient polynomials in Omega. Kept unreduced;
/// reduced() cancels common roots at relative tolerance 1e-8.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(1.0) {}
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(double constant) : num_(constant), den_(1.0) {}
  explicit RationalFunction(cdouble constant) : num_(constant), den_(1.0) {}

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  cdouble eval(cdouble omega) const;
  /// deg den - deg num (>= 0 for proper functions; zero rational -> large).
  int relative_degree() const;
  bool is_proper() const { return relative_degree() >= 0; }

  RationalFunction conj_reflect() const;
  RationalFunction reduced(double tol = 1e-8) const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator*(cdouble s) const;
  RationalFunction operator-() const;

  /// |r|^2 on the real axis as a rational with real nonnegative values:
  /// r * conj_reflect(r).
  RationalFunction abs2() const { return *this * conj_reflect(); }

 private:
  Polynomial num_, den_;
};

/// One partial-fraction term coeff/(Omega - pole)^order.
struct PartialFractionTerm {
  cdouble pole;
  int order;
  cdouble coeff;
};

struct PartialFractions {
  Polynomial polynomial_part;
  std::vector<PartialFractionTerm> terms;
};

/// Exact partial-fraction decomposition (multiple poles allowed).
PartialFractions partial_fractions(const RationalFunction& r);

/// Rebuild a rational from a constant plus a set of terms.
RationalFunction assemble(cdouble constant,
                          const std::vector<PartialFractionTerm>& terms);

/// How to treat poles sitting on the real axis during the causal split.
/// kCausal realizes the gamma -> 0+ limit of a damped plant, where marginal
/// poles belong to the causal side.
enum class RealAxisPoles { kReject, kCausal };

/// Causal part [r]_+ : partial-fraction terms with poles strictly in the
/// lower half-plane, plus the constant term of the polynomial part.
/// Throws MarginalPoleError for real-axis poles under kReject.
RationalFunction causal_part(const RationalFunction& r,
                             RealAxisPoles policy = RealAxisPoles::kReject);

/// Anticausal complement (upper-half-plane terms only, no constant).
RationalFunction anticausal_part(const RationalFunction& r,
                                 RealAxisPoles policy = RealAxisPoles::kReject);

}  // namespace qoc

#endif
