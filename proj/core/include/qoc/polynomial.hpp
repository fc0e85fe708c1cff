#ifndef QOC_POLYNOMIAL_HPP
#define QOC_POLYNOMIAL_HPP

#include <complex>
#include <initializer_list>
#include <vector>

namespace qoc {

using cdouble = std::complex<double>;

/// Polynomial in the angular frequency Omega with complex coefficients,
/// stored in ascending degree. Trailing near-zero coefficients are trimmed
/// on construction; the zero polynomial is kept as a single zero coefficient.
class Polynomial {
 public:
  Polynomial() : coeffs_{cdouble{0.0}} {}
  Polynomial(std::initializer_list<cdouble> coeffs);
  explicit Polynomial(std::vector<cdouble> coeffs);
  explicit Polynomial(double constant) : coeffs_{cdouble{constant}} {}
  explicit Polynomial(cdouble constant) : coeffs_{constant} {}

  static Polynomial monomial(int degree, cdouble scale = 1.0);
  /// scale * prod_k (Omega - roots[k])
  static Polynomial from_roots(const std::vector<cdouble>& roots,
                               cdouble scale = 1.0);

  const std::vector<cdouble>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;
  cdouble leading() const { return coeffs_.back(); }
  cdouble operator[](int k) const;

  cdouble eval(cdouble omega) const;
  Polynomial derivative() const;
  /// Coefficients of p(center + eps) in powers of eps (Taylor shift).
  std::vector<cdouble> shifted(cdouble center) const;
  /// p*(Omega): coefficient-wise conjugate, i.e. conj(p(conj(Omega))).
  /// On the real axis this equals conj(p(Omega)).
  Polynomial conj_reflect() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cdouble s) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  /// Long division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  double coeff_scale() const;  // max |coeff|

 private:
  void trim();
  std::vector<cdouble> coeffs_;
};

inline Polynomial operator*(cdouble s, const Polynomial& p) { return p * s; }

struct PolyRoot {
  cdouble value;
  int multiplicity;
};

/// All complex roots (with multiplicity, clustered at relative tolerance
/// 1e-7) via companion-matrix eigenvalues plus one Newton polish step.
/// Throws AlgebraError for degree-0 input or non-convergence.
std::vector<PolyRoot> roots(const Polynomial& p);

/// Flat root list, multiplicities expanded.
std::vector<cdouble> roots_flat(const Polynomial& p);

}  // namespace qoc

#endif
