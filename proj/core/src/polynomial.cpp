#include "qoc/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qoc/errors.hpp"

namespace qoc {

namespace {
constexpr double kTrimRel = 1e-13;
constexpr double kClusterRel = 1e-7;
}  // namespace

Polynomial::Polynomial(std::initializer_list<cdouble> coeffs)
    : coeffs_(coeffs) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Polynomial::Polynomial(std::vector<cdouble> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Polynomial Polynomial::monomial(int degree, cdouble scale) {
  std::vector<cdouble> c(degree + 1, 0.0);
  c.back() = scale;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(const std::vector<cdouble>& rts, cdouble scale) {
  Polynomial p(scale);
  for (cdouble r : rts) p = p * Polynomial{-r, 1.0};
  return p;
}

void Polynomial::trim() {
  double scale = 0.0;
  for (cdouble c : coeffs_) scale = std::max(scale, std::abs(c));
  const double tol = scale * kTrimRel;
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= tol)
    coeffs_.pop_back();
  if (coeffs_.size() == 1 && std::abs(coeffs_[0]) <= tol) coeffs_[0] = 0.0;
}

bool Polynomial::is_zero() const {
  return coeffs_.size() == 1 && coeffs_[0] == cdouble{0.0};
}

cdouble Polynomial::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

cdouble Polynomial::eval(cdouble omega) const {
  cdouble acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * omega + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return Polynomial(0.0);
  std::vector<cdouble> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

std::vector<cdouble> Polynomial::shifted(cdouble center) const {
  // In-place Taylor shift by repeated synthetic division.
  std::vector<cdouble> a = coeffs_;
  const size_t n = a.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = n - 1; j-- > i;) a[j] += center * a[j + 1];
  return a;
}

Polynomial Polynomial::conj_reflect() const {
  std::vector<cdouble> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = std::conj(coeffs_[k]);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cdouble> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator-() const {
  std::vector<cdouble> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = -coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<cdouble> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(cdouble s) const {
  std::vector<cdouble> c(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k] * s;
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw AlgebraError("polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial(), *this};
  std::vector<cdouble> rem = coeffs_;
  std::vector<cdouble> quot(degree() - d.degree() + 1, 0.0);
  const cdouble lead = d.leading();
  for (int k = degree() - d.degree(); k >= 0; --k) {
    cdouble q = rem[k + d.degree()] / lead;
    quot[k] = q;
    for (int j = 0; j <= d.degree(); ++j)
      rem[k + j] -= q * d.coeffs()[j];
  }
  rem.resize(std::max<size_t>(1, d.degree()));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

double Polynomial::coeff_scale() const {
  double s = 0.0;
  for (cdouble c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

std::vector<PolyRoot> roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1 || p.is_zero())
    throw AlgebraError("roots: need degree >= 1, got degree-0 input");

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  const cdouble lead = p.leading();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success)
    throw AlgebraError("roots: companion eigensolver did not converge");

  std::vector<cdouble> rts(n);
  const Polynomial dp = p.derivative();
  for (int i = 0; i < n; ++i) {
    cdouble r = es.eigenvalues()(i);
    // A few Newton polish steps; skip near multiple roots where p' ~ 0.
    for (int it = 0; it < 4; ++it) {
      cdouble d = dp.eval(r);
      if (std::abs(d) <= 1e-12 * dp.coeff_scale() * std::max(1.0, std::abs(r)))
        break;
      cdouble step = p.eval(r) / d;
      if (std::abs(step) >= 0.1 * std::max(1.0, std::abs(r))) break;
      r -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    rts[i] = r;
  }
  std::sort(rts.begin(), rts.end(), [](cdouble a, cdouble b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  auto cluster = [&rts](double rel) {
    std::vector<PolyRoot> out;
    for (cdouble r : rts) {
      bool merged = false;
      for (auto& pr : out) {
        const double tol = rel * std::max(1.0, std::abs(pr.value));
        if (std::abs(r - pr.value) <= tol) {
          pr.value = (pr.value * static_cast<double>(pr.multiplicity) + r) /
                     static_cast<double>(pr.multiplicity + 1);
          pr.multiplicity += 1;
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back({r, 1});
    }
    return out;
  };

  // A multiplicity-m cluster center is only eps^(1/m)-accurate; polish it on
  // the (m-1)th derivative, where the root is simple.
  auto polish_multiples = [&p](std::vector<PolyRoot>& out) {
    for (auto& pr : out) {
      if (pr.multiplicity < 2) continue;
      Polynomial d = p;
      for (int k = 1; k < pr.multiplicity; ++k) d = d.derivative();
      const Polynomial dd = d.derivative();
      cdouble r = pr.value;
      for (int it = 0; it < 4; ++it) {
        const cdouble den = dd.eval(r);
        if (std::abs(den) <=
            1e-12 * dd.coeff_scale() * std::max(1.0, std::abs(r)))
          break;
        const cdouble step = d.eval(r) / den;
        if (std::abs(step) >= 0.1 * std::max(1.0, std::abs(r))) break;
        r -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
      }
      pr.value = r;
    }
  };

  auto residual = [&](const std::vector<PolyRoot>& out) {
    std::vector<cdouble> flat;
    for (const auto& pr : out)
      for (int k = 0; k < pr.multiplicity; ++k) flat.push_back(pr.value);
    const Polynomial rebuilt = Polynomial::from_roots(flat, lead);
    double err = 0.0;
    for (int k = 0; k <= n; ++k)
      err = std::max(err, std::abs(rebuilt[k] - p[k]));
    return err;
  };

  // Eigenvalue images of a multiplicity-m root scatter over ~eps^(1/m), so a
  // fixed clustering radius cannot serve all multiplicities. Try tight first
  // (keeps genuinely close roots apart) and widen until the reconstruction
  // residual certifies the grouping.
  const double budget = 1e-6 * n * p.coeff_scale();
  double best_err = std::numeric_limits<double>::infinity();
  std::vector<PolyRoot> best;
  for (double rel : {kClusterRel, 3e-5, 1e-3}) {
    std::vector<PolyRoot> out = cluster(rel);
    polish_multiples(out);
    const double err = residual(out);
    if (err < best_err) {
      best_err = err;
      best = std::move(out);
    }
    if (best_err <= budget) return best;
  }
  std::ostringstream msg;
  msg << "roots: residual " << best_err / p.coeff_scale()
      << " exceeds tolerance after reconstruction";
  throw AlgebraError(msg.str());
}

std::vector<cdouble> roots_flat(const Polynomial& p) {
  std::vector<cdouble> flat;
  for (const auto& pr : roots(p))
    for (int k = 0; k < pr.multiplicity; ++k) flat.push_back(pr.value);
  return flat;
}

}  // namespace qoc
