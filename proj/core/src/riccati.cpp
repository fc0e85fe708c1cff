#include "qoc/riccati.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <sstream>

#include "qoc/errors.hpp"
#include "qoc/polynomial.hpp"

namespace qoc {

Eigen::MatrixXd solve_filter_care(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& C,
                                  const Eigen::MatrixXd& Q,
                                  const Eigen::MatrixXd& R,
                                  const Eigen::MatrixXd& S) {
  const int n = static_cast<int>(A.rows());
  const Eigen::MatrixXd Rinv = R.inverse();
  // Decorrelate process and measurement noise.
  const Eigen::MatrixXd Abar = A - S * Rinv * C;
  const Eigen::MatrixXd Qbar = Q - S * Rinv * S.transpose();

  // Filter CARE == control CARE with (A, B) -> (Abar', C').
  Eigen::MatrixXd H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = Abar.transpose();
  H.topRightCorner(n, n) = -C.transpose() * Rinv * C;
  H.bottomLeftCorner(n, n) = -Qbar;
  H.bottomRightCorner(n, n) = -Abar;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.cast<cdouble>());
  if (es.info() != Eigen::Success)
    throw StabilityError("CARE: Hamiltonian eigensolver failed");

  Eigen::MatrixXcd U(2 * n, n);
  int count = 0;
  for (int i = 0; i < 2 * n; ++i) {
    if (es.eigenvalues()(i).real() < 0.0) {
      if (count == n)
        throw StabilityError("CARE: too many stable Hamiltonian eigenvalues");
      U.col(count++) = es.eigenvectors().col(i);
    }
  }
  if (count != n)
    throw StabilityError(
        "CARE: no stabilizing solution (model degeneracy: stable subspace has "
        "wrong dimension)");

  const Eigen::MatrixXcd U11 = U.topRows(n);
  const Eigen::MatrixXcd U21 = U.bottomRows(n);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(U11);
  if (!lu.isInvertible())
    throw StabilityError("CARE: singular invariant-subspace basis");
  Eigen::MatrixXcd Pc = U21 * lu.inverse();
  Eigen::MatrixXd P = Pc.real();
  P = 0.5 * (P + P.transpose()).eval();  // enforce symmetry

  const double scale =
      std::max({1.0, Q.norm(), (A * P).norm(), (P * C.transpose()).norm()});
  const Eigen::MatrixXd PCS = P * C.transpose() + S;
  const Eigen::MatrixXd resid =
      A * P + P * A.transpose() - PCS * Rinv * PCS.transpose() + Q;
  if (resid.norm() > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "CARE: residual norm " << resid.norm() << " exceeds tolerance";
    throw StabilityError(msg.str());
  }
  return P;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& N) {
  const int n = static_cast<int>(A.rows());
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i).real() >= -1e-12)
      throw StabilityError("lyapunov: system matrix not strictly stable");

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
  // vec(A V + V A') = (I (x) A + A (x) I) vec(V)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        K(i + n * j, k + n * j) += A(i, k);        // A V
        K(i + n * j, i + n * k) += A(j, k);        // V A'
      }
  Eigen::VectorXd rhs(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs(i + n * j) = -N(i, j);
  Eigen::VectorXd v = K.fullPivLu().solve(rhs);
  Eigen::MatrixXd V(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) V(i, j) = v(i + n * j);
  return 0.5 * (V + V.transpose()).eval();
}

}  // namespace qoc
