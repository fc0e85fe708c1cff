#ifndef QOC_RICCATI_HPP
#define QOC_RICCATI_HPP

#include <Eigen/Dense>

namespace qoc {

/// Stabilizing solution P of the filter Riccati equation
///   A P + P A' - (P C' + S) R^{-1} (P C' + S)' + Q = 0
/// for the steady-state estimation error covariance, via the
/// Hamiltonian-matrix invariant-subspace method.
/// Throws StabilityError if no stabilizing solution exists.
Eigen::MatrixXd solve_filter_care(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& C,
                                  const Eigen::MatrixXd& Q,
                                  const Eigen::MatrixXd& R,
                                  const Eigen::MatrixXd& S);

/// Solution V of A V + V A' + N = 0 for Hurwitz A (Kronecker solve).
/// Throws StabilityError if A is not strictly stable.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& N);

}  // namespace qoc

#endif
