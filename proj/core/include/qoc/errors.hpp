#ifndef QOC_ERRORS_HPP
#define QOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qoc {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Physically invalid input (Heisenberg violation, A > B, theta out of regime, ...).
// The CLI maps this family to exit code 2.
struct DomainError : Error {
  using Error::Error;
};

// Numerical algebra failures.
struct AlgebraError : Error {
  using Error::Error;
};

// Partial-fraction pole sitting on the real axis; caller must regularize.
struct MarginalPoleError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Spectrum with a negative lobe: no causal factorization exists.
struct NonFactorizableError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Real-axis zero of odd multiplicity in a spectrum.
struct MarginalSpectrumError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Non-integrable spectrum tail.
struct DivergenceError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// A controller whose controlled variances diverge.
struct ImproperControllerError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Riccati/Lyapunov solve without a stabilizing solution, or unstable system
// where stability is required.
struct StabilityError : AlgebraError {
  using AlgebraError::AlgebraError;
};

}  // namespace qoc

#endif
