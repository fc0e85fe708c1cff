#ifndef QOC_VERIFY_HPP
#define QOC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qoc/plant.hpp"

namespace qoc {

/// One cross-check: the same quantity computed along two independent routes.
struct Check {
  std::string name;
  double lhs;
  double rhs;
  double tol;  // relative tolerance used for the comparison
  bool pass;
  std::string note;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool all_pass() const;
};

struct VerifyOptions {
  bool full = false;       // also run Monte-Carlo and the brute-force probe
  std::uint64_t seed = 42;
  int workers = 0;
  int n_traj = 400;        // Monte-Carlo ensemble size in full mode
};

/// Runs the oracle suite on a model: closed forms vs Riccati vs Wiener
/// integrals vs Lyapunov, residue vs quadrature integration, and (in full
/// mode) Euler-Maruyama simulation and the grid search over stable
/// controllers.
VerificationReport verify_model(const SystemModel& model,
                                const VerifyOptions& opt = {});

}  // namespace qoc

#endif
