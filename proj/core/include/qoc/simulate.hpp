#ifndef QOC_SIMULATE_HPP
#define QOC_SIMULATE_HPP

#include <cstdint>
#include <optional>

#include "qoc/statespace.hpp"

namespace qoc {

struct SimulationConfig {
  double dt = 0.0;        // 0 -> auto: 1e-3 / max |closed-loop pole|
  double t_total = 0.0;   // 0 -> auto: 50 decay times of the slowest pole
  int n_traj = 2000;
  std::uint64_t seed = 42;
  double burn_in = 0.5;   // discarded fraction of each trajectory
  int workers = 0;        // 0 -> hardware concurrency

  void validate() const;
};

struct EmpiricalState {
  GaussianState mean;
  GaussianState std_err;  // standard errors of the three entries
  double dt;
  double t_total;
};

/// Euler-Maruyama ensemble simulation of the closed measurement-feedback
/// loop, driven by the correlated white pair (F, Z). Deterministic for a
/// fixed seed (counter-based per-trajectory streams).
EmpiricalState simulate_closed_loop(const SystemModel& model,
                                    const RationalFunction& c_kernel,
                                    const SimulationConfig& cfg);

/// Brute-force optimality probe: grid search over the stable three-parameter
/// controller family c0 (Omega - i c1) / (Omega - i c2), evaluating the
/// controlled purity through the closed-loop Lyapunov route.
struct ControllerSearchResult {
  double best_u;
  double c0, c1_im, c2_im;  // best coefficients (c1, c2 purely imaginary)
  int evaluated;
  int stable;
};

ControllerSearchResult brute_force_controller_search(const SystemModel& model,
                                                     int grid_points = 21,
                                                     int workers = 0);

}  // namespace qoc

#endif
