#include "qoc/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "qoc/control.hpp"
#include "qoc/errors.hpp"
#include "qoc/spectra.hpp"

namespace qoc {

void SimulationConfig::validate() const {
  if (dt < 0.0 || t_total < 0.0)
    throw DomainError("simulation: dt and t_total must be >= 0");
  if (n_traj < 1) throw DomainError("simulation: n_traj >= 1");
  if (burn_in < 0.0 || burn_in >= 1.0)
    throw DomainError("simulation: burn_in in [0, 1)");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrajStats {
  double xx, pp, xp;
};

}  // namespace

EmpiricalState simulate_closed_loop(const SystemModel& model,
                                    const RationalFunction& c_kernel,
                                    const SimulationConfig& cfg) {
  cfg.validate();
  const ClosedLoopSystem loop = closed_loop_system(model, c_kernel);
  require_stable(loop);

  Eigen::EigenSolver<Eigen::MatrixXd> es(loop.a, false);
  double fastest = 0.0, slowest_decay = std::numeric_limits<double>::infinity();
  for (int i = 0; i < loop.a.rows(); ++i) {
    fastest = std::max(fastest, std::abs(es.eigenvalues()(i)));
    slowest_decay = std::min(slowest_decay, -es.eigenvalues()(i).real());
  }
  const double dt = cfg.dt > 0.0 ? cfg.dt : 1e-3 / fastest;
  const double t_total =
      cfg.t_total > 0.0 ? cfg.t_total : 50.0 / slowest_decay;
  const long steps = std::lround(t_total / dt);
  const long skip = std::lround(cfg.burn_in * steps);

  // Cholesky of the 2x2 increment covariance sigma * dt.
  const double s00 = loop.sigma(0, 0) * dt;
  const double s01 = loop.sigma(0, 1) * dt;
  const double s11 = loop.sigma(1, 1) * dt;
  const double l00 = std::sqrt(s00);
  const double l10 = l00 > 0.0 ? s01 / l00 : 0.0;
  const double l11 = std::sqrt(std::max(0.0, s11 - l10 * l10));

  const int dim = static_cast<int>(loop.a.rows());
  const Eigen::MatrixXd a = loop.a;
  const Eigen::MatrixXd g = loop.g;

  std::vector<TrajStats> stats(cfg.n_traj);
  const int workers = cfg.workers > 0
                          ? cfg.workers
                          : static_cast<int>(std::max(
                                1u, std::thread::hardware_concurrency()));

  auto run_range = [&](int begin, int end) {
    Eigen::VectorXd state(dim), drift(dim);
    for (int traj = begin; traj < end; ++traj) {
      std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x51ed2701ULL + traj)));
      std::normal_distribution<double> gauss(0.0, 1.0);
      state.setZero();
      double sxx = 0.0, spp = 0.0, sxp = 0.0;
      long kept = 0;
      for (long k = 0; k < steps; ++k) {
        const double wf = gauss(rng), wz = gauss(rng);
        const double dwf = l00 * wf;
        const double dwz = l10 * wf + l11 * wz;
        drift.noalias() = a * state;
        state += drift * dt + g.col(0) * dwf + g.col(1) * dwz;
        if (!std::isfinite(state(0)))
          throw StabilityError("simulation diverged mid-run");
        if (k >= skip) {
          sxx += state(0) * state(0);
          spp += state(1) * state(1);
          sxp += state(0) * state(1);
          ++kept;
        }
      }
      stats[traj] = {sxx / kept, spp / kept, sxp / kept};
    }
  };

  if (workers <= 1 || cfg.n_traj < 4) {
    run_range(0, cfg.n_traj);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.n_traj + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int b = w * chunk, e = std::min(cfg.n_traj, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& t : pool) t.join();
  }

  auto reduce = [&](auto pick) {
    double mean = 0.0;
    for (const auto& s : stats) mean += pick(s);
    mean /= cfg.n_traj;
    double var = 0.0;
    for (const auto& s : stats) {
      const double d = pick(s) - mean;
      var += d * d;
    }
    var /= std::max(1, cfg.n_traj - 1);
    return std::pair<double, double>{mean, std::sqrt(var / cfg.n_traj)};
  };
  const auto [mxx, exx] = reduce([](const TrajStats& s) { return s.xx; });
  const auto [mpp, epp] = reduce([](const TrajStats& s) { return s.pp; });
  const auto [mxp, exp_] = reduce([](const TrajStats& s) { return s.xp; });
  return {{mxx, mpp, mxp}, {exx, epp, exp_}, dt, t_total};
}

ControllerSearchResult brute_force_controller_search(const SystemModel& model,
                                                     int grid_points,
                                                     int workers) {
  const MarkovianController mc = markovian_controller(model);
  const double c0_ref = mc.c0.real();
  const double c1_ref = mc.c1.imag();
  const double c2_ref = mc.c2.imag();

  const int n = grid_points;
  std::vector<double> us(n * n * n,
                         std::numeric_limits<double>::infinity());
  std::vector<int> evaluated(n * n * n, 0), stable(n * n * n, 0);

  auto candidate = [&](int i, int j, int k) {
    // c0 in x[0.5, 2] (log), c1 and c2 within +-50%.
    const double c0 =
        c0_ref * std::pow(2.0, -1.0 + 2.0 * i / std::max(1, n - 1));
    const double c1 = c1_ref * (0.5 + 1.0 * j / std::max(1, n - 1));
    const double c2 = c2_ref * (0.5 + 1.0 * k / std::max(1, n - 1));
    return std::array<double, 3>{c0, c1, c2};
  };

  auto eval_candidate = [&](const std::array<double, 3>& c) -> double {
    const RationalFunction kernel{
        Polynomial{cdouble{0.0, -c[1]}, 1.0} * cdouble{c[0]},
        Polynomial{cdouble{0.0, -c[2]}, 1.0}};
    // Exact Lyapunov evaluation of the closed loop: no regularization or
    // quadrature, so the objective is clean at the 1e-10 level and the
    // search cannot walk below the true optimum on numerical noise.
    try {
      const GaussianState v =
          lyapunov_variance(closed_loop_system(model, kernel));
      return std::sqrt(v.v_xx * v.v_pp);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const int nthreads =
      workers > 0 ? workers
                  : static_cast<int>(
                        std::max(1u, std::thread::hardware_concurrency()));
  auto run_slice = [&](int begin, int end) {
    for (int idx = begin; idx < end; ++idx) {
      const int i = idx / (n * n), j = (idx / n) % n, k = idx % n;
      const double u = eval_candidate(candidate(i, j, k));
      evaluated[idx] = 1;
      if (std::isfinite(u)) {
        stable[idx] = 1;
        us[idx] = u;
      }
    }
  };
  {
    std::vector<std::thread> pool;
    const int total = n * n * n;
    const int chunk = (total + nthreads - 1) / nthreads;
    for (int w = 0; w < nthreads; ++w) {
      const int b = w * chunk, e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(run_slice, b, e);
    }
    for (auto& t : pool) t.join();
  }

  ControllerSearchResult res{};
  res.best_u = std::numeric_limits<double>::infinity();
  int best_idx = -1;
  for (int idx = 0; idx < n * n * n; ++idx) {
    res.evaluated += evaluated[idx];
    res.stable += stable[idx];
    if (us[idx] < res.best_u) {
      res.best_u = us[idx];
      best_idx = idx;
    }
  }
  if (best_idx < 0)
    throw StabilityError("controller search: no stable candidate in grid");

  auto c = candidate(best_idx / (n * n), (best_idx / n) % n, best_idx % n);
  // Local refinement: coordinate shrink around the grid minimum.
  double span = 0.1;
  for (int round = 0; round < 12; ++round) {
    bool improved = false;
    for (int d = 0; d < 3; ++d) {
      for (double sgn : {-1.0, 1.0}) {
        auto trial = c;
        trial[d] *= (1.0 + sgn * span);
        const double u = eval_candidate(trial);
        if (u < res.best_u) {
          res.best_u = u;
          c = trial;
          improved = true;
        }
      }
    }
    if (!improved) span *= 0.5;
  }
  res.c0 = c[0];
  res.c1_im = c[1];
  res.c2_im = c[2];
  return res;
}

}  // namespace qoc
