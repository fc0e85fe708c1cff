#include "qoc/optics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "qoc/control.hpp"
#include "qoc/errors.hpp"

namespace qoc {

void ReadoutConfig::validate() const {
  if (!(omega_q > 0.0)) throw DomainError("readout: Omega_q must be > 0");
  if (std::abs(std::cos(phi)) < 1e-12)
    throw DomainError("readout: cos(phi) = 0 carries no position information");
  if (squeeze_db < 0.0) throw DomainError("readout: squeeze_db must be >= 0");
  if (loss < 0.0 || loss >= 1.0) throw DomainError("readout: loss in [0, 1)");
  if (zeta_x < 0.0 || zeta_f < 0.0)
    throw DomainError("readout: zeta_x, zeta_f must be >= 0");
}

ClassicalBudget ClassicalBudget::symmetric(double eta_cl2) {
  if (eta_cl2 < 0.0) throw DomainError("budget: eta_cl2 must be >= 0");
  const double z = std::sqrt(0.5 * eta_cl2);
  return {z, z};
}

QuadratureCovariance input_covariance(double squeeze_db, double squeeze_angle) {
  const double r = squeeze_db * std::log(10.0) / 20.0;
  const double c = std::cos(squeeze_angle), s = std::sin(squeeze_angle);
  const double em = std::exp(-2.0 * r), ep = std::exp(2.0 * r);
  return {c * c * em + s * s * ep, c * s * (em - ep),
          s * s * em + c * c * ep};
}

MarkovianNoise to_markovian(const ReadoutConfig& cfg) {
  cfg.validate();
  const auto q = input_covariance(cfg.squeeze_db, cfg.squeeze_angle);
  const double t = std::tan(cfg.phi);
  const double c2 = std::cos(cfg.phi) * std::cos(cfg.phi);
  const double oq2 = cfg.omega_q * cfg.omega_q;

  const double s_ff = kHbar * oq2 * q.s11 +
                      2.0 * kHbar * oq2 * cfg.zeta_f * cfg.zeta_f;
  const double x = q.s11 * t + q.s12;
  const double s_zf = kHbar * x;
  // s11 t^2 + 2 s12 t + s22 = (x^2 + 1)/s11, using det = 1 exactly; the
  // rewritten form keeps mu = 1 to ~1e-12 where the naive sum cancels badly
  // for strong squeezing near the antisqueezed homodyne angle.
  const double s_zz = 2.0 * kHbar * cfg.zeta_x * cfg.zeta_x / oq2 +
                      (kHbar / oq2) * ((x * x + 1.0) / q.s11 + cfg.loss / c2);
  MarkovianNoise noise;
  try {
    noise = MarkovianNoise{s_zz, s_ff, s_zf};
  } catch (const DomainError&) {
    throw AlgebraError(
        "to_markovian: assembled noise violates Heisenberg (convention bug)");
  }
  return noise;
}

double classical_factor(const ReadoutConfig& cfg) {
  return 2.0 * cfg.zeta_f * cfg.zeta_x;
}

double classical_factor_numeric(const ReadoutConfig& cfg) {
  const double oq2 = cfg.omega_q * cfg.omega_q;
  const double s_xx = 2.0 * kHbar * cfg.zeta_x * cfg.zeta_x / oq2;
  const double s_xf = 2.0 * kHbar * oq2 * cfg.zeta_f * cfg.zeta_f;
  double best = std::numeric_limits<double>::infinity();
  for (int k = -4000; k <= 4000; ++k) {
    const double omega = cfg.omega_q * std::pow(10.0, k / 1000.0);
    best = std::min(best,
                    (s_xf + omega * omega * omega * omega * s_xx) /
                        (2.0 * kHbar * omega * omega));
  }
  return best;
}

double free_mass_occupation(const ReadoutConfig& cfg) {
  SystemModel m;
  m.osc = Oscillator{0.0, 0.0};
  m.noise = to_markovian(cfg);
  return metrics(m).n_eff;
}

namespace {

// Minimal Nelder-Mead on R^n with function value tolerance.
using Vec3 = std::array<double, 3>;
double nelder_mead(const std::function<double(const Vec3&)>& f, Vec3& x,
                   double step, double ftol, int max_iter) {
  constexpr int n = 3;
  std::array<Vec3, n + 1> simplex;
  std::array<double, n + 1> fv;
  simplex[0] = x;
  fv[0] = f(x);
  for (int i = 0; i < n; ++i) {
    simplex[i + 1] = x;
    simplex[i + 1][i] += step;
    fv[i + 1] = f(simplex[i + 1]);
  }
  for (int it = 0; it < max_iter; ++it) {
    std::array<int, n + 1> idx{};
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&fv](int a, int b) { return fv[a] < fv[b]; });
    if (fv[idx[n]] - fv[idx[0]] < ftol) break;
    Vec3 centroid{0, 0, 0};
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < n; ++d) centroid[d] += simplex[idx[i]][d] / n;
    auto blend = [&](double a) {
      Vec3 p;
      for (int d = 0; d < n; ++d)
        p[d] = centroid[d] + a * (simplex[idx[n]][d] - centroid[d]);
      return p;
    };
    const Vec3 refl = blend(-1.0);
    const double fr = f(refl);
    if (fr < fv[idx[0]]) {
      const Vec3 expd = blend(-2.0);
      const double fe = f(expd);
      if (fe < fr) { simplex[idx[n]] = expd; fv[idx[n]] = fe; }
      else { simplex[idx[n]] = refl; fv[idx[n]] = fr; }
    } else if (fr < fv[idx[n - 1]]) {
      simplex[idx[n]] = refl; fv[idx[n]] = fr;
    } else {
      const Vec3 cont = blend(0.5);
      const double fc = f(cont);
      if (fc < fv[idx[n]]) { simplex[idx[n]] = cont; fv[idx[n]] = fc; }
      else {
        for (int i = 1; i <= n; ++i) {
          for (int d = 0; d < n; ++d)
            simplex[idx[i]][d] =
                0.5 * (simplex[idx[i]][d] + simplex[idx[0]][d]);
          fv[idx[i]] = f(simplex[idx[i]]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  x = simplex[best];
  return fv[best];
}

}  // namespace

ReadoutOptimum minimize_occupation(const ClassicalBudget& budget, double loss,
                                   double squeeze_db) {
  auto eval = [&](const Vec3& p) -> double {
    const double log_oq = p[0], phi = p[1], lambda = p[2];
    if (log_oq < -8.0 || log_oq > 8.0 || std::abs(phi) >= 0.5 * M_PI - 1e-6)
      return 1e12;
    ReadoutConfig cfg;
    cfg.omega_q = std::exp(log_oq);
    cfg.phi = phi;
    cfg.squeeze_db = squeeze_db;
    cfg.squeeze_angle = lambda;
    cfg.loss = loss;
    cfg.zeta_f = budget.zeta_f;
    cfg.zeta_x = budget.zeta_x;
    try {
      return free_mass_occupation(cfg);
    } catch (const Error&) {
      return 1e12;
    }
  };

  // Deterministic 32^3 coarse grid.
  constexpr int kG = 32;
  Vec3 best{0.0, 0.0, 0.0};
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kG; ++i)
    for (int j = 0; j < kG; ++j)
      for (int k = 0; k < kG; ++k) {
        const Vec3 p{-6.0 + 12.0 * (i + 0.5) / kG,
                     -0.5 * M_PI + M_PI * (j + 0.5) / kG,
                     M_PI * (k + 0.5) / kG};
        const double v = eval(p);
        if (v < fbest) { fbest = v; best = p; }
      }

  Vec3 x = best;
  const double fv = nelder_mead(eval, x, 0.1, 1e-8, 400);
  ReadoutOptimum out;
  out.config.omega_q = std::exp(x[0]);
  out.config.phi = x[1];
  out.config.squeeze_db = squeeze_db;
  out.config.squeeze_angle = x[2];
  out.config.loss = loss;
  out.config.zeta_f = budget.zeta_f;
  out.config.zeta_x = budget.zeta_x;
  out.n_eff = fv;
  out.converged = fv < 1e11;
  return out;
}

std::vector<Fig2RightRow> fig2_right_sweep(
    const std::vector<double>& eta_cl2_grid, double loss) {
  std::vector<Fig2RightRow> rows;
  rows.reserve(eta_cl2_grid.size());
  for (double e : eta_cl2_grid) {
    const auto budget = ClassicalBudget::symmetric(e);
    rows.push_back({e, minimize_occupation(budget, loss, 0.0).n_eff,
                    minimize_occupation(budget, loss, 10.0).n_eff});
  }
  return rows;
}

}  // namespace qoc
