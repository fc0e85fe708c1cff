#include "qoc/statespace.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "qoc/errors.hpp"
#include "qoc/riccati.hpp"

namespace qoc {

cdouble StateSpaceRealization::transfer(double omega) const {
  const int n = order();
  if (n == 0) return d;
  const cdouble s{0.0, -omega};  // s = -i Omega
  Eigen::MatrixXcd m = s * Eigen::MatrixXcd::Identity(n, n) - a.cast<cdouble>();
  Eigen::VectorXcd sol = m.fullPivLu().solve(b.cast<cdouble>());
  return (c.cast<cdouble>() * sol)(0) + d;
}

StateSpaceRealization realize(const RationalFunction& rin) {
  const RationalFunction r = rin.reduced();
  if (!r.is_proper())
    throw AlgebraError("realize: transfer function is improper");

  const int n = r.den().degree();
  // Omega = i s: coefficient k picks up i^k.
  auto to_s = [](const Polynomial& p) {
    std::vector<cdouble> c(p.degree() + 1);
    cdouble ik{1.0, 0.0};
    for (int k = 0; k <= p.degree(); ++k) {
      c[k] = p[k] * ik;
      ik *= cdouble{0.0, 1.0};
    }
    return c;
  };
  std::vector<cdouble> nc = to_s(r.num());
  std::vector<cdouble> dc = to_s(r.den());
  nc.resize(n + 1, 0.0);

  const cdouble lead = dc[n];
  double scale = 0.0;
  for (auto& v : nc) { v /= lead; scale = std::max(scale, std::abs(v)); }
  for (auto& v : dc) { v /= lead; scale = std::max(scale, std::abs(v)); }
  for (cdouble v : nc)
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, scale))
      throw AlgebraError("realize: time-domain system is not real");
  for (cdouble v : dc)
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, scale))
      throw AlgebraError("realize: time-domain system is not real");

  StateSpaceRealization ss;
  ss.d = nc[n].real();
  if (n == 0) {
    ss.a.resize(0, 0);
    ss.b.resize(0);
    ss.c.resize(0);
    return ss;
  }
  ss.a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) ss.a(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) ss.a(n - 1, j) = -dc[j].real();
  ss.b = Eigen::VectorXd::Zero(n);
  ss.b(n - 1) = 1.0;
  ss.c.resize(n);
  for (int j = 0; j < n; ++j) ss.c(j) = nc[j].real() - ss.d * dc[j].real();

  // Frequency-response round trip.
  double wmax = 1.0;
  for (const auto& rt : roots(r.den())) wmax = std::max(wmax, std::abs(rt.value));
  for (int k = 0; k < 200; ++k) {
    const double omega = -4.0 * wmax + 8.0 * wmax * (k + 0.3) / 200.0;
    const cdouble want = r.eval(omega);
    const cdouble got = ss.transfer(omega);
    if (std::abs(want - got) > 1e-8 * std::max(1.0, std::abs(want)))
      throw AlgebraError("realize: frequency-response round trip failed");
  }
  return ss;
}

ClosedLoopSystem closed_loop_system(const SystemModel& model,
                                    const RationalFunction& c_kernel) {
  const StateSpaceRealization ctl = realize(c_kernel);
  const int nc = ctl.order();
  const double w = model.osc.omega_p, g = model.osc.gamma_p;
  const double k0 = w * w + g * g;

  ClosedLoopSystem loop;
  loop.a = Eigen::MatrixXd::Zero(2 + nc, 2 + nc);
  loop.a(0, 1) = 1.0;
  // Feedback force u = -(C_c xi + D_c y), y = x + Z.
  loop.a(1, 0) = -k0 - ctl.d;
  loop.a(1, 1) = -2.0 * g;
  for (int j = 0; j < nc; ++j) loop.a(1, 2 + j) = -ctl.c(j);
  for (int i = 0; i < nc; ++i) {
    loop.a(2 + i, 0) = ctl.b(i);
    for (int j = 0; j < nc; ++j) loop.a(2 + i, 2 + j) = ctl.a(i, j);
  }

  loop.g = Eigen::MatrixXd::Zero(2 + nc, 2);
  loop.g(1, 0) = 1.0;        // F drives p
  loop.g(1, 1) = -ctl.d;     // Z through the controller feedthrough
  for (int i = 0; i < nc; ++i) loop.g(2 + i, 1) = ctl.b(i);

  loop.sigma << 0.5 * model.noise.s_ff, 0.5 * model.noise.s_zf,
      0.5 * model.noise.s_zf, 0.5 * model.noise.s_zz;
  return loop;
}

void require_stable(const ClosedLoopSystem& loop) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(loop.a, false);
  std::ostringstream bad;
  bool ok = true;
  for (int i = 0; i < loop.a.rows(); ++i) {
    const auto ev = es.eigenvalues()(i);
    if (ev.real() >= 0.0) {
      ok = false;
      bad << " (" << ev.real() << (ev.imag() >= 0 ? "+" : "") << ev.imag()
          << "i)";
    }
  }
  if (!ok)
    throw StabilityError("closed loop unstable; offending poles:" + bad.str());
}

GaussianState lyapunov_variance(const ClosedLoopSystem& loop) {
  require_stable(loop);
  const Eigen::MatrixXd n = loop.g * loop.sigma * loop.g.transpose();
  const Eigen::MatrixXd v = solve_lyapunov(loop.a, n);
  return {v(0, 0), v(1, 1), v(0, 1)};
}

}  // namespace qoc
