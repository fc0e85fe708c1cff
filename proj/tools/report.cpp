#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <mutex>
#include <thread>

#include "qoc/conditioning.hpp"

namespace qoc::tools {

namespace {

const char* squeeze_name(SqueezeClass s) {
  switch (s) {
    case SqueezeClass::kPositionSqueezed: return "position-squeezed";
    case SqueezeClass::kMomentumSqueezed: return "momentum-squeezed";
    case SqueezeClass::kNone: return "none";
  }
  return "?";
}

nlohmann::json complex_json(cdouble z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

AnalysisReport analyze(const SystemModel& model) {
  AnalysisReport r;
  const auto sp = shape_params(model);
  r.mu = purity_mu(model.noise);
  if (model.osc.omega_p > 0.0) {
    auto [a, b] = ab_params(model);
    r.a_param = a;
    r.b_param = b;
  } else {
    r.a_param = sp.aw2;
    r.b_param = sp.bw2;
  }
  r.conditional = conditional_covariance_markovian(model);
  const auto ctrl = controlled_covariance(r.conditional);
  r.controlled = ctrl.state;
  r.u_c = r.conditional.purity();
  r.u_ctrl = ctrl.u_ctrl;
  r.scalars = metrics(model);
  r.controller = markovian_controller(sp, model.osc.omega_p);

  // Semiclassical diagnostic at the frequency where S_G grazes the SQL.
  const double omega_min = std::sqrt(sp.bw2);
  const double s_x = force_referred_spectrum(model).eval(omega_min) /
                     std::pow(omega_min, 4);
  r.semiclassical = semiclassical_estimate(r.scalars.q_eff, s_x, omega_min);

  r.free_mass = model.osc.omega_p == 0.0;
  r.sql_not_beaten = r.free_mass && r.scalars.n_eff >= 0.5 - 1e-9;
  return r;
}

void render_human(const AnalysisReport& r, std::ostream& out) {
  auto row = [&out](const char* k, double v) {
    out << "  " << std::left << std::setw(22) << k << fmt9(v) << "\n";
  };
  auto crow = [&out](const char* k, cdouble v) {
    out << "  " << std::left << std::setw(22) << k << fmt9(v.real())
        << (v.imag() >= 0 ? " + " : " - ") << fmt9(std::abs(v.imag()))
        << "i\n";
  };
  out << "model\n";
  row("mu", r.mu);
  row(r.free_mass ? "a*omega_p^2" : "A", r.a_param);
  row(r.free_mass ? "b*omega_p^2" : "B", r.b_param);
  out << "conditional state\n";
  row("V_xx", r.conditional.v_xx);
  row("V_pp", r.conditional.v_pp);
  row("V_xp", r.conditional.v_xp);
  row("U_c", r.u_c);
  out << "controlled state\n";
  row("V_xx", r.controlled.v_xx);
  row("V_pp", r.controlled.v_pp);
  row("U_ctrl", r.u_ctrl);
  row("N_eff", r.scalars.n_eff);
  row("Q_eff", r.scalars.q_eff);
  row("eta^2", r.scalars.eta2);
  row("omega_star", r.scalars.omega_star);
  row("entropy (nats)", r.scalars.entropy_nats);
  row("semiclassical N", r.semiclassical);
  out << "  " << std::left << std::setw(22) << "squeezing"
      << squeeze_name(r.scalars.squeeze) << "\n";
  out << "optimal controller C0 (Omega - C1) / (Omega - C2)\n";
  crow("C0", r.controller.c0);
  crow("C1", r.controller.c1);
  crow("C2", r.controller.c2);
  crow("Omega_1", r.controller.omega1);
  crow("Omega_2", r.controller.omega2);
  crow("Omega_3", r.controller.omega3);
  crow("Omega_4", r.controller.omega4);
  if (r.sql_not_beaten) out << "note: free-mass SQL not beaten\n";
}

nlohmann::json render_json(const AnalysisReport& r) {
  nlohmann::json j{
      {"model", {{"mu", r.mu}, {"a", r.a_param}, {"b", r.b_param}}},
      {"conditional",
       {{"v_xx", r.conditional.v_xx},
        {"v_pp", r.conditional.v_pp},
        {"v_xp", r.conditional.v_xp},
        {"u_c", r.u_c}}},
      {"controlled",
       {{"v_xx", r.controlled.v_xx},
        {"v_pp", r.controlled.v_pp},
        {"u_ctrl", r.u_ctrl},
        {"n_eff", r.scalars.n_eff},
        {"q_eff", r.scalars.q_eff},
        {"eta2", r.scalars.eta2},
        {"omega_star", r.scalars.omega_star},
        {"entropy_nats", r.scalars.entropy_nats},
        {"semiclassical_n", r.semiclassical},
        {"squeezing", squeeze_name(r.scalars.squeeze)}}},
      {"controller",
       {{"c0", complex_json(r.controller.c0)},
        {"c1", complex_json(r.controller.c1)},
        {"c2", complex_json(r.controller.c2)},
        {"omega1", complex_json(r.controller.omega1)},
        {"omega2", complex_json(r.controller.omega2)},
        {"omega3", complex_json(r.controller.omega3)},
        {"omega4", complex_json(r.controller.omega4)}}}};
  if (r.free_mass) {
    j["flags"] = nlohmann::json::array();
    if (r.sql_not_beaten) j["flags"].push_back("free-mass SQL not beaten");
  }
  return j;
}

SweepTable run_sweep(const RunConfig& cfg, int workers) {
  if (cfg.axes.empty())
    throw ConfigError("sweep: config has no sweep.axes block");
  SweepTable t;
  for (const auto& ax : cfg.axes) t.axis_names.push_back(ax.parameter);

  // Cartesian grid, first axis outermost; this is also the output order.
  std::vector<std::vector<double>> points;
  if (cfg.axes.size() == 1) {
    for (double v : cfg.axes[0].values) points.push_back({v});
  } else {
    for (double v0 : cfg.axes[0].values)
      for (double v1 : cfg.axes[1].values) points.push_back({v0, v1});
  }

  t.rows.resize(points.size());
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(points.size()));

  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&](int id) {
    for (size_t i = id; i < points.size(); i += workers) {
      try {
        RunConfig local = cfg;
        for (size_t a = 0; a < cfg.axes.size(); ++a)
          local = with_parameter(local, cfg.axes[a].parameter, points[i][a]);
        t.rows[i] = {points[i], metrics(resolve_model(local))};
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return t;
}

void write_sweep_csv(const SweepTable& t, const RunConfig& cfg,
                     std::ostream& out) {
  out << "# qoctrl sweep\n";
  out << "# config_hash=" << std::hex << cfg.hash << std::dec << "\n";
  out << "# seed=" << cfg.seed << "\n";
  for (const auto& name : t.axis_names) out << name << ",";
  out << "n_eff,u_ctrl,q_eff,eta2,mu,a_over_b\n";
  for (const auto& r : t.rows) {
    for (double v : r.axis_values) out << fmt9(v) << ",";
    out << fmt9(r.m.n_eff) << "," << fmt9(r.m.u_ctrl) << ","
        << fmt9(r.m.q_eff) << "," << fmt9(r.m.eta2) << "," << fmt9(r.m.mu)
        << "," << fmt9(r.m.ratio) << "\n";
  }
}

nlohmann::json sweep_json(const SweepTable& t, const RunConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json row;
    for (size_t a = 0; a < t.axis_names.size(); ++a)
      row[t.axis_names[a]] = r.axis_values[a];
    row["n_eff"] = r.m.n_eff;
    row["u_ctrl"] = r.m.u_ctrl;
    row["q_eff"] = r.m.q_eff;
    row["eta2"] = r.m.eta2;
    row["mu"] = r.m.mu;
    row["a_over_b"] = r.m.ratio;
    rows.push_back(row);
  }
  char hash[24];
  std::snprintf(hash, sizeof hash, "%llx",
                static_cast<unsigned long long>(cfg.hash));
  return {{"config_hash", hash}, {"seed", cfg.seed}, {"rows", rows}};
}

}  // namespace qoc::tools
