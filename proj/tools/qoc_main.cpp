// qoc: analyze, sweep, optimize, and verify linear measurement-feedback
// control of an oscillator.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "qoc/colddamp.hpp"
#include "qoc/errors.hpp"
#include "qoc/optics.hpp"
#include "qoc/simulate.hpp"
#include "qoc/verify.hpp"
#include "report.hpp"

namespace {

using namespace qoc;
using namespace qoc::tools;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  std::string format;  // "", "csv", "json"
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "configuration file (JSON)");
  cmd->add_option("--out", o.out_path, "output path (default: stdout)");
  cmd->add_option("--seed", o.seed, "random seed override")
      ->each([&o](const std::string&) { o.seed_set = true; });
  cmd->add_option("--workers", o.workers, "worker thread count")
      ->envname("QOC_WORKERS");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

RunConfig resolve_config(const CommonOpts& o) {
  RunConfig cfg =
      o.config_path.empty() ? default_config() : load_config(o.config_path);
  if (o.seed_set) cfg.seed = o.seed;
  if (o.workers > 0) cfg.workers = o.workers;
  return cfg;
}

// Writes to --out when given, stdout otherwise.
void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + o.out_path);
  out << text;
}

int run_analyze(const CommonOpts& o) {
  const RunConfig cfg = resolve_config(o);
  const AnalysisReport r = analyze(resolve_model(cfg));
  if (o.format == "json") {
    emit(o, render_json(r).dump(2) + "\n");
  } else {
    std::ostringstream s;
    render_human(r, s);
    emit(o, s.str());
  }
  return 0;
}

int run_sweep_cmd(const CommonOpts& o) {
  const RunConfig cfg = resolve_config(o);
  const SweepTable t = run_sweep(cfg, cfg.workers);
  if (o.format == "json") {
    emit(o, sweep_json(t, cfg).dump(2) + "\n");
  } else {
    std::ostringstream s;
    write_sweep_csv(t, cfg, s);
    emit(o, s.str());
  }
  return 0;
}

int run_optimize(const CommonOpts& o) {
  const RunConfig cfg = resolve_config(o);
  nlohmann::json j;
  std::ostringstream human;
  switch (cfg.kind) {
    case SystemKind::kMarkovian: {
      const auto res =
          brute_force_controller_search(cfg.model, 13, cfg.workers);
      const auto mc = markovian_controller(cfg.model);
      const double u_closed =
          controlled_covariance(conditional_covariance_markovian(cfg.model))
              .u_ctrl;
      human << "grid search over stable controllers\n"
            << "  best U        " << fmt9(res.best_u) << "\n"
            << "  closed-form U " << fmt9(u_closed) << "\n"
            << "  c0            " << fmt9(res.c0) << "  (closed "
            << fmt9(mc.c0.real()) << ")\n"
            << "  Im c1         " << fmt9(res.c1_im) << "  (closed "
            << fmt9(mc.c1.imag()) << ")\n"
            << "  Im c2         " << fmt9(res.c2_im) << "  (closed "
            << fmt9(mc.c2.imag()) << ")\n"
            << "  evaluated " << res.evaluated << ", stable " << res.stable
            << "\n";
      j = {{"best_u", res.best_u},   {"closed_form_u", u_closed},
           {"c0", res.c0},           {"c1_im", res.c1_im},
           {"c2_im", res.c2_im},     {"evaluated", res.evaluated},
           {"stable", res.stable}};
      break;
    }
    case SystemKind::kReadout: {
      const ClassicalBudget budget{cfg.readout.zeta_f, cfg.readout.zeta_x};
      const auto opt = minimize_occupation(budget, cfg.readout.loss,
                                           cfg.readout.squeeze_db);
      human << "readout optimization (free mass)\n"
            << "  N_eff         " << fmt9(opt.n_eff) << "\n"
            << "  omega_q       " << fmt9(opt.config.omega_q) << "\n"
            << "  phi           " << fmt9(opt.config.phi) << "\n"
            << "  squeeze_angle " << fmt9(opt.config.squeeze_angle) << "\n"
            << "  converged     " << (opt.converged ? "yes" : "no") << "\n";
      j = {{"n_eff", opt.n_eff},
           {"omega_q", opt.config.omega_q},
           {"phi", opt.config.phi},
           {"squeeze_angle", opt.config.squeeze_angle},
           {"converged", opt.converged}};
      break;
    }
    case SystemKind::kThermal: {
      const double theta = critical_temperature(cfg.thermal.env).theta;
      const auto opt = minimize_over_strength(theta);
      human << "cold-damping optimization\n"
            << "  theta         " << fmt9(theta) << "\n"
            << "  optimal x     " << fmt9(opt.x) << "\n"
            << "  N_eff         " << fmt9(opt.n_eff) << "\n";
      if (theta < 1.0)
        human << "  closed form   " << fmt9(n_opt(theta)) << "\n";
      j = {{"theta", theta}, {"x", opt.x}, {"n_eff", opt.n_eff}};
      break;
    }
  }
  if (o.format == "json")
    emit(o, j.dump(2) + "\n");
  else
    emit(o, human.str());
  return 0;
}

int run_verify(const CommonOpts& o, const std::string& level) {
  const RunConfig cfg = resolve_config(o);
  VerifyOptions vo;
  vo.full = level == "full";
  vo.seed = cfg.seed;
  vo.workers = cfg.workers;
  if (vo.full) vo.n_traj = 2000;
  const auto report = verify_model(resolve_model(cfg), vo);

  std::ostringstream s;
  double worst = 0.0;
  for (const auto& c : report.checks) {
    const double rel = std::abs(c.lhs - c.rhs) /
                       std::max({1.0, std::abs(c.lhs), std::abs(c.rhs)});
    worst = std::max(worst, rel / c.tol);
    s << (c.pass ? "ok  " : "FAIL") << "  " << c.name << "  lhs="
      << fmt9(c.lhs) << " rhs=" << fmt9(c.rhs) << " rel=" << fmt9(rel)
      << " tol=" << fmt9(c.tol);
    if (!c.note.empty()) s << "  (" << c.note << ")";
    s << "\n";
  }
  s << "worst residual: " << fmt9(worst) << " of budget\n";
  s << (report.all_pass() ? "verification passed\n" : "verification FAILED\n");
  emit(o, s.str());
  return report.all_pass() ? 0 : 3;
}

int run_fig2(const CommonOpts& o, const std::string& panel) {
  std::ostringstream s;
  if (panel == "left") {
    const std::vector<double> thetas{0.1, 0.5, 1.0, 2.0, 10.0};
    std::vector<double> xs;
    for (int i = 0; i <= 120; ++i) xs.push_back(std::pow(10.0, -2.0 + i / 20.0));
    s << "# qoctrl fig2 left\n# theta in {0.1, 0.5, 1, 2, 10}\n";
    s << "theta,x,n_eff\n";
    for (const auto& row : fig2_left_sweep(thetas, xs))
      s << fmt9(row.theta) << "," << fmt9(row.x) << "," << fmt9(row.n_eff)
        << "\n";
  } else {
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(std::pow(10.0, -3.0 + 0.25 * i));
    s << "# qoctrl fig2 right (loss = 0.01)\n";
    s << "eta_cl2,n_eff_vacuum,n_eff_10db\n";
    for (const auto& row : fig2_right_sweep(grid, 0.01))
      s << fmt9(row.eta_cl2) << "," << fmt9(row.n_eff_vacuum) << ","
        << fmt9(row.n_eff_squeezed) << "\n";
  }
  emit(o, s.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal linear feedback control of a measured oscillator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string verify_level = "fast";
  std::string fig2_panel;

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "full report for one model");
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate metrics over configured axes");
  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "optimize the configured system");
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the cross-check oracle suite");
  verify_cmd->add_option("--level", verify_level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  CLI::App* fig2_cmd = app.add_subcommand("fig2", "paper-figure CSV presets");
  fig2_cmd->add_option("panel", fig2_panel, "left or right")
      ->required()
      ->check(CLI::IsMember({"left", "right"}));

  for (CLI::App* cmd :
       {analyze_cmd, sweep_cmd, optimize_cmd, verify_cmd, fig2_cmd})
    add_common(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(analyze_cmd)) return run_analyze(opts);
    if (app.got_subcommand(sweep_cmd)) return run_sweep_cmd(opts);
    if (app.got_subcommand(optimize_cmd)) return run_optimize(opts);
    if (app.got_subcommand(verify_cmd)) return run_verify(opts, verify_level);
    if (app.got_subcommand(fig2_cmd)) return run_fig2(opts, fig2_panel);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
