#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qoc/errors.hpp"

namespace qoc::tools {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// A quantity is either a plain number (natural units) or
// {"value": v, "unit": "si" | "natural"}.
struct Quantity {
  double value;
  bool si;
};

Quantity quantity(const json& node, const std::string& name) {
  if (node.is_number()) return {node.get<double>(), false};
  if (node.is_object() && node.contains("value")) {
    const std::string unit = node.value("unit", "natural");
    if (unit != "si" && unit != "natural")
      throw ConfigError(name + ": unit must be \"si\" or \"natural\"");
    return {node.at("value").get<double>(), unit == "si"};
  }
  throw ConfigError(name + ": expected a number or {value, unit}");
}

double require_natural(const json& node, const std::string& name) {
  const Quantity q = quantity(node, name);
  if (q.si)
    throw ConfigError(name + ": SI units are not meaningful for this field");
  return q.value;
}

void parse_markovian(const json& sys, RunConfig& cfg) {
  const json& osc = sys.value("oscillator", json::object());
  const json& noise = sys.at("noise");

  const Quantity wp = osc.contains("omega_p")
                          ? quantity(osc.at("omega_p"), "oscillator.omega_p")
                          : Quantity{1.0, false};
  double omega0 = 1.0, mass = 1.0;
  if (wp.si) {
    if (!osc.contains("mass_kg"))
      throw ConfigError(
          "oscillator: SI omega_p requires mass_kg for nondimensionalization");
    omega0 = wp.value;
    mass = osc.at("mass_kg").get<double>();
    if (!(omega0 > 0.0) || !(mass > 0.0))
      throw ConfigError("oscillator: SI omega_p and mass_kg must be positive");
  }

  auto spectrum = [&](const char* key, double fallback) {
    if (!noise.contains(key)) return fallback;
    const Quantity q = quantity(noise.at(key), std::string("noise.") + key);
    if (!q.si) return q.value;
    if (!wp.si)
      throw ConfigError(
          "noise: SI spectra require an SI oscillator.omega_p reference");
    const std::string k = key;
    // Nondimensionalization with x0 = sqrt(hbar/(m omega0)).
    if (k == "s_zz") return q.value * mass * omega0 * omega0 / kHbarSI;
    if (k == "s_ff") return q.value / (kHbarSI * mass * omega0 * omega0);
    return q.value / kHbarSI;  // s_zf
  };

  const double s_zz = spectrum("s_zz", 1.0);
  const double s_ff = spectrum("s_ff", 1.0);
  const double s_zf = spectrum("s_zf", 0.0);

  double omega_p, gamma_p = 0.0;
  if (wp.si) {
    omega_p = 1.0;  // frequencies measured in units of omega0
    if (osc.contains("gamma_p")) {
      const Quantity g = quantity(osc.at("gamma_p"), "oscillator.gamma_p");
      gamma_p = g.si ? g.value / omega0 : g.value;
    }
  } else {
    omega_p = wp.value;
    if (osc.contains("gamma_p"))
      gamma_p = require_natural(osc.at("gamma_p"), "oscillator.gamma_p");
  }

  cfg.kind = SystemKind::kMarkovian;
  cfg.model = SystemModel{Oscillator{omega_p, gamma_p},
                          MarkovianNoise{s_zz, s_ff, s_zf}};
}

void parse_readout(const json& sys, RunConfig& cfg) {
  const json& r = sys.at("readout");
  ReadoutConfig rc;
  rc.omega_q = r.value("omega_q", 1.0);
  rc.phi = r.value("phi", 0.0);
  rc.squeeze_db = r.value("squeeze_db", 0.0);
  rc.squeeze_angle = r.value("squeeze_angle", 0.0);
  rc.loss = r.value("loss", 0.0);
  if (r.contains("eta_cl2")) {
    const auto b = ClassicalBudget::symmetric(r.at("eta_cl2").get<double>());
    rc.zeta_f = b.zeta_f;
    rc.zeta_x = b.zeta_x;
  } else {
    rc.zeta_f = r.value("zeta_f", 0.0);
    rc.zeta_x = r.value("zeta_x", 0.0);
  }
  rc.validate();
  cfg.kind = SystemKind::kReadout;
  cfg.readout = rc;
}

void parse_thermal(const json& sys, RunConfig& cfg) {
  const json& t = sys.at("thermal");
  ThermalSpec spec;
  if (t.contains("theta")) {
    spec.env.temperature_k = 0.0;
    spec.env.quality = 1.0;
    spec.env.omega_p_si = 1.0;
    // Direct reduced temperature; bypasses the SI boundary.
    const double theta = t.at("theta").get<double>();
    if (theta < 0.0) throw ConfigError("thermal.theta must be >= 0");
    spec.env.temperature_k = theta * critical_temperature(spec.env).t_c;
  } else {
    const Quantity temp = quantity(t.at("temperature"), "thermal.temperature");
    const Quantity wp = quantity(t.at("omega_p"), "thermal.omega_p");
    if (!temp.si || !wp.si)
      throw ConfigError(
          "thermal: temperature and omega_p must carry the \"si\" unit tag");
    spec.env.temperature_k = temp.value;
    spec.env.omega_p_si = wp.value;
    spec.env.quality = t.at("quality").get<double>();
  }
  spec.strength_x = t.value("strength_x", 1.0);
  if (!(spec.strength_x > 0.0))
    throw ConfigError("thermal.strength_x must be > 0");
  cfg.kind = SystemKind::kThermal;
  cfg.thermal = spec;
}

std::vector<double> axis_values(const json& ax) {
  if (ax.contains("values")) {
    auto v = ax.at("values").get<std::vector<double>>();
    if (v.empty()) throw ConfigError("sweep axis: empty values list");
    return v;
  }
  const double from = ax.at("from").get<double>();
  const double to = ax.at("to").get<double>();
  const int points = ax.at("points").get<int>();
  const std::string spacing = ax.value("spacing", "linear");
  if (points < 1) throw ConfigError("sweep axis: points must be >= 1");
  std::vector<double> v(points);
  if (spacing == "log") {
    if (!(from > 0.0) || !(to > 0.0))
      throw ConfigError("sweep axis: log spacing requires positive bounds");
    const double la = std::log(from), lb = std::log(to);
    for (int i = 0; i < points; ++i)
      v[i] = std::exp(points == 1 ? la : la + (lb - la) * i / (points - 1));
  } else if (spacing == "linear") {
    for (int i = 0; i < points; ++i)
      v[i] = points == 1 ? from : from + (to - from) * i / (points - 1);
  } else {
    throw ConfigError("sweep axis: spacing must be \"linear\" or \"log\"");
  }
  return v;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  try {
    if (!doc.contains("system"))
      throw ConfigError("config: missing \"system\" block");
    const json& sys = doc.at("system");
    const int kinds = sys.contains("noise") + sys.contains("readout") +
                      sys.contains("thermal");
    if (kinds != 1)
      throw ConfigError(
          "config: exactly one of system.noise, system.readout, "
          "system.thermal must be present");
    if (sys.contains("noise")) parse_markovian(sys, cfg);
    else if (sys.contains("readout")) parse_readout(sys, cfg);
    else parse_thermal(sys, cfg);

    if (doc.contains("sweep"))
      for (const json& ax : doc.at("sweep").at("axes"))
        cfg.axes.push_back({ax.at("parameter").get<std::string>(),
                            axis_values(ax)});
    if (cfg.axes.size() > 2)
      throw ConfigError("config: at most two sweep axes are supported");
    cfg.seed = doc.value("seed", std::uint64_t{42});
    cfg.workers = doc.value("workers", 0);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.hash = fnv1a(doc.dump());
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig default_config() {
  return parse_config(json{
      {"system",
       {{"oscillator", {{"omega_p", 1.0}}},
        {"noise", {{"s_zz", 1.0}, {"s_ff", 1.0}, {"s_zf", 0.0}}}}}});
}

RunConfig with_parameter(const RunConfig& base, const std::string& parameter,
                         double value) {
  RunConfig cfg = base;
  switch (cfg.kind) {
    case SystemKind::kMarkovian: {
      auto& n = cfg.model.noise;
      auto& o = cfg.model.osc;
      if (parameter == "s_zz") n = MarkovianNoise{value, n.s_ff, n.s_zf};
      else if (parameter == "s_ff") n = MarkovianNoise{n.s_zz, value, n.s_zf};
      else if (parameter == "s_zf") n = MarkovianNoise{n.s_zz, n.s_ff, value};
      else if (parameter == "omega_p") o = Oscillator{value, o.gamma_p};
      else if (parameter == "gamma_p") o = Oscillator{o.omega_p, value};
      else throw ConfigError("unknown sweep parameter: " + parameter);
      break;
    }
    case SystemKind::kReadout: {
      auto& r = cfg.readout;
      if (parameter == "omega_q") r.omega_q = value;
      else if (parameter == "phi") r.phi = value;
      else if (parameter == "squeeze_db") r.squeeze_db = value;
      else if (parameter == "squeeze_angle") r.squeeze_angle = value;
      else if (parameter == "loss") r.loss = value;
      else if (parameter == "eta_cl2") {
        const auto b = ClassicalBudget::symmetric(value);
        r.zeta_f = b.zeta_f;
        r.zeta_x = b.zeta_x;
      } else {
        throw ConfigError("unknown sweep parameter: " + parameter);
      }
      r.validate();
      break;
    }
    case SystemKind::kThermal: {
      if (parameter == "theta") {
        cfg.thermal.env.temperature_k =
            value * critical_temperature(cfg.thermal.env).t_c;
      } else if (parameter == "x") {
        if (!(value > 0.0)) throw ConfigError("sweep: x must be > 0");
        cfg.thermal.strength_x = value;
      } else {
        throw ConfigError("unknown sweep parameter: " + parameter);
      }
      break;
    }
  }
  return cfg;
}

SystemModel resolve_model(const RunConfig& cfg) {
  switch (cfg.kind) {
    case SystemKind::kMarkovian:
      return cfg.model;
    case SystemKind::kReadout:
      return SystemModel{Oscillator{0.0, 0.0}, to_markovian(cfg.readout)};
    case SystemKind::kThermal: {
      const double theta = critical_temperature(cfg.thermal.env).theta;
      return cold_damping_model(theta, cfg.thermal.strength_x);
    }
  }
  throw ConfigError("unreachable system kind");
}

}  // namespace qoc::tools
