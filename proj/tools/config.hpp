#ifndef QOC_TOOLS_CONFIG_HPP
#define QOC_TOOLS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qoc/colddamp.hpp"
#include "qoc/optics.hpp"
#include "qoc/plant.hpp"

namespace qoc::tools {

// Thrown for malformed configuration documents; the CLI maps it to exit 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SystemKind { kMarkovian, kReadout, kThermal };

struct ThermalSpec {
  ThermalEnvironment env{0.0, 1.0, 1.0};
  double strength_x = 1.0;
};

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

// One declarative document describing the system under study plus optional
// sweep axes. All quantities carry unit tags ("si" or "natural"); plain
// numbers default to natural units (hbar = m = omega_p = 1).
struct RunConfig {
  SystemKind kind = SystemKind::kMarkovian;
  SystemModel model;         // markovian and thermal systems resolve to this
  ReadoutConfig readout;     // valid when kind == kReadout
  ThermalSpec thermal;       // valid when kind == kThermal
  std::vector<SweepAxis> axes;
  std::uint64_t seed = 42;
  int workers = 0;
  std::uint64_t hash = 0;    // FNV-1a of the canonical document
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// The reference configuration used when no --config is given.
RunConfig default_config();

// Rebuild the model after overriding one sweepable parameter.
RunConfig with_parameter(const RunConfig& base, const std::string& parameter,
                         double value);

// Metrics-ready model for the current settings (free mass for readout).
SystemModel resolve_model(const RunConfig& cfg);

}  // namespace qoc::tools

#endif
