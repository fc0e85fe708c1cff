#ifndef QOC_TOOLS_REPORT_HPP
#define QOC_TOOLS_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"
#include "qoc/control.hpp"

namespace qoc::tools {

// Full analysis of one model: conditional and controlled states, scalar
// metrics, and the optimal-controller data.
struct AnalysisReport {
  double mu, a_param, b_param;  // a/b in units of omega_p^2 (free mass: raw)
  GaussianState conditional;
  GaussianState controlled;
  double u_c, u_ctrl;
  ControlMetrics scalars;
  MarkovianController controller;
  double semiclassical;
  bool free_mass;
  bool sql_not_beaten;  // free-mass phase-quadrature flag
};

AnalysisReport analyze(const SystemModel& model);

void render_human(const AnalysisReport& r, std::ostream& out);
nlohmann::json render_json(const AnalysisReport& r);

// Sweep execution: the cartesian grid of the configured axes, one row per
// point, evaluated concurrently but assembled in axis order.
struct SweepRow {
  std::vector<double> axis_values;
  ControlMetrics m;
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;
};

SweepTable run_sweep(const RunConfig& cfg, int workers);

// CSV with 9 significant digits, ',' separator, and '#' metadata header
// carrying the config hash and seed; byte-stable for a fixed config.
void write_sweep_csv(const SweepTable& t, const RunConfig& cfg,
                     std::ostream& out);
nlohmann::json sweep_json(const SweepTable& t, const RunConfig& cfg);

// Number formatting shared by all CSV emitters ("%.9g", '.' decimal).
std::string fmt9(double v);

}  // namespace qoc::tools

#endif
