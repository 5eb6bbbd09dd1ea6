#pragma once

// Scenario runner behind the command-line tool: resolves configuration,
// runs sweeps on a worker pool and writes delimiter-separated tables.
// Physical units (MHz, us, kHz) appear only in this layer.

#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinsinglet/config.hpp"

namespace spinsinglet {

enum class Scenario {
  fig1a_landscape,
  fig1b_controls,
  fig1c_fidelity,
  fig1d_infidelity_vs_J,
  fig2_delta_g_sweep,
  fig3a_deltaJ_unmodulated,
  fig3b_kappa_eta_scan,
  fig3c_modulated_fidelity,
  fig3d_error_sweeps,
  fig4_dephasing,
  init_demo,
};

const std::vector<Scenario>& all_scenarios();
std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

/// Built-in numeric parameters of a scenario. Only these keys may be overridden.
const std::map<std::string, double>& scenario_defaults(Scenario s);

struct RunConfig {
  Scenario scenario = Scenario::fig1c_fidelity;
  std::map<std::string, double> params;
  std::string out;       // empty: "<scenario>.csv"
  unsigned workers = 1;
  std::size_t steps = 0; // 0: module defaults

  double get(const std::string& key) const;
};

/// Defaults, then the config file entries, then --set entries. The keys
/// `scenario`, `out`, `workers` and `steps` are accepted in either source.
/// Unknown keys and malformed values throw ConfigError.
RunConfig resolve_config(Scenario fallback, const ConfigEntries& file, const ConfigEntries& overrides);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> status;  // empty, or one entry per row
  std::vector<std::pair<std::string, std::string>> metadata;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_number(double v);
/// Metadata as leading '#' lines, then the header and the rows. 12 significant digits.
std::string render_table(const Table& table, char delimiter = ',');
void emit_table(const Table& table, const std::string& path, char delimiter = ',');

/// Points where the piecewise-linear curve through (xs, ys) meets `level`.
std::vector<double> crossings(const std::vector<double>& xs, const std::vector<double>& ys, double level);

/// The contiguous range around `anchor` where ys >= level. An edge that
/// reaches the end of the sampled range is open and reported at that end.
struct Window {
  double lower = std::numeric_limits<double>::quiet_NaN();
  double upper = std::numeric_limits<double>::quiet_NaN();
  bool lower_open = false;
  bool upper_open = false;
};
Window fidelity_window(const std::vector<double>& xs, const std::vector<double>& ys, double level,
                       double anchor = 0.0);

/// Inclusive grid lo, lo + step, ..., hi (hi included up to rounding).
std::vector<double> grid_values(double lo, double hi, double step);

/// Empirical exchange-vs-gate-voltage law; throws std::domain_error at VM = VM1.
double exchange_from_voltage(double vm, double c, double vm0, double vm1, double von);

struct PhysicalUnits {
  double j_mhz = 0.0;
  double two_j_mhz = 0.0;        // tuning bound for constant J
  double omega_mhz = 0.0;        // 2 pi kappa / T, when kappa > 0
  double three_omega_mhz = 0.0;  // tuning bound for modulated J
};
/// J_natural is in units of 1/T; T in microseconds. Values are in MHz
/// (1/us), with angular frequencies quoted in the same unit.
PhysicalUnits units_bridge(double t_physical_us, double j_natural, double kappa = 0.0);

/// gamma [kHz] times T [us] as a dimensionless rate in 1/T.
double dimensionless_rate(double gamma_khz, double t_physical_us);

/// Runs the scenario and returns its table (nothing written).
Table run_scenario(const RunConfig& config);

/// Exit codes of run(): 0 ok, 2 configuration error, 3 numerical-quality failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs and writes the table to config.out. Returns an exit code; messages go to `log`.
int run(const RunConfig& config, std::string* log = nullptr);

}  // namespace spinsinglet
