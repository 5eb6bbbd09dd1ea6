#include "spinsinglet/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinsinglet/dynamics.hpp"
#include "spinsinglet/initprep.hpp"
#include "spinsinglet/invariantpath.hpp"
#include "spinsinglet/modulation.hpp"
#include "spinsinglet/optctrl.hpp"
#include "spinsinglet/parallel.hpp"

namespace spinsinglet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Params = std::map<std::string, double>;

const std::map<Scenario, Params>& defaults_table() {
  static const std::map<Scenario, Params> table = {
      {Scenario::fig1a_landscape,
       {{"kappa1_min", 0.0}, {"kappa1_max", 2.0}, {"kappa2_min", 0.0}, {"kappa2_max", 2.0}, {"kappa_step", 0.01},
        {"refine", 1.0}, {"kappa1_ref", 0.97}, {"kappa2_ref", 0.71}}},
      {Scenario::fig1b_controls,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"J", 300.0}, {"eta", 2.3}, {"samples", 401.0}}},
      {Scenario::fig1c_fidelity, {{"kappa1", 0.97}, {"kappa2", 0.71}, {"J", 300.0}, {"full", 1.0}}},
      {Scenario::fig1d_infidelity_vs_J,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"J_min", 100.0}, {"J_max", 400.0}, {"J_step", 50.0}}},
      {Scenario::fig2_delta_g_sweep,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"delta_min", -1.0}, {"delta_max", 1.0}, {"delta_step", 0.01},
        {"level", 0.9}}},
      {Scenario::fig3a_deltaJ_unmodulated,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"J", 300.0}, {"ratio_min", -0.05}, {"ratio_max", 0.05},
        {"ratio_step", 0.001}, {"level", 0.9}}},
      {Scenario::fig3b_kappa_eta_scan,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"kappa_min", 2.0}, {"kappa_max", 20.0}, {"kappa_step", 2.0},
        {"eta_min", 0.5}, {"eta_max", 4.0}, {"eta_step", 0.1}}},
      {Scenario::fig3c_modulated_fidelity,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"kappa", 16.0}, {"eta", 2.3}, {"full", 1.0}}},
      {Scenario::fig3d_error_sweeps,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"kappa", 16.0}, {"eta", 2.3}, {"delta_min", -1.0},
        {"delta_max", 1.0}, {"delta_step", 0.01}, {"level", 0.9}}},
      {Scenario::fig4_dephasing,
       {{"kappa1", 0.97}, {"kappa2", 0.71}, {"modulated", 1.0}, {"kappa", 16.0}, {"eta", 2.3}, {"J", 300.0},
        {"T_physical_us", 11.56}, {"gamma_min_khz", 0.0}, {"gamma_max_khz", 1.0}, {"gamma_step_khz", 0.1}}},
      {Scenario::init_demo, {{"Jy", 300.0}, {"modulated", 0.0}, {"kappa", 16.0}, {"jy0_over_omega", 1.84}}},
  };
  return table;
}

PathParams path_of(const RunConfig& c) { return PathParams::singlet(c.get("kappa1"), c.get("kappa2")); }

std::size_t steps_or(const RunConfig& c, std::size_t fallback) { return c.steps ? c.steps : fallback; }

ModulationParams modulation_of(const RunConfig& c) { return ModulationParams{c.get("eta"), c.get("kappa"), 1.0}; }

void add_meta(Table& t, const std::string& key, double v) { t.metadata.emplace_back(key, format_number(v)); }
void add_meta(Table& t, const std::string& key, const std::string& v) { t.metadata.emplace_back(key, v); }

void add_window(Table& t, const std::string& prefix, const Window& w) {
  add_meta(t, prefix + "_lower", w.lower);
  add_meta(t, prefix + "_upper", w.upper);
  add_meta(t, prefix + "_lower_open", w.lower_open ? 1.0 : 0.0);
  add_meta(t, prefix + "_upper_open", w.upper_open ? 1.0 : 0.0);
}

// fidelity recorded at `time`, NaN when the run has no sample there
double sample_at(const SimResult& r, double time) {
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    if (std::abs(r.times[k] - time) < 1e-12) return r.fidelities[k];
  }
  return kNaN;
}

std::vector<double> column(const Table& t, std::size_t k) {
  std::vector<double> v;
  v.reserve(t.rows.size());
  for (const auto& r : t.rows) v.push_back(r[k]);
  return v;
}

// ---- scenarios -------------------------------------------------------------

Table fig1a(const RunConfig& c) {
  const QsGrid grid{c.get("kappa1_min"), c.get("kappa1_max"), c.get("kappa2_min"), c.get("kappa2_max"),
                    c.get("kappa_step")};
  const PathParams base = PathParams::singlet(0.0, 0.0);
  const QsLandscape l = qs_landscape(grid, base, c.workers);
  Table t{{"kappa1", "kappa2", "qs"}, {}, {}, {}};
  for (std::size_t i = 0; i < l.kappa1_grid.size(); ++i) {
    for (std::size_t j = 0; j < l.kappa2_grid.size(); ++j) t.rows.push_back({l.kappa1_grid[i], l.kappa2_grid[j], l.at(i, j)});
  }
  const auto best = optimize_kappas(l, c.get("refine") != 0.0, base);
  add_meta(t, "global_min_kappa1", best.kappa1);
  add_meta(t, "global_min_kappa2", best.kappa2);
  add_meta(t, "global_min_qs", best.qs);
  const double r1 = c.get("kappa1_ref"), r2 = c.get("kappa2_ref");
  const auto minima = local_minima(l);
  const auto near = std::min_element(minima.begin(), minima.end(), [&](const auto& a, const auto& b) {
    return std::hypot(a.kappa1 - r1, a.kappa2 - r2) < std::hypot(b.kappa1 - r1, b.kappa2 - r2);
  });
  add_meta(t, "local_minima", static_cast<double>(minima.size()));
  if (near != minima.end()) {
    add_meta(t, "nearest_local_min_kappa1", near->kappa1);
    add_meta(t, "nearest_local_min_kappa2", near->kappa2);
    add_meta(t, "nearest_local_min_qs", near->qs);
  }
  add_meta(t, "qs_at_reference", qs(PathParams::singlet(r1, r2)));
  add_meta(t, "exact_sensitivity_at_reference", sensitivity_exact(PathParams::singlet(r1, r2)));
  return t;
}

Table fig1b(const RunConfig& c) {
  const PathParams path = path_of(c);
  const double j = c.get("J");
  const double eta = c.get("eta");
  const auto n = static_cast<std::size_t>(c.get("samples"));
  if (n < 2) throw ConfigError("samples must be at least 2");
  Table t{{"t[T]", "theta[rad]", "beta[rad]", "g1[1/T]", "g2[1/T]", "g_resonant[1/T]", "gbar1[1/T]", "gbar2[1/T]"},
          {}, {}, {}};
  double peak = 0.0, peak_bar1 = 0.0, peak_bar2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double time = i + 1 == n ? path.T : path.T * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto g = controls_from_path(time, path);
    const auto bar = invert_controls(g, eta);
    t.rows.push_back({time, theta(time, path), beta(time, path), g.g1, g.g2, resonant_g(time, g.g1, g.g2, j),
                      bar.g1, bar.g2});
  }
  const ControlSet dense = ControlSet::from_path(path);
  for (std::size_t i = 0; i < dense.samples(); ++i) {
    peak = std::max({peak, std::abs(dense.g1()[i]), std::abs(dense.g2()[i])});
    const auto bar = invert_controls(ControlPair{dense.g1()[i], dense.g2()[i]}, eta);
    peak_bar1 = std::max(peak_bar1, std::abs(bar.g1));
    peak_bar2 = std::max(peak_bar2, std::abs(bar.g2));
  }
  add_meta(t, "g_max", peak);
  add_meta(t, "gbar1_max", peak_bar1);
  add_meta(t, "gbar2_max", peak_bar2);
  add_meta(t, "control_samples", static_cast<double>(dense.samples()));
  return t;
}

Table fig1c(const RunConfig& c) {
  const ControlSet controls = ControlSet::from_path(path_of(c));
  const auto program = PulseProgram::resonant(controls, c.get("J"));
  const std::size_t ns = steps_or(c, default_steps(program));
  const std::size_t ne = steps_or(c, default_steps_effective());
  const std::size_t nl = steps_or(c, default_steps_lab(program));
  const SimResult eff = simulate_effective(controls, {}, ne);
  const SimResult rot = simulate_rotating(program, ns);
  const bool full = c.get("full") != 0.0;
  const SimResult lab = full ? simulate_full(program, nl) : SimResult{};
  Table t{{"t[T]", "F_effective", "F_rotating", "F_full"}, {}, {}, {}};
  for (std::size_t i = 0; i < rot.times.size(); ++i) {
    const double time = rot.times[i];
    t.rows.push_back({time, sample_at(eff, time), rot.fidelities[i], full ? sample_at(lab, time) : kNaN});
  }
  add_meta(t, "steps_effective", static_cast<double>(ne));
  add_meta(t, "steps_rotating", static_cast<double>(ns));
  if (full) add_meta(t, "steps_full", static_cast<double>(nl));
  add_meta(t, "final_F_effective", eff.final_fidelity);
  add_meta(t, "final_F_rotating", rot.final_fidelity);
  add_meta(t, "norm_drift_rotating", rot.norm_drift);
  if (full) {
    add_meta(t, "final_F_full", lab.final_fidelity);
    add_meta(t, "leakage_full", lab.leakage);
    add_meta(t, "norm_drift_full", lab.norm_drift);
  }
  return t;
}

Table fig1d(const RunConfig& c) {
  const ControlSet controls = ControlSet::from_path(path_of(c));
  const auto js = grid_values(c.get("J_min"), c.get("J_max"), c.get("J_step"));
  const std::size_t ns = steps_or(c, std::size_t{1} << 14);
  const auto runs = parallel_map<SimResult>(js.size(), c.workers, [&](std::size_t i) {
    return simulate_rotating(PulseProgram::resonant(controls, js[i]), ns);
  });
  Table t{{"J[1/T]", "infidelity", "norm_drift"}, {}, {}, {}};
  for (std::size_t i = 0; i < js.size(); ++i) t.rows.push_back({js[i], 1.0 - runs[i].final_fidelity, runs[i].norm_drift});
  add_meta(t, "steps_rotating", static_cast<double>(ns));
  return t;
}

Table fig2(const RunConfig& c) {
  const auto deltas = grid_values(c.get("delta_min"), c.get("delta_max"), c.get("delta_step"));
  const std::array<ControlSet, 3> sets{ControlSet::from_path(path_of(c)), baseline_controls(BaselineKind::reverse_only),
                                       baseline_controls(BaselineKind::flat)};
  const std::size_t ne = steps_or(c, default_steps_effective());
  const auto cells = parallel_map<double>(deltas.size() * 3, c.workers, [&](std::size_t idx) {
    return simulate_effective(sets[idx % 3], ErrorSpec::drive(deltas[idx / 3]), ne).final_fidelity;
  });
  Table t{{"delta_g", "F_optimized", "F_reverse_only", "F_flat"}, {}, {}, {}};
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    t.rows.push_back({deltas[i], cells[3 * i], cells[3 * i + 1], cells[3 * i + 2]});
  }
  const double level = c.get("level");
  add_meta(t, "steps_effective", static_cast<double>(ne));
  add_window(t, "window_optimized", fidelity_window(deltas, column(t, 1), level));
  add_window(t, "window_reverse_only", fidelity_window(deltas, column(t, 2), level));
  add_window(t, "window_flat", fidelity_window(deltas, column(t, 3), level));
  return t;
}

Table fig3a(const RunConfig& c) {
  const ControlSet controls = ControlSet::from_path(path_of(c));
  const double gmax = controls.max_abs();
  const auto program = PulseProgram::resonant(controls, c.get("J"));
  const auto ratios = grid_values(c.get("ratio_min"), c.get("ratio_max"), c.get("ratio_step"));
  const std::size_t ns = steps_or(c, default_steps(program));
  const auto f = parallel_map<double>(ratios.size(), c.workers, [&](std::size_t i) {
    return simulate_rotating(apply_error(program, ErrorSpec::coupling(ratios[i] * gmax)), ns).final_fidelity;
  });
  Table t{{"deltaJ_over_gmax", "deltaJ[1/T]", "F"}, {}, {}, {}};
  for (std::size_t i = 0; i < ratios.size(); ++i) t.rows.push_back({ratios[i], ratios[i] * gmax, f[i]});
  add_meta(t, "g_max", gmax);
  add_meta(t, "steps_rotating", static_cast<double>(ns));
  add_window(t, "window", fidelity_window(ratios, f, c.get("level")));
  return t;
}

Table fig3b(const RunConfig& c) {
  const auto kappas = grid_values(c.get("kappa_min"), c.get("kappa_max"), c.get("kappa_step"));
  const auto etas = grid_values(c.get("eta_min"), c.get("eta_max"), c.get("eta_step"));
  const std::size_t per_period = c.steps ? c.steps : 1024;
  const auto scan = scan_kappa_eta(kappas, etas, path_of(c), c.workers, per_period);
  Table t{{"kappa", "eta", "F"}, {}, {}, {}};
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    for (std::size_t j = 0; j < etas.size(); ++j) {
      const std::size_t k = i * etas.size() + j;
      t.rows.push_back({kappas[i], etas[j], scan.fidelity[k]});
      t.status.push_back(scan.status[k]);
    }
  }
  add_meta(t, "steps_per_period", static_cast<double>(per_period));
  return t;
}

Table fig3c(const RunConfig& c) {
  const ModulationParams mp = modulation_of(c);
  const ControlSet gtilde = ControlSet::from_path(path_of(c));
  const PulseProgram program = modulated_program(gtilde, mp);
  const std::size_t ns = steps_or(c, default_steps(program));
  const std::size_t ne = steps_or(c, default_steps_effective());
  const std::size_t nl = steps_or(c, default_steps_lab(program));
  const SimResult eff = simulate_effective(gtilde, {}, ne);
  const SimResult rot = simulate_rotating(program, ns);
  const bool full = c.get("full") != 0.0;
  const SimResult lab = full ? simulate_full(program, nl) : SimResult{};
  Table t{{"t[T]", "F_effective", "F_rotating", "F_full"}, {}, {}, {}};
  for (std::size_t i = 0; i < rot.times.size(); ++i) {
    const double time = rot.times[i];
    t.rows.push_back({time, sample_at(eff, time), rot.fidelities[i], full ? sample_at(lab, time) : kNaN});
  }
  if (full) add_meta(t, "steps_full", static_cast<double>(nl));
  add_meta(t, "J0", mp.j0());
  add_meta(t, "omega", mp.omega());
  add_meta(t, "upsilon", upsilon(mp.eta));
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < program.drive.samples(); ++i) {
    b1 = std::max(b1, std::abs(program.drive.g1()[i]));
    b2 = std::max(b2, std::abs(program.drive.g2()[i]));
  }
  add_meta(t, "gbar1_max", b1);
  add_meta(t, "gbar2_max", b2);
  add_meta(t, "steps_rotating", static_cast<double>(ns));
  add_meta(t, "infidelity_rotating", 1.0 - rot.final_fidelity);
  if (full) {
    add_meta(t, "infidelity_full", 1.0 - lab.final_fidelity);
    add_meta(t, "leakage_full", lab.leakage);
  }
  return t;
}

Table fig3d(const RunConfig& c) {
  const PulseProgram program = modulated_program(ControlSet::from_path(path_of(c)), modulation_of(c));
  const auto deltas = grid_values(c.get("delta_min"), c.get("delta_max"), c.get("delta_step"));
  const std::size_t ns = steps_or(c, default_steps(program));
  const auto cells = parallel_map<double>(deltas.size() * 2, c.workers, [&](std::size_t idx) {
    const double d = deltas[idx / 2];
    const ErrorSpec e = idx % 2 == 0 ? ErrorSpec::drive(d) : ErrorSpec::coupling(d);
    return simulate_rotating(apply_error(program, e), ns).final_fidelity;
  });
  Table t{{"delta", "F_delta_g", "F_delta_J"}, {}, {}, {}};
  for (std::size_t i = 0; i < deltas.size(); ++i) t.rows.push_back({deltas[i], cells[2 * i], cells[2 * i + 1]});
  const double level = c.get("level");
  add_meta(t, "steps_rotating", static_cast<double>(ns));
  add_window(t, "window_delta_g", fidelity_window(deltas, column(t, 1), level));
  add_window(t, "window_delta_J", fidelity_window(deltas, column(t, 2), level));
  return t;
}

Table fig4(const RunConfig& c) {
  const ControlSet controls = ControlSet::from_path(path_of(c));
  const bool modulated = c.get("modulated") != 0.0;
  const PulseProgram program = modulated ? modulated_program(controls, modulation_of(c))
                                         : PulseProgram::resonant(controls, c.get("J"));
  const double t_us = c.get("T_physical_us");
  const auto gammas = grid_values(c.get("gamma_min_khz"), c.get("gamma_max_khz"), c.get("gamma_step_khz"));
  const std::size_t ns = steps_or(c, default_steps_lab(program));
  const auto runs = parallel_map<SimResult>(gammas.size(), c.workers, [&](std::size_t i) {
    return simulate_lindblad(program, dimensionless_rate(gammas[i], t_us), ns);
  });
  Table t{{"gamma[kHz]", "gamma[1/T]", "F", "trace_drift", "min_eigenvalue", "leakage"}, {}, {}, {}};
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const auto& r = runs[i];
    t.rows.push_back({gammas[i], dimensionless_rate(gammas[i], t_us), r.final_fidelity, r.norm_drift, r.min_eigenvalue,
                      r.leakage});
  }
  const double j_nat = modulated ? modulation_of(c).j0() : c.get("J");
  const auto units = units_bridge(t_us, j_nat, modulated ? c.get("kappa") : 0.0);
  add_meta(t, "J_MHz", units.j_mhz);
  if (modulated) {
    add_meta(t, "omega_MHz", units.omega_mhz);
    add_meta(t, "three_omega_MHz", units.three_omega_mhz);
  } else {
    add_meta(t, "two_J_MHz", units.two_j_mhz);
  }
  add_meta(t, "steps", static_cast<double>(ns));
  return t;
}

Table init_demo(const RunConfig& c) {
  const bool modulated = c.get("modulated") != 0.0;
  const double omega = 2.0 * std::numbers::pi * c.get("kappa");
  Table t{{"target", "population", "max_ket3_population", "round_trip_overlap"}, {}, {}, {}};
  const std::array<std::pair<InitTarget, const char*>, 3> targets{
      {{InitTarget::ket0, "ket0"}, {InitTarget::ket1, "ket1"}, {InitTarget::ket2, "ket2"}}};
  for (const auto& [target, name] : targets) {
    const PathParams path = init_path(target);
    const InitSchedule s = modulated ? init_modulated_controls(path, c.get("jy0_over_omega") * omega, omega)
                                     : init_controls(path, c.get("Jy"));
    const std::size_t ns = steps_or(c, default_init_steps(s));
    const InitResult r = simulate_init(s, target, ns);
    t.rows.push_back({static_cast<double>(init_target_index(target)), r.target_population, r.max_ket3_population,
                      init_round_trip_overlap(s, ns)});
    t.status.emplace_back(name);
    for (const auto& w : s.warnings) add_meta(t, std::string("warning_") + name, w);
  }
  return t;
}

}  // namespace

// ---- scenarios and configuration -------------------------------------------

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> list = {
      Scenario::fig1a_landscape,    Scenario::fig1b_controls,           Scenario::fig1c_fidelity,
      Scenario::fig1d_infidelity_vs_J, Scenario::fig2_delta_g_sweep,    Scenario::fig3a_deltaJ_unmodulated,
      Scenario::fig3b_kappa_eta_scan, Scenario::fig3c_modulated_fidelity, Scenario::fig3d_error_sweeps,
      Scenario::fig4_dephasing,     Scenario::init_demo};
  return list;
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::fig1a_landscape: return "fig1a_landscape";
    case Scenario::fig1b_controls: return "fig1b_controls";
    case Scenario::fig1c_fidelity: return "fig1c_fidelity";
    case Scenario::fig1d_infidelity_vs_J: return "fig1d_infidelity_vs_J";
    case Scenario::fig2_delta_g_sweep: return "fig2_delta_g_sweep";
    case Scenario::fig3a_deltaJ_unmodulated: return "fig3a_deltaJ_unmodulated";
    case Scenario::fig3b_kappa_eta_scan: return "fig3b_kappa_eta_scan";
    case Scenario::fig3c_modulated_fidelity: return "fig3c_modulated_fidelity";
    case Scenario::fig3d_error_sweeps: return "fig3d_error_sweeps";
    case Scenario::fig4_dephasing: return "fig4_dephasing";
    case Scenario::init_demo: return "init_demo";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : all_scenarios()) {
    if (scenario_name(s) == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

const std::map<std::string, double>& scenario_defaults(Scenario s) { return defaults_table().at(s); }

double RunConfig::get(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("scenario " + scenario_name(scenario) + " has no parameter '" + key + "'");
  return it->second;
}

RunConfig resolve_config(Scenario fallback, const ConfigEntries& file, const ConfigEntries& overrides) {
  RunConfig c;
  c.scenario = fallback;
  // the scenario has to be known before its keys can be checked
  for (const auto* src : {&file, &overrides}) {
    for (const auto& [k, v] : *src) {
      if (k == "scenario") c.scenario = parse_scenario(v);
    }
  }
  c.params = scenario_defaults(c.scenario);
  for (const auto* src : {&file, &overrides}) {
    for (const auto& [k, v] : *src) {
      if (k == "scenario") continue;
      if (k == "out") {
        c.out = v;
      } else if (k == "workers") {
        const double w = parse_number(k, v);
        if (w < 1 || w != std::floor(w)) throw ConfigError("workers must be a positive integer");
        c.workers = static_cast<unsigned>(w);
      } else if (k == "steps") {
        const double n = parse_number(k, v);
        if (n < 1 || n != std::floor(n)) throw ConfigError("steps must be a positive integer");
        c.steps = static_cast<std::size_t>(n);
      } else if (auto it = c.params.find(k); it != c.params.end()) {
        it->second = parse_number(k, v);
      } else {
        throw ConfigError("unknown key '" + k + "' for scenario " + scenario_name(c.scenario));
      }
    }
  }
  return c;
}

// ---- tables ----------------------------------------------------------------

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render_table(const Table& table, char delimiter) {
  if (table.rows.empty()) throw std::invalid_argument("table has no rows");
  if (!table.status.empty() && table.status.size() != table.rows.size()) {
    throw std::invalid_argument("status column length does not match the rows");
  }
  std::ostringstream out;
  for (const auto& [k, v] : table.metadata) out << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? std::string(1, delimiter) : "") << table.columns[i];
  if (!table.status.empty()) out << delimiter << "status";
  out << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.columns.size()) throw std::invalid_argument("row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? std::string(1, delimiter) : "") << format_number(row[i]);
    if (!table.status.empty()) out << delimiter << table.status[r];
    out << '\n';
  }
  return out.str();
}

void emit_table(const Table& table, const std::string& path, char delimiter) {
  const std::string text = render_table(table, delimiter);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

std::vector<double> crossings(const std::vector<double>& xs, const std::vector<double>& ys, double level) {
  if (xs.size() != ys.size()) throw std::invalid_argument("crossings: length mismatch");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = ys[i] - level, b = ys[i + 1] - level;
    if (a == 0.0) out.push_back(xs[i]);
    else if (a * b < 0.0) out.push_back(xs[i] + (xs[i + 1] - xs[i]) * a / (a - b));
  }
  if (!xs.empty() && ys.back() == level) out.push_back(xs.back());
  return out;
}

Window fidelity_window(const std::vector<double>& xs, const std::vector<double>& ys, double level, double anchor) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("fidelity_window: bad input");
  std::size_t k = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs(xs[i] - anchor) < std::abs(xs[k] - anchor)) k = i;
  }
  Window w;
  if (!(ys[k] >= level)) return w;
  auto cross = [&](std::size_t inside, std::size_t outside) {
    const double a = ys[inside] - level, b = ys[outside] - level;
    return xs[inside] + (xs[outside] - xs[inside]) * a / (a - b);
  };
  std::size_t lo = k;
  while (lo > 0 && ys[lo - 1] >= level) --lo;
  if (lo == 0) {
    w.lower = xs.front();
    w.lower_open = true;
  } else {
    w.lower = cross(lo, lo - 1);
  }
  std::size_t hi = k;
  while (hi + 1 < xs.size() && ys[hi + 1] >= level) ++hi;
  if (hi + 1 == xs.size()) {
    w.upper = xs.back();
    w.upper_open = true;
  } else {
    w.upper = cross(hi, hi + 1);
  }
  return w;
}

std::vector<double> grid_values(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ConfigError("grid needs step > 0 and max >= min");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 10'000'000) throw ConfigError("grid too large");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + step * static_cast<double>(i);
    v[i] = std::abs(x) < 1e-12 * step ? 0.0 : x;
  }
  return v;
}

// ---- physical units --------------------------------------------------------

double exchange_from_voltage(double vm, double c, double vm0, double vm1, double von) {
  if (vm == vm1) throw std::domain_error("exchange_from_voltage: VM equals the pole VM1");
  if (!(von > 0.0)) throw std::domain_error("exchange_from_voltage: Von must be positive");
  const double d = vm - vm1;
  return c * (vm0 - vm) / (d * d) * std::exp(-std::sqrt(std::abs(vm - vm0) / von));
}

PhysicalUnits units_bridge(double t_physical_us, double j_natural, double kappa) {
  if (!(t_physical_us > 0.0)) throw std::invalid_argument("physical duration must be positive");
  PhysicalUnits u;
  u.j_mhz = j_natural / t_physical_us;
  u.two_j_mhz = 2.0 * u.j_mhz;
  if (kappa > 0.0) {
    u.omega_mhz = 2.0 * std::numbers::pi * kappa / t_physical_us;
    u.three_omega_mhz = 3.0 * u.omega_mhz;
  }
  return u;
}

double dimensionless_rate(double gamma_khz, double t_physical_us) { return gamma_khz * t_physical_us * 1e-3; }

// ---- run -------------------------------------------------------------------

Table run_scenario(const RunConfig& config) {
  Table t;
  switch (config.scenario) {
    case Scenario::fig1a_landscape: t = fig1a(config); break;
    case Scenario::fig1b_controls: t = fig1b(config); break;
    case Scenario::fig1c_fidelity: t = fig1c(config); break;
    case Scenario::fig1d_infidelity_vs_J: t = fig1d(config); break;
    case Scenario::fig2_delta_g_sweep: t = fig2(config); break;
    case Scenario::fig3a_deltaJ_unmodulated: t = fig3a(config); break;
    case Scenario::fig3b_kappa_eta_scan: t = fig3b(config); break;
    case Scenario::fig3c_modulated_fidelity: t = fig3c(config); break;
    case Scenario::fig3d_error_sweeps: t = fig3d(config); break;
    case Scenario::fig4_dephasing: t = fig4(config); break;
    case Scenario::init_demo: t = init_demo(config); break;
  }
  // resolved parameters first so the block alone reproduces the run
  std::vector<std::pair<std::string, std::string>> head{{"scenario", scenario_name(config.scenario)}};
  for (const auto& [k, v] : config.params) head.emplace_back(k, format_number(v));
  head.emplace_back("steps_override", format_number(static_cast<double>(config.steps)));
  t.metadata.insert(t.metadata.begin(), head.begin(), head.end());
  return t;
}

int run(const RunConfig& config, std::string* log) {
  auto note = [&](const std::string& m) {
    if (log) *log += m + "\n";
  };
  try {
    const Table t = run_scenario(config);
    const std::string path = config.out.empty() ? scenario_name(config.scenario) + ".csv" : config.out;
    emit_table(t, path);
    note("wrote " + path + " (" + std::to_string(t.rows.size()) + " rows)");
    return kExitOk;
  } catch (const ConfigError& e) {
    note(std::string("configuration error: ") + e.what());
    return kExitConfig;
  } catch (const NumericalQualityError& e) {
    note(std::string("numerical quality failure: ") + e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    note(std::string("error: ") + e.what());
    return kExitFailure;
  }
}

}  // namespace spinsinglet
