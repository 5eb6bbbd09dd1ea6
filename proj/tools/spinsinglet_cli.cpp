// Command-line front end: one subcommand per task, each with a default scenario.
//
//   spinsinglet simulate --set J=200 --out fid.csv
//   spinsinglet sweep --scenario fig3d_error_sweeps --workers 4

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinsinglet/harness.hpp"

namespace {

struct Command {
  const char* name;
  const char* help;
  spinsinglet::Scenario fallback;
};

const std::vector<Command> kCommands = {
    {"design", "tabulate the designed controls", spinsinglet::Scenario::fig1b_controls},
    {"simulate", "fidelity versus time in all three model tiers", spinsinglet::Scenario::fig1c_fidelity},
    {"sweep", "fidelity under systematic drive errors", spinsinglet::Scenario::fig2_delta_g_sweep},
    {"optimize", "sensitivity landscape and its minima", spinsinglet::Scenario::fig1a_landscape},
    {"scan", "modulation frequency and amplitude scan", spinsinglet::Scenario::fig3b_kappa_eta_scan},
    {"lindblad", "fidelity under dephasing", spinsinglet::Scenario::fig4_dephasing},
    {"init", "logical-state preparation demo", spinsinglet::Scenario::init_demo},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace spinsinglet;

  CLI::App app{"Robust singlet-state generation for three logical qubits"};
  app.require_subcommand(0, 1);

  std::string scenario, out, config_file;
  std::vector<std::string> sets;
  unsigned workers = 0;
  std::size_t steps = 0;
  bool list = false;
  app.add_flag("--list", list, "list scenarios and their parameters");

  std::vector<std::pair<CLI::App*, Scenario>> subs;
  for (const auto& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--scenario", scenario, "scenario to run instead of the default");
    sub->add_option("--out", out, "output table (default <scenario>.csv)");
    sub->add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--steps", steps, "integrator steps, overriding module defaults")->check(CLI::PositiveNumber);
    sub->add_option("--set", sets, "override a parameter, key=value (repeatable)");
    sub->add_option("--config", config_file, "key = value file applied before --set");
    subs.emplace_back(sub, c.fallback);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list || app.get_subcommands().empty()) {
    for (Scenario s : all_scenarios()) {
      std::cout << scenario_name(s) << '\n';
      for (const auto& [k, v] : scenario_defaults(s)) std::cout << "  " << k << " = " << format_number(v) << '\n';
    }
    return kExitOk;
  }

  Scenario fallback = Scenario::fig1c_fidelity;
  for (const auto& [sub, s] : subs) {
    if (sub->parsed()) fallback = s;
  }

  RunConfig config;
  try {
    ConfigEntries file = config_file.empty() ? ConfigEntries{} : parse_config_file(config_file);
    ConfigEntries overrides;
    if (!scenario.empty()) overrides.emplace_back("scenario", scenario);
    for (const auto& s : sets) overrides.push_back(parse_assignment(s));
    if (!out.empty()) overrides.emplace_back("out", out);
    if (workers) overrides.emplace_back("workers", std::to_string(workers));
    if (steps) overrides.emplace_back("steps", std::to_string(steps));
    config = resolve_config(fallback, file, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::string log;
  const int code = run(config, &log);
  (code == kExitOk ? std::cout : std::cerr) << log;
  return code;
}
