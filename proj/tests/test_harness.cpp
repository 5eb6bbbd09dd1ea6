#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinsinglet/harness.hpp"

using namespace spinsinglet;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("spinsinglet_test_" + name)).string();
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto e = parse_config_text("# comment\nJ = 200\n\n kappa1=0.5 # trailing\n");
  REQUIRE(e.size() == 2);
  CHECK(e[0].first == "J");
  CHECK(e[1].second == "0.5");
  CHECK_THROWS_AS(parse_config_text("J 200"), ConfigError);
  CHECK_THROWS_AS(parse_number("J", "20x"), ConfigError);
  CHECK_THROWS_AS(parse_number("J", "nan"), ConfigError);
  CHECK(parse_assignment("eta=2.5").second == "2.5");
}

TEST_CASE("configuration precedence and validation") {
  const ConfigEntries file{{"J", "200"}, {"kappa1", "0.5"}};
  const ConfigEntries sets{{"J", "250"}, {"workers", "3"}};
  const RunConfig c = resolve_config(Scenario::fig1c_fidelity, file, sets);
  CHECK(c.get("J") == 250.0);
  CHECK(c.get("kappa1") == 0.5);
  CHECK(c.get("kappa2") == 0.71);
  CHECK(c.workers == 3);
  CHECK_THROWS_AS(resolve_config(Scenario::fig1c_fidelity, {}, {{"bogus", "1"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config(Scenario::fig1c_fidelity, {}, {{"J", "abc"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config(Scenario::fig1c_fidelity, {}, {{"scenario", "fig9"}}), ConfigError);
  const RunConfig s = resolve_config(Scenario::fig1c_fidelity, {{"scenario", "fig2_delta_g_sweep"}}, {});
  CHECK(s.scenario == Scenario::fig2_delta_g_sweep);
}

TEST_CASE("defaults hold the reference parameter points") {
  CHECK(scenario_defaults(Scenario::fig1c_fidelity).at("J") == 300.0);
  CHECK(scenario_defaults(Scenario::fig1c_fidelity).at("kappa1") == 0.97);
  CHECK(scenario_defaults(Scenario::fig3c_modulated_fidelity).at("kappa") == 16.0);
  CHECK(scenario_defaults(Scenario::fig3c_modulated_fidelity).at("eta") == 2.3);
  CHECK(scenario_defaults(Scenario::fig4_dephasing).at("gamma_max_khz") == 1.0);
  for (Scenario s : all_scenarios()) CHECK(parse_scenario(scenario_name(s)) == s);
}

TEST_CASE("table rendering") {
  Table t{{"x", "F"}, {{0.1, 1.0 / 3.0}}, {}, {}};
  CHECK(render_table(t) == "x,F\n0.1,0.333333333333\n");
  t.metadata.emplace_back("scenario", "demo");
  t.status.push_back("ok");
  CHECK(render_table(t) == "# scenario = demo\nx,F,status\n0.1,0.333333333333,ok\n");
  CHECK_THROWS(render_table(Table{{"x"}, {}, {}, {}}));
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("emit_table writes and rejects unwritable paths") {
  const std::string p = temp_path("table.csv");
  const Table t{{"a"}, {{1.0}}, {}, {}};
  emit_table(t, p);
  CHECK(slurp(p) == "a\n1\n");
  std::remove(p.c_str());
  CHECK_THROWS_AS(emit_table(t, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("crossings and windows") {
  const std::vector<double> xs{-2, -1, 0, 1, 2};
  const std::vector<double> ys{0.5, 0.8, 1.0, 0.95, 0.92};
  const auto c = crossings(xs, ys, 0.9);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(-1 + 0.1 / 0.2));
  const Window w = fidelity_window(xs, ys, 0.9);
  CHECK(w.lower == doctest::Approx(-0.5));
  CHECK_FALSE(w.lower_open);
  CHECK(w.upper == 2.0);
  CHECK(w.upper_open);
  const Window none = fidelity_window(xs, std::vector<double>(5, 0.1), 0.9);
  CHECK(std::isnan(none.lower));
}

TEST_CASE("grid values") {
  const auto g = grid_values(-1.0, 1.0, 0.01);
  CHECK(g.size() == 201);
  CHECK(g[100] == 0.0);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(grid_values(100, 400, 50).size() == 7);
  CHECK_THROWS_AS(grid_values(0, 1, 0), ConfigError);
}

TEST_CASE("exchange from gate voltage") {
  CHECK(exchange_from_voltage(1.0, 5.0, 1.0, 0.2, 0.1) == 0.0);
  CHECK(exchange_from_voltage(0.7, 0.0, 1.0, 0.2, 0.1) == 0.0);
  CHECK_THROWS_AS(exchange_from_voltage(0.2, 5.0, 1.0, 0.2, 0.1), std::domain_error);
  // monotone on an interval away from the pole
  double prev = exchange_from_voltage(0.5, 5.0, 1.0, 0.2, 0.1);
  for (int i = 1; i <= 50; ++i) {
    const double v = exchange_from_voltage(0.5 + 0.01 * i, 5.0, 1.0, 0.2, 0.1);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("physical units") {
  CHECK(units_bridge(15.0, 300.0).j_mhz == doctest::Approx(20.0));
  CHECK(units_bridge(11.56, 231.22).j_mhz == doctest::Approx(20.0).epsilon(1e-3));
  const auto a = units_bridge(10.0, 300.0, 16.0), b = units_bridge(20.0, 300.0, 16.0);
  CHECK(b.j_mhz == doctest::Approx(a.j_mhz / 2));
  CHECK(b.three_omega_mhz == doctest::Approx(a.three_omega_mhz / 2));
  CHECK(a.two_j_mhz == doctest::Approx(2 * a.j_mhz));
  CHECK_THROWS(units_bridge(0.0, 300.0));
  CHECK(dimensionless_rate(1.0, 11.56) == doctest::Approx(0.01156));
}

TEST_CASE("fig1d table has one row per coupling") {
  RunConfig c = resolve_config(Scenario::fig1d_infidelity_vs_J, {}, {{"J_min", "200"}, {"J_max", "300"}, {"J_step", "100"}});
  const Table t = run_scenario(c);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == 200.0);
  CHECK(t.rows[1][1] < t.rows[0][1]);
}

TEST_CASE("sweeps are identical for any worker count") {
  const ConfigEntries sets{{"delta_min", "-0.3"}, {"delta_max", "0.3"}, {"delta_step", "0.1"}};
  RunConfig one = resolve_config(Scenario::fig2_delta_g_sweep, {}, sets);
  RunConfig three = one;
  three.workers = 3;
  CHECK(render_table(run_scenario(one)) == render_table(run_scenario(three)));
}

TEST_CASE("run writes a byte-identical file on re-run") {
  const std::string p = temp_path("fig1b.csv");
  RunConfig c = resolve_config(Scenario::fig1b_controls, {}, {{"samples", "11"}, {"out", p}});
  REQUIRE(run(c) == kExitOk);
  const std::string first = slurp(p);
  REQUIRE(run(c) == kExitOk);
  CHECK(slurp(p) == first);
  CHECK(first.find("# scenario = fig1b_controls") == 0);
  std::remove(p.c_str());
}

TEST_CASE("run maps failures to exit codes") {
  RunConfig bad = resolve_config(Scenario::fig2_delta_g_sweep, {}, {{"delta_step", "0"}});
  CHECK(run(bad) == kExitConfig);
  RunConfig coarse = resolve_config(Scenario::fig1d_infidelity_vs_J, {}, {{"J_min", "300"}, {"J_max", "300"}});
  coarse.steps = 200;
  coarse.out = temp_path("coarse.csv");
  std::string log;
  CHECK(run(coarse, &log) == kExitNumerical);
  CHECK(log.find("numerical") != std::string::npos);
}
