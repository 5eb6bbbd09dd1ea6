#include <doctest.h>

#include <cmath>
#include <random>

#include "spinsinglet/optctrl.hpp"

using namespace spinsinglet;

TEST_CASE("qs is nonnegative") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) CHECK(qs(PathParams::singlet(u(rng), u(rng))) >= 0.0);
}

TEST_CASE("tabulated qs agrees with nested adaptive quadrature") {
  for (auto [k1, k2] : {std::pair{0.0, 0.0}, {0.97, 0.71}, {1.4, 0.3}}) {
    const auto p = PathParams::singlet(k1, k2);
    const double ref = qs_reference(p);
    CHECK(std::abs(qs(p, 4000) - ref) < 1e-6 * std::max(1.0, ref));
  }
}

TEST_CASE("landscape has a local minimum near (0.97, 0.71)") {
  const QsGrid grid{0.85, 1.10, 0.60, 0.85, 0.01};
  const QsLandscape l = qs_landscape(grid, PathParams::singlet(0, 0), 2);
  const auto minima = local_minima(l);
  bool near = false;
  for (const auto& m : minima) near = near || (std::abs(m.kappa1 - 0.97) <= 0.05 && std::abs(m.kappa2 - 0.71) <= 0.05);
  CHECK(near);
  // every reported minimum beats its eight neighbors
  for (const auto& m : minima) {
    const std::size_t i = static_cast<std::size_t>(std::lround((m.kappa1 - grid.kappa1_min) / grid.step));
    const std::size_t j = static_cast<std::size_t>(std::lround((m.kappa2 - grid.kappa2_min) / grid.step));
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        const long a = static_cast<long>(i) + di, b = static_cast<long>(j) + dj;
        if (a < 0 || b < 0 || a >= static_cast<long>(l.kappa1_grid.size()) || b >= static_cast<long>(l.kappa2_grid.size())) continue;
        CHECK(m.qs <= l.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
      }
  }
}

TEST_CASE("landscape is smooth on the 0.01 grid") {
  const QsGrid grid{0.0, 2.0, 0.0, 2.0, 0.01};
  const QsLandscape l = qs_landscape(grid);
  // adjacent ratios are only meaningful away from the exact zeros of qs
  for (std::size_t i = 0; i + 1 < l.kappa1_grid.size(); ++i)
    for (std::size_t j = 0; j < l.kappa2_grid.size(); ++j) {
      const double a = l.at(i, j), b = l.at(i + 1, j);
      if (std::min(a, b) > 1e-2) CHECK(std::max(a, b) / std::min(a, b) < 10.0);
    }
}

TEST_CASE("single-point grid returns that point") {
  const auto best = optimize_kappas(QsGrid{0.5, 0.5, 1.25, 1.25, 0.01}, false);
  CHECK(best.kappa1 == doctest::Approx(0.5));
  CHECK(best.kappa2 == doctest::Approx(1.25));
  CHECK_FALSE(best.refined);
}

TEST_CASE("pattern search does not increase qs") {
  const QsEvaluator f(PathParams::singlet(0, 0));
  const double start = f(1.0, 0.5);
  const auto polished = pattern_search(f, 1.0, 0.5, 0.02);
  CHECK(polished.qs <= start);
}

TEST_CASE("exact sensitivity matches simulation") {
  const auto p = PathParams::optimized();
  const double exact = sensitivity_exact(p);
  const double sim = sensitivity_from_simulation(p);
  CHECK(exact == doctest::Approx(sim).epsilon(0.01));
}

TEST_CASE("perturbative fidelity") {
  const auto p = PathParams::optimized();
  CHECK(perturbative_fidelity(0.0, p) == 1.0);
  CHECK(perturbative_fidelity(0.2, p) == perturbative_fidelity(-0.2, p));
  const ControlSet c = ControlSet::from_path(p);
  const double direct = simulate_effective(c, ErrorSpec::drive(0.1)).final_fidelity;
  CHECK(std::abs(perturbative_fidelity(0.1, p) - direct) < 5e-3);
}

TEST_CASE("baselines") {
  const ControlSet flat = baseline_controls(BaselineKind::flat);
  CHECK(flat.at(0.3).g1 == doctest::Approx(1.2358));
  CHECK(flat.at(0.9).g2 == doctest::Approx(1.2057));
  CHECK_THROWS(baseline_path(BaselineKind::flat));
  const PathParams rev = baseline_path(BaselineKind::reverse_only);
  CHECK(beta(0.0, rev) == doctest::Approx(rev.beta0));
  CHECK(beta(1.0, rev) == doctest::Approx(std::asin(std::sqrt(3.0) / 3.0)));
  CHECK(beta(0.5, rev) == doctest::Approx(rev.beta0 + (rev.betaT - rev.beta0) * 0.25));
}

TEST_CASE("fidelity ordering of the baselines under a drive error") {
  auto f = [](BaselineKind k, double d) { return simulate_effective(baseline_controls(k), ErrorSpec::drive(d)).final_fidelity; };
  CHECK(f(BaselineKind::optimized, 0.4) > f(BaselineKind::reverse_only, 0.4));
  CHECK(f(BaselineKind::reverse_only, 0.4) > f(BaselineKind::flat, 0.4));
  CHECK(f(BaselineKind::optimized, 0.0) >= 1.0 - 1e-6);
  CHECK(f(BaselineKind::reverse_only, 0.0) >= 1.0 - 1e-6);
  MESSAGE("flat baseline F(0) = " << f(BaselineKind::flat, 0.0));
}
