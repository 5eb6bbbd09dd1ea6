#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinsinglet/modulation.hpp"

using namespace spinsinglet;

namespace {

constexpr double kPi = std::numbers::pi;

// reference values from the ascending series evaluated in long double with every term kept
double series_oracle(int m, double x) {
  long double sum = 0.0L, term = 1.0L;
  for (int k = 1; k <= m; ++k) term *= static_cast<long double>(x) / 2.0L / k;
  for (int k = 0; k < 80; ++k) {
    sum += term;
    term *= -static_cast<long double>(x) * x / 4.0L / ((k + 1.0L) * (k + 1.0L + m));
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("Bessel values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(1, 2.3) == doctest::Approx(series_oracle(1, 2.3)).epsilon(1e-14));
  CHECK(bessel_j(3, 4.6) == doctest::Approx(series_oracle(3, 4.6)).epsilon(1e-13));
  CHECK(bessel_j(-3, 1.7) == doctest::Approx(-bessel_j(3, 1.7)).epsilon(1e-15));
  CHECK(bessel_j(2, -1.1) == doctest::Approx(bessel_j(2, 1.1)).epsilon(1e-15));
  // first zero of J1
  CHECK(std::abs(bessel_j(1, 3.8317059702075125)) < 1e-13);
}

TEST_CASE("Jacobi-Anger reconstruction") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eta = 2.3, omega = 2 * kPi * 16;
  for (int i = 0; i < 20; ++i) {
    const double t = u(rng);
    Complex sum = 0.0;
    for (int m = -30; m <= 30; ++m) sum += bessel_j(m, eta) * std::exp(-kI * (m * omega * t));
    CHECK(std::abs(sum - std::exp(-kI * (eta * std::sin(omega * t)))) < 1e-10);
  }
}

TEST_CASE("upsilon") {
  CHECK(upsilon(0.0) == 0.0);
  const double eta = 2.3;
  const double expect = std::sqrt(2.0) * (bessel_j(1, 2 * eta) * bessel_j(3, eta) - bessel_j(3, 2 * eta) * bessel_j(1, eta));
  CHECK(std::abs(upsilon(eta) - expect) < 1e-12);
  // the only local maximum of |upsilon| on [0.5, 4] at 0.01 resolution; scipy.special.jv puts it at 2.24
  std::vector<double> peaks;
  for (int i = 1; i < 350; ++i) {
    const double a = std::abs(upsilon(0.5 + 0.01 * (i - 1))), b = std::abs(upsilon(0.5 + 0.01 * i)),
                 c = std::abs(upsilon(0.5 + 0.01 * (i + 1)));
    if (b > a && b >= c) peaks.push_back(0.5 + 0.01 * i);
  }
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0] == doctest::Approx(2.24).epsilon(1e-9));
  CHECK(std::abs(upsilon(2.24)) == doctest::Approx(0.38533131042677354).epsilon(1e-12));
}

TEST_CASE("control inversion round trip") {
  CHECK(invert_controls(ControlPair{0.0, 0.0}, 2.3).g1 == 0.0);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const ControlPair gt{u(rng), u(rng)};
    const ControlPair back = effective_from_bar(invert_controls(gt, 2.3), 2.3);
    CHECK(std::abs(back.g1 - gt.g1) < 1e-10);
    CHECK(std::abs(back.g2 - gt.g2) < 1e-10);
  }
  CHECK_THROWS_AS(invert_controls(ControlPair{1.0, 1.0}, 0.0), SingularInversionError);
}

TEST_CASE("modulated drive samples") {
  const double omega = 3.0;
  CHECK(modulated_g(0.0, 1.0, 2.0, omega) == 0.0);
  CHECK(modulated_g(kPi / 2 / omega, 1.0, 2.0, omega) == doctest::Approx((1.0 - 2.0) / std::sqrt(3.0)));
}

TEST_CASE("single-period average of the modulated coupling") {
  // <psi2|H|psi1> rotates as exp(2i eta sin wt); its DC part is the gt1 weight over sqrt3
  const double eta = 2.3, omega = 2 * kPi;
  const double gb1 = 1.3, gb2 = -0.4;
  const int n = 20000;
  Complex avg = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) / n;
    avg += modulated_g(t, gb1, gb2, omega) * std::exp(kI * (2 * eta * std::sin(omega * t)));
  }
  avg /= static_cast<double>(n);
  const ControlPair gt = effective_from_bar({gb1, gb2}, eta);
  CHECK(std::abs(std::abs(avg) - std::abs(gt.g1) / std::sqrt(3.0)) < 1e-3);
  CHECK(std::abs(avg.real()) < 1e-3);
}

TEST_CASE("modulated program requires whole periods") {
  const ControlSet c = ControlSet::from_path(PathParams::optimized());
  CHECK_THROWS_AS(modulated_program(c, ModulationParams{2.3, 15.5, 1.0}), std::invalid_argument);
  const PulseProgram p = modulated_program(c, ModulationParams{});
  CHECK(p.coupling.amplitude() == doctest::Approx(231.2212).epsilon(1e-6));
  CHECK(p.coupling.phase_integral(1.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("modulated run follows the effective model and closes its frame") {
  const ControlSet c = ControlSet::from_path(PathParams::optimized());
  const PulseProgram p = modulated_program(c, ModulationParams{});
  const SimResult rot = simulate_rotating(p);
  CHECK(rot.final_fidelity >= 0.9998);
  const SimResult full = simulate_full(p);
  CHECK(std::abs(full.final_fidelity - rot.final_fidelity) < 1e-3);
}

TEST_CASE("kappa-eta scan flags singular cells") {
  const auto scan = scan_kappa_eta({4.0, 8.0}, {0.01, 2.3}, PathParams::optimized(), 2, 256);
  REQUIRE(scan.fidelity.size() == 4);
  CHECK_FALSE(scan.valid[0]);
  CHECK(scan.status[0] == "singular");
  CHECK(std::isnan(scan.fidelity[0]));
  CHECK(scan.valid[1]);
  CHECK(scan.fidelity[3] > scan.fidelity[1]);
}
