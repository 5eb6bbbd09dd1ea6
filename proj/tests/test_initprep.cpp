#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinsinglet/initprep.hpp"
#include "spinsinglet/modulation.hpp"

using namespace spinsinglet;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("init Hamiltonian in the Bell basis") {
  const ComplexMatrix h = init_hamiltonian(0.0, 0.0, 2.0, Basis::bell);
  CHECK((h - ComplexMatrix::diagonal({-0.5, 0.5, 0.5, -0.5})).max_abs() < 1e-15);
  CHECK(std::abs(init_hamiltonian(0.8, 0.0, 0.0, Basis::bell)(0, 1) - Complex(0.4)) < 1e-15);
  const ComplexMatrix& w = bell_basis_pair().transform;
  const ComplexMatrix phys = init_hamiltonian(0.3, -1.2, 0.7, Basis::physical);
  CHECK((w * phys * adjoint(w) - init_hamiltonian(0.3, -1.2, 0.7, Basis::bell)).max_abs() < 1e-12);
}

TEST_CASE("start state is |dd> and the path begins there") {
  const ComplexVector s = init_start_state();
  CHECK(std::abs(s[0] - Complex(M_SQRT1_2)) < 1e-15);
  CHECK(std::abs(s[2] + Complex(M_SQRT1_2)) < 1e-15);
  const ComplexVector p0 = phi0(0.0, init_path(InitTarget::ket2));
  CHECK(std::abs(p0[0]) < 1e-15);
  CHECK(p0[1].real() == doctest::Approx(M_SQRT1_2));
  CHECK(p0[2].real() == doctest::Approx(-M_SQRT1_2));
}

TEST_CASE("zero effective fields give zero physical fields") {
  InitSchedule s;
  s.effective = ControlSet::constant(0.0, 0.0);
  s.jy = 300.0;
  CHECK(s.bx(0.3) == 0.0);
  CHECK(s.bz(0.3) == 0.0);
  s.modulated = true;
  s.omega = 2 * kPi * 16;
  s.bessel_factor = 0.5;
  CHECK(s.bx(0.3) == 0.0);
}

TEST_CASE("each target is reached from |dd> at Jy = 300") {
  for (InitTarget t : {InitTarget::ket0, InitTarget::ket1, InitTarget::ket2}) {
    const InitSchedule s = init_controls(init_path(t), 300.0);
    const InitResult r = simulate_init(s, t);
    CHECK(r.target_population >= 1.0 - 1e-3);
    CHECK(r.max_ket3_population < 1e-10);
  }
}

TEST_CASE("weak Jy triggers the resonance warning") {
  const InitSchedule s = init_controls(init_path(InitTarget::ket1), 20.0);
  CHECK_FALSE(s.warnings.empty());
  CHECK(init_controls(init_path(InitTarget::ket1), 300.0).warnings.empty());
}

TEST_CASE("modulated init") {
  const double omega = 2 * kPi * 16;
  CHECK_THROWS_AS(init_modulated_controls(init_path(InitTarget::ket0), 3.8317059702075125 * omega, omega),
                  std::invalid_argument);
  const InitSchedule s = init_modulated_controls(init_path(InitTarget::ket2), 1.84 * omega, omega);
  CHECK(init_round_trip_overlap(s) >= 0.999);
  const InitResult r = simulate_init(s, InitTarget::ket2);
  CHECK(r.target_population >= 0.99);
  CHECK(r.max_ket3_population < 1e-10);
}
