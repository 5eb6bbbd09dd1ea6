#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinsinglet/dynamics.hpp"
#include "spinsinglet/modulation.hpp"
#include "spinsinglet/optctrl.hpp"

using namespace spinsinglet;

TEST_CASE("zero Hamiltonian leaves the state alone") {
  const ComplexVector psi{Complex(0.6), Complex(0.0, 0.8)};
  const auto r = propagate_schrodinger([](double) { return ComplexMatrix(2); }, psi, {1.0, 100, 10}, psi);
  CHECK((r.final_state - psi).norm() == 0.0);
  CHECK(r.final_fidelity == doctest::Approx(1.0));
}

TEST_CASE("Rabi oscillation") {
  const ComplexVector up = ComplexVector::basis(2, 0);
  const auto r = propagate_schrodinger([](double) { return pauli::x(); }, up, {2.0, 2000, 100}, up);
  REQUIRE(r.times.size() == r.fidelities.size());
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    CHECK(r.fidelities[i] == doctest::Approx(std::pow(std::cos(r.times[i]), 2)).epsilon(1e-9));
  }
  CHECK(r.norm_drift < 1e-8);
}

TEST_CASE("too few steps raise a numerical quality error") {
  const ComplexVector up = ComplexVector::basis(2, 0);
  CHECK_THROWS_AS(propagate_schrodinger([](double) { return pauli::x() * Complex(50.0); }, up, {1.0, 10, 1}, up),
                  NumericalQualityError);
}

TEST_CASE("single-spin dephasing") {
  const double gamma = 0.7;
  const ComplexVector plus{Complex(M_SQRT1_2), Complex(M_SQRT1_2)};
  const ComplexMatrix rho0 = ComplexMatrix::outer(plus, plus);
  const auto r = propagate_lindblad([](double) { return ComplexMatrix(2); }, rho0, gamma, {1.5, 1500, 0}, plus);
  CHECK(std::abs(r.final_density(0, 1)) == doctest::Approx(0.5 * std::exp(-2 * gamma * 1.5)).epsilon(1e-10));
  CHECK(r.norm_drift < 1e-12);
  CHECK_THROWS_AS(propagate_lindblad([](double) { return ComplexMatrix(3); }, ComplexMatrix::identity(3), 0.1,
                                     {1.0, 10, 0}, ComplexVector::basis(3, 0)),
                  DimensionError);
}

TEST_CASE("closed-system Lindblad matches the pure-state run") {
  const ComplexMatrix h0 = kron(pauli::x(), pauli::z()) + kron(pauli::identity(), pauli::y()) * Complex(0.3);
  auto h = [&](double t) { return h0 * Complex(1.0 + t); };
  const ComplexVector psi0 = ComplexVector::basis(4, 0);
  const TimeGrid grid{1.0, 2000, 200};
  const auto pure = propagate_schrodinger(h, psi0, grid, psi0);
  const auto mixed = propagate_lindblad(h, ComplexMatrix::outer(psi0, psi0), 0.0, grid, psi0);
  REQUIRE(pure.fidelities.size() == mixed.fidelities.size());
  for (std::size_t i = 0; i < pure.fidelities.size(); ++i) CHECK(std::abs(pure.fidelities[i] - mixed.fidelities[i]) < 1e-6);
  CHECK(mixed.hermiticity_defect < 1e-10);
}

TEST_CASE("fidelity and leakage metrics") {
  const ComplexVector s = singlet_state(ModelTier::subspace6);
  CHECK(fidelity(s, s) == doctest::Approx(1.0));
  CHECK(fidelity(ComplexVector::basis(6, 0), s) == doctest::Approx(1.0 / 6.0));
  CHECK(fidelity(ComplexMatrix::identity(6) * Complex(1.0 / 6.0), s) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(fidelity(s, ComplexVector::basis(4, 0)), DimensionError);
  const auto& sub = subspace_basis();
  CHECK(std::abs(leakage(sub.embedding[0], sub)) < 1e-14);
  CHECK(leakage(logical_product_state(3, 1, 2), sub) == doctest::Approx(1.0));
}

TEST_CASE("error injection") {
  const auto program = PulseProgram::resonant(ControlSet::from_path(PathParams::optimized()), 300.0);
  const auto same = apply_error(program, ErrorSpec::drive(0.0));
  CHECK(same.g(0.3) == program.g(0.3));
  const auto scaled = apply_error(program, ErrorSpec::drive(0.5));
  CHECK(scaled.g(0.3) == doctest::Approx(1.5 * program.g(0.3)));
  CHECK(program.drive_scale == 1.0);
  const auto shifted = apply_error(program, ErrorSpec::coupling(2.0));
  CHECK(shifted.actual.value(0.1) == doctest::Approx(302.0));
  CHECK(shifted.coupling.value(0.1) == doctest::Approx(300.0));
  const auto mod = PulseProgram::modulated(ControlSet::constant(1.0, 1.0), 100.0, 10.0);
  CHECK(apply_error(mod, ErrorSpec::coupling(0.1)).actual.amplitude() == doctest::Approx(110.0));
  CHECK_THROWS(apply_error(ControlSet::constant(1.0, 1.0), ErrorSpec::coupling(0.1)));
}

TEST_CASE("effective model reaches the singlet") {
  const auto r = simulate_effective(ControlSet::from_path(PathParams::optimized()));
  CHECK(r.final_fidelity >= 1.0 - 1e-6);
  CHECK(r.norm_drift < 1e-8);
}

TEST_CASE("unmodulated coupling offset") {
  const ControlSet c = ControlSet::from_path(PathParams::optimized());
  const auto program = PulseProgram::resonant(c, 300.0);
  const double f = simulate_rotating(apply_error(program, ErrorSpec::coupling(0.05 * c.max_abs()))).final_fidelity;
  CHECK(f == doctest::Approx(0.7019).epsilon(0.01 / 0.7019));
}

TEST_CASE("full model tracks the rotating frame at J = 300") {
  const auto program = PulseProgram::resonant(ControlSet::from_path(PathParams::optimized()), 300.0);
  const auto rot = simulate_rotating(program);
  const auto full = simulate_full(program);
  CHECK(full.leakage < 1e-3);
  CHECK(std::abs(full.final_fidelity - rot.final_fidelity) < 1e-3);
  CHECK(full.norm_drift < 1e-8);
}
