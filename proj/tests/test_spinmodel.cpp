#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinsinglet/spinmodel.hpp"

using namespace spinsinglet;

namespace {

const double kS6 = 1.0 / std::sqrt(6.0);

ComplexMatrix bell_conjugate(const ComplexMatrix& physical) {
  const ComplexMatrix& w = bell_basis_pair().transform;
  return w * physical * adjoint(w);
}

ComplexVector product_bell(int a, int b) {
  return kron(ComplexVector::basis(4, static_cast<std::size_t>(a)), ComplexVector::basis(4, static_cast<std::size_t>(b)));
}

}  // namespace

TEST_CASE("Bell transform is unitary") {
  const ComplexMatrix& w = bell_basis_pair().transform;
  CHECK((w * adjoint(w) - ComplexMatrix::identity(4)).max_abs() < 1e-15);
}

TEST_CASE("singlet state coefficients") {
  const ComplexVector s = singlet_state(ModelTier::subspace6);
  CHECK(s[0].real() == doctest::Approx(kS6));
  CHECK(s[1].real() == doctest::Approx(-kS6));
  CHECK(s.norm() == doctest::Approx(1.0));
  const ComplexVector p = singlet_state(ModelTier::physical64);
  CHECK(p.dim() == 64);
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const auto& sub = subspace_basis();
  for (std::size_t n = 0; n < 6; ++n) CHECK(std::abs(sub.embedding[n].dot(p) - s[n]) < 1e-14);
}

TEST_CASE("singlet state in the phi basis") {
  const ComplexVector s = singlet_state(ModelTier::subspace6);
  const auto& phi = phi_basis().vectors;
  const ComplexVector target = (phi[0] - phi[1] * Complex(std::sqrt(3.0)) + phi[2] * Complex(std::sqrt(2.0))) * Complex(kS6);
  CHECK(std::abs(target.dot(s)) == doctest::Approx(1.0).epsilon(1e-14));
  const ComplexVector e = singlet_state(ModelTier::effective3);
  CHECK(std::abs(e[1] + std::sqrt(3.0) * kS6) < 1e-14);
}

TEST_CASE("single-pair Hamiltonian in the Bell basis") {
  const double j = 0.7;
  const ComplexMatrix h = single_qubit_H(1, {j, 0.0, j}, Basis::bell);
  const ComplexMatrix expect = ComplexMatrix::diagonal({j / 2, 0.0, 0.0, -j / 2});
  CHECK((h - expect).max_abs() < 1e-14);
  CHECK(single_qubit_H(2, {}, Basis::bell).max_abs() == 0.0);
  const ExchangeStrengths s{0.3, -1.1, 0.45};
  CHECK((single_qubit_H(3, s, Basis::bell) - bell_conjugate(single_qubit_H(3, s, Basis::physical))).max_abs() < 1e-12);
}

TEST_CASE("singlet exchange pattern gives the frame energies") {
  const auto pattern = singlet_exchange_pattern(1.0);
  const auto& sub = subspace_basis();
  ComplexMatrix h(64);
  for (int p = 1; p <= 3; ++p) h += single_qubit_H_embedded(p, pattern[static_cast<std::size_t>(p - 1)]);
  // energies relative to psi_3, the zero of the frame
  const double ref = sub.embedding[2].dot(h * sub.embedding[2]).real();
  for (std::size_t n = 0; n < 6; ++n) {
    const ComplexVector hv = h * sub.embedding[n];
    const double e = sub.embedding[n].dot(hv).real();
    CHECK(e - ref == doctest::Approx(kFrameEnergies[n]).epsilon(1e-12));
    CHECK((hv - sub.embedding[n] * Complex(e)).norm() < 1e-12);
  }
}

TEST_CASE("pair exchange matrix elements") {
  const double g = 0.37;
  const ComplexMatrix h = pair_exchange_H({1, 2}, {g, g, g}, Basis::bell);
  CHECK(std::abs(h.element(product_bell(1, 0), product_bell(0, 1)) - Complex(g)) < 1e-14);
  const ComplexMatrix hx = pair_exchange_H({1, 2}, {0.2, 0.0, 0.0}, Basis::bell);
  CHECK(std::abs(hx.element(product_bell(1, 1), product_bell(0, 0)) - Complex(0.2)) < 1e-14);
  CHECK(pair_exchange_H({2, 3}, {}, Basis::bell).max_abs() == 0.0);
  const ComplexMatrix ph = pair_exchange_H({1, 3}, {0.1, 0.2, 0.3}, Basis::physical);
  const ComplexMatrix w2 = kron(bell_basis_pair().transform, bell_basis_pair().transform);
  CHECK((w2 * ph * adjoint(w2) - pair_exchange_H({1, 3}, {0.1, 0.2, 0.3}, Basis::bell)).max_abs() < 1e-12);
}

TEST_CASE("singlet is an eigenstate of the subspace Hamiltonian") {
  const ComplexMatrix h = subspace_H_mu(1.3);
  CHECK(std::abs(h(0, 1) - Complex(1.3)) < 1e-15);
  CHECK(std::abs(h(2, 3) - Complex(1.3)) < 1e-15);
  // the alternating signs give eigenvalue -3g, not 0
  const ComplexVector s = singlet_state(ModelTier::subspace6);
  CHECK((h * s - s * Complex(-3.0 * 1.3)).norm() < 1e-14);
  CHECK(subspace_H_mu(0.0).max_abs() == 0.0);
}

TEST_CASE("isotropic inter-pair exchange restricted to the subspace is H_mu") {
  const auto& sub = subspace_basis();
  const ComplexMatrix c = physical_model().coupling_per_unit_g;
  const ComplexMatrix mu = subspace_H_mu(1.0);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) CHECK(std::abs(c.element(sub.embedding[a], sub.embedding[b]) - mu(a, b)) < 1e-12);
}

TEST_CASE("rotating frame Hamiltonian phases") {
  const auto j = CouplingSchedule::constant(5.0);
  CHECK((rotating_frame_H(0.0, 0.8, j) - subspace_H_mu(0.8)).max_abs() < 1e-15);
  const double t = 0.123;
  const ComplexMatrix h = rotating_frame_H(t, 1.0, j);
  CHECK(std::abs(std::conj(h(1, 0)) - std::exp(kI * (2.0 * 5.0 * t))) < 1e-12);
  CHECK(h.is_hermitian());
  const auto m = CouplingSchedule::modulated(7.0, 2.0 * std::numbers::pi);
  CHECK((rotating_frame_H(0.5, 0.8, m) - subspace_H_mu(0.8)).max_abs() < 1e-12);
}

TEST_CASE("effective Hamiltonian") {
  const ComplexMatrix h = effective_H(1.0, 0.0);
  CHECK(std::abs(h(0, 1) - kI) < 1e-15);
  CHECK(std::abs(h(1, 0) + kI) < 1e-15);
  CHECK(effective_H(0.0, 0.0).max_abs() == 0.0);
  const ComplexMatrix sum = so3_generator(1) * Complex(0.4) + so3_generator(2) * Complex(-1.7);
  CHECK((effective_H(0.4, -1.7) - sum).max_abs() < 1e-15);
  CHECK(std::abs(effective_H(0.0, 1.0)(1, 2) - kI) < 1e-15);
}

TEST_CASE("so(3) commutation relations") {
  const auto g1 = so3_generator(1), g2 = so3_generator(2), g3 = so3_generator(3);
  CHECK((commutator(g1, g2) - g3 * kI).max_abs() < 1e-15);
  CHECK((commutator(g2, g3) - g1 * kI).max_abs() < 1e-15);
  CHECK((commutator(g3, g1) - g2 * kI).max_abs() < 1e-15);
}

TEST_CASE("full physical Hamiltonian structure") {
  const auto j = CouplingSchedule::constant(300.0);
  const ComplexMatrix h0 = full_physical_H(0.3, j, 0.0);
  CHECK(std::abs(h0.trace()) < 1e-10);
  CHECK(h0.is_hermitian());
  // with g = 0 each pair's Bell projectors are conserved
  const ComplexMatrix& w = bell_basis_pair().transform;
  for (int pair = 0; pair < 3; ++pair) {
    for (std::size_t k = 0; k < 4; ++k) {
      const ComplexVector bell = adjoint(w) * ComplexVector::basis(4, k);
      ComplexMatrix proj = ComplexMatrix::outer(bell, bell);
      for (int other = pair - 1; other >= 0; --other) proj = kron(ComplexMatrix::identity(4), proj);
      for (int other = pair + 1; other < 3; ++other) proj = kron(proj, ComplexMatrix::identity(4));
      CHECK(commutator(h0, proj).max_abs() < 1e-12);
    }
  }
  CHECK(std::abs(full_physical_H(0.3, j, 2.0).trace()) < 1e-10);
}

TEST_CASE("resonant drive") {
  CHECK(resonant_g(0.0, 1.0, 1.0, 300.0) == 0.0);
  const double t = 0.01, j = 10.0;
  const double expect = (2.0 * std::sin(2 * j * t) + std::sqrt(2.0) * 0.5 * std::sin(j * t)) / std::sqrt(3.0);
  CHECK(resonant_g(t, 1.0, 0.5, j) == doctest::Approx(expect));
}

TEST_CASE("coupling schedule phase integral") {
  const auto m = CouplingSchedule::modulated(3.0, 4.0);
  CHECK(m.phase_integral(0.7) == doctest::Approx(3.0 * std::sin(2.8) / 4.0));
  CHECK(CouplingSchedule::constant(2.0).phase_integral(0.5) == doctest::Approx(1.0));
  CHECK(m.with_amplitude(6.0).value(0.0) == doctest::Approx(6.0));
}
