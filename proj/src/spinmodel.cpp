#include "spinsinglet/spinmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinsinglet {

namespace {

constexpr int kSpins = 6;
constexpr std::size_t kFullDim = 64;

void require_pair(int j) {
  if (j < 1 || j > 3) throw std::invalid_argument("pair index must be 1, 2 or 3, got " + std::to_string(j));
}

void require_pair_couple(std::pair<int, int> p) {
  require_pair(p.first);
  require_pair(p.second);
  if (p.first >= p.second) throw std::invalid_argument("pair couple must be (1,2), (1,3) or (2,3)");
}

ComplexMatrix pauli_by_axis(int axis) {
  switch (axis) {
    case 0: return pauli::x();
    case 1: return pauli::y();
    default: return pauli::z();
  }
}

double strength_by_axis(const ExchangeStrengths& s, int axis) {
  return axis == 0 ? s.jx : (axis == 1 ? s.jy : s.jz);
}

// sigma_axis on one spin of a chain of `spins` spins; site 0 is the slowest index.
ComplexMatrix spin_operator(int site, int axis, int spins) {
  ComplexMatrix out = site == 0 ? pauli_by_axis(axis) : pauli::identity();
  for (int s = 1; s < spins; ++s) out = kron(out, s == site ? pauli_by_axis(axis) : pauli::identity());
  return out;
}

ComplexMatrix exchange_on_spins(const std::vector<std::pair<int, int>>& couples, const ExchangeStrengths& g,
                                int spins) {
  ComplexMatrix h(std::size_t{1} << spins);
  for (int axis = 0; axis < 3; ++axis) {
    const double w = strength_by_axis(g, axis);
    if (w == 0.0) continue;
    for (const auto& [a, b] : couples) h += (w / 4.0) * (spin_operator(a, axis, spins) * spin_operator(b, axis, spins));
  }
  return h;
}

ComplexMatrix bell_conjugate(const ComplexMatrix& h, int pairs) {
  ComplexMatrix w = bell_basis_pair().transform;
  for (int p = 1; p < pairs; ++p) w = kron(w, bell_basis_pair().transform);
  return w * h * adjoint(w);
}

// Spins of pair j (1-based) in the six-spin chain.
std::pair<int, int> spins_of(int j) { return {2 * (j - 1), 2 * (j - 1) + 1}; }

}  // namespace

// ---- bases -----------------------------------------------------------------

const BellBasisPair& bell_basis_pair() {
  static const BellBasisPair basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    return BellBasisPair{ComplexMatrix{{r, 0.0, 0.0, r},
                                       {0.0, r, r, 0.0},
                                       {r, 0.0, 0.0, -r},
                                       {0.0, r, -r, 0.0}}};
  }();
  return basis;
}

ComplexVector logical_product_state(int a, int b, int c) {
  for (int k : {a, b, c}) {
    if (k < 0 || k > 3) throw std::invalid_argument("logical label must be in 0..3");
  }
  const ComplexMatrix wd = adjoint(bell_basis_pair().transform);
  auto pair_state = [&](int k) { return wd * ComplexVector::basis(4, static_cast<std::size_t>(k)); };
  return kron(kron(pair_state(a), pair_state(b)), pair_state(c));
}

const SubspaceBasis& subspace_basis() {
  static const SubspaceBasis basis = [] {
    SubspaceBasis b;
    b.labels = {LogicalLabel{0, 1, 2}, LogicalLabel{1, 0, 2}, LogicalLabel{1, 2, 0},
                LogicalLabel{2, 1, 0}, LogicalLabel{2, 0, 1}, LogicalLabel{0, 2, 1}};
    for (const auto& l : b.labels) b.embedding.push_back(logical_product_state(l[0], l[1], l[2]));
    return b;
  }();
  return basis;
}

const PhiBasis& phi_basis() {
  static const PhiBasis basis = [] {
    const double s3 = 1.0 / std::sqrt(3.0);
    const double s2 = 1.0 / std::sqrt(2.0);
    PhiBasis p;
    p.vectors[0] = ComplexVector{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    p.vectors[1] = ComplexVector{0.0, s3, 0.0, s3, 0.0, s3};
    p.vectors[2] = ComplexVector{0.0, 0.0, s2, 0.0, s2, 0.0};
    return p;
  }();
  return basis;
}

// ---- coupling schedule -----------------------------------------------------

CouplingSchedule CouplingSchedule::constant(double j) {
  CouplingSchedule s;
  s.amplitude_ = j;
  return s;
}

CouplingSchedule CouplingSchedule::modulated(double j0, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("modulation frequency must be positive");
  CouplingSchedule s;
  s.modulated_ = true;
  s.amplitude_ = j0;
  s.omega_ = omega;
  return s;
}

double CouplingSchedule::value(double t) const {
  return modulated_ ? amplitude_ * std::cos(omega_ * t) : amplitude_;
}

double CouplingSchedule::phase_integral(double t) const {
  return modulated_ ? amplitude_ * std::sin(omega_ * t) / omega_ : amplitude_ * t;
}

CouplingSchedule CouplingSchedule::with_amplitude(double amplitude) const {
  CouplingSchedule s = *this;
  s.amplitude_ = amplitude;
  return s;
}

// ---- builders --------------------------------------------------------------

std::array<ExchangeStrengths, 3> singlet_exchange_pattern(double j) {
  const double s = 2.0 * j;
  return {ExchangeStrengths{s, 0.0, s}, ExchangeStrengths{s, s, 0.0}, ExchangeStrengths{0.0, s, s}};
}

ComplexVector singlet_state(ModelTier tier) {
  const double c = 1.0 / std::sqrt(6.0);
  switch (tier) {
    case ModelTier::subspace6:
      return ComplexVector{c, -c, c, -c, c, -c};
    case ModelTier::effective3:
      return ComplexVector{c, -std::sqrt(3.0) * c, std::sqrt(2.0) * c};
    case ModelTier::physical64: {
      ComplexVector v(kFullDim);
      const auto& sub = subspace_basis();
      for (std::size_t n = 0; n < 6; ++n) v += sub.embedding[n] * Complex(n % 2 == 0 ? c : -c);
      return v;
    }
  }
  throw std::invalid_argument("unknown model tier");
}

ComplexMatrix single_qubit_H(int pair, const ExchangeStrengths& s, Basis basis) {
  require_pair(pair);
  const ComplexMatrix h = exchange_on_spins({{0, 1}}, s, 2);
  return basis == Basis::bell ? bell_conjugate(h, 1) : h;
}

ComplexMatrix pair_exchange_H(std::pair<int, int> pairs, const ExchangeStrengths& g, Basis basis) {
  require_pair_couple(pairs);
  const ComplexMatrix h = exchange_on_spins({{0, 2}, {0, 3}, {1, 2}, {1, 3}}, g, 4);
  return basis == Basis::bell ? bell_conjugate(h, 2) : h;
}

ComplexMatrix pair_exchange_H_embedded(std::pair<int, int> pairs, const ExchangeStrengths& g) {
  require_pair_couple(pairs);
  const auto [a1, a2] = spins_of(pairs.first);
  const auto [b1, b2] = spins_of(pairs.second);
  return exchange_on_spins({{a1, b1}, {a1, b2}, {a2, b1}, {a2, b2}}, g, kSpins);
}

ComplexMatrix single_qubit_H_embedded(int pair, const ExchangeStrengths& s) {
  require_pair(pair);
  const auto [a, b] = spins_of(pair);
  return exchange_on_spins({{a, b}}, s, kSpins);
}

ComplexMatrix subspace_H_mu(double g) {
  ComplexMatrix h(6);
  for (std::size_t a : {0u, 2u, 4u}) {
    for (std::size_t b : {1u, 3u, 5u}) {
      h(a, b) = g;
      h(b, a) = g;
    }
  }
  return h;
}

ComplexMatrix rotating_frame_H(double t, double g, const CouplingSchedule& nominal,
                               const CouplingSchedule& actual) {
  const double phase = nominal.phase_integral(t);
  ComplexMatrix h(6);
  for (std::size_t a : {0u, 2u, 4u}) {
    for (std::size_t b : {1u, 3u, 5u}) {
      const Complex v = g * std::exp(kI * (phase * (kFrameEnergies[a] - kFrameEnergies[b])));
      h(a, b) = v;
      h(b, a) = std::conj(v);
    }
  }
  const double residual = actual.value(t) - nominal.value(t);
  if (residual != 0.0) {
    for (std::size_t n = 0; n < 6; ++n) h(n, n) = residual * kFrameEnergies[n];
  }
  return h;
}

ComplexMatrix rotating_frame_H(double t, double g, const CouplingSchedule& nominal) {
  return rotating_frame_H(t, g, nominal, nominal);
}

ComplexMatrix so3_generator(int k) {
  ComplexMatrix m(3);
  switch (k) {
    case 1:
      m(0, 1) = kI;
      m(1, 0) = -kI;
      break;
    case 2:
      m(1, 2) = kI;
      m(2, 1) = -kI;
      break;
    case 3:
      m(0, 2) = kI;
      m(2, 0) = -kI;
      break;
    default:
      throw std::invalid_argument("so(3) generator index must be 1, 2 or 3");
  }
  return m;
}

ComplexMatrix effective_H(double g1, double g2) {
  ComplexMatrix h(3);
  h(0, 1) = kI * g1;
  h(1, 0) = -kI * g1;
  h(1, 2) = kI * g2;
  h(2, 1) = -kI * g2;
  return h;
}

const PhysicalModel& physical_model() {
  static const PhysicalModel model = [] {
    PhysicalModel m{ComplexMatrix(kFullDim), ComplexMatrix(kFullDim)};
    const auto pattern = singlet_exchange_pattern(1.0);
    for (int j = 1; j <= 3; ++j) m.single_per_unit_j += single_qubit_H_embedded(j, pattern[j - 1]);
    const ExchangeStrengths iso{1.0, 1.0, 1.0};
    for (auto p : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
      m.coupling_per_unit_g += pair_exchange_H_embedded(p, iso);
    }
    return m;
  }();
  return model;
}

ComplexMatrix full_physical_H(double t, const CouplingSchedule& coupling, double g) {
  const auto& m = physical_model();
  return ComplexMatrix(Eigen::MatrixXcd(coupling.value(t) * m.single_per_unit_j.eigen() +
                                        g * m.coupling_per_unit_g.eigen()));
}

ComplexMatrix physical_frame_transform(double phase) {
  // The single-pair Hamiltonian is diagonal in the Bell product basis.
  static const std::pair<ComplexMatrix, std::vector<double>> bell = [] {
    const ComplexMatrix& w = bell_basis_pair().transform;
    const ComplexMatrix w3 = kron(kron(w, w), w);
    const ComplexMatrix d = w3 * physical_model().single_per_unit_j * adjoint(w3);
    std::vector<double> e(kFullDim);
    for (std::size_t i = 0; i < kFullDim; ++i) e[i] = d(i, i).real();
    return std::pair{w3, e};
  }();
  const auto& [w3, energies] = bell;
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(kFullDim));
  for (std::size_t i = 0; i < kFullDim; ++i) phases(static_cast<Eigen::Index>(i)) = std::exp(-kI * (phase * energies[i]));
  return ComplexMatrix(Eigen::MatrixXcd(w3.eigen().adjoint() * phases.asDiagonal() * w3.eigen()));
}

double resonant_g(double t, double g1, double g2, double j) {
  return (2.0 * g1 * std::sin(2.0 * j * t) + std::sqrt(2.0) * g2 * std::sin(j * t)) / std::sqrt(3.0);
}

}  // namespace spinsinglet
