#include "spinsinglet/initprep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinsinglet/modulation.hpp"

namespace spinsinglet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinBesselFactor = 0.05;

// Jy-term energies per unit Jy on |0>,|1>,|2>,|3>
constexpr std::array<double, 4> kJyEnergies{-0.25, 0.25, 0.25, -0.25};

}  // namespace

PathParams init_path(InitTarget target, double kappa1, double kappa2) {
  PathParams p;
  p.theta0 = -3.0 * kPi / 4.0;
  p.beta0 = 0.0;
  p.kappa1 = kappa1;
  p.kappa2 = kappa2;
  switch (target) {
    case InitTarget::ket0:
      p.thetaT = -kPi / 2.0;
      p.betaT = 0.0;  // any value works here
      break;
    case InitTarget::ket1:
      p.thetaT = 0.0;
      p.betaT = kPi / 2.0;
      break;
    case InitTarget::ket2:
      p.thetaT = 0.0;
      p.betaT = 0.0;
      break;
  }
  return p;
}

std::size_t init_target_index(InitTarget target) {
  switch (target) {
    case InitTarget::ket0: return 0;
    case InitTarget::ket1: return 1;
    case InitTarget::ket2: return 2;
  }
  return 0;
}

ComplexMatrix init_hamiltonian(double bx, double bz, double jy, Basis basis) {
  if (basis == Basis::bell) {
    ComplexMatrix h(4);
    h(0, 1) = h(1, 0) = bx / 2.0;
    h(0, 2) = h(2, 0) = bz / 2.0;
    for (std::size_t k = 0; k < 4; ++k) h(k, k) = jy * kJyEnergies[k];
    return h;
  }
  const ComplexMatrix id = pauli::identity();
  return (kron(pauli::x(), id) + kron(id, pauli::x())) * Complex(bx / 4.0) +
         (kron(pauli::z(), id) + kron(id, pauli::z())) * Complex(bz / 4.0) +
         kron(pauli::y(), pauli::y()) * Complex(jy / 4.0);
}

ComplexVector init_start_state() {
  // |dd> is the last physical basis state of the pair
  return bell_basis_pair().transform * ComplexVector::basis(4, 3);
}

double InitSchedule::jy_at(double t) const { return modulated ? 2.0 * jy * std::cos(omega * t) : jy; }

double InitSchedule::jy_integral(double t) const {
  return modulated ? 2.0 * jy * std::sin(omega * t) / omega : jy * t;
}

double InitSchedule::bx(double t) const {
  const double b = effective.at(t).g1;
  return modulated ? 2.0 * b * std::sin(omega * t) / bessel_factor : 4.0 * b * std::sin(jy * t / 2.0);
}

double InitSchedule::bz(double t) const {
  const double b = effective.at(t).g2;
  return modulated ? -2.0 * b * std::sin(omega * t) / bessel_factor : -4.0 * b * std::sin(jy * t / 2.0);
}

InitSchedule init_controls(const PathParams& path, double jy) {
  if (!(jy > 0.0)) throw std::invalid_argument("Jy must be positive");
  InitSchedule s;
  s.effective = ControlSet::from_path(path);
  s.jy = jy;
  const double peak = s.effective.max_abs();
  if (peak > jy / 10.0) {
    std::ostringstream msg;
    msg << "field amplitude " << peak << " exceeds Jy/10 = " << jy / 10.0 << "; the rotating-wave picture degrades";
    s.warnings.push_back(msg.str());
  }
  return s;
}

InitSchedule init_modulated_controls(const PathParams& path, double jy0, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  const double factor = bessel_j(1, jy0 / omega);
  if (!(std::abs(factor) > kMinBesselFactor)) {
    throw std::invalid_argument("J1(Jy0/omega) = " + std::to_string(factor) + " is too close to zero");
  }
  InitSchedule s;
  s.effective = ControlSet::from_path(path);
  s.modulated = true;
  s.jy = jy0;
  s.omega = omega;
  s.bessel_factor = factor;
  const double peak = s.effective.max_abs();
  if (peak > omega / 10.0) {
    std::ostringstream msg;
    msg << "field amplitude " << peak << " exceeds omega/10 = " << omega / 10.0;
    s.warnings.push_back(msg.str());
  }
  return s;
}

std::size_t default_init_steps(const InitSchedule& schedule) {
  if (!schedule.modulated) return std::size_t{1} << 14;
  const double periods = schedule.omega * schedule.duration() / (2.0 * kPi);
  return 1024 * static_cast<std::size_t>(std::ceil(periods - 1e-9));
}

InitResult simulate_init(const InitSchedule& schedule, InitTarget target, std::size_t steps) {
  auto h = [&](double t) {
    return init_hamiltonian(schedule.bx(t), schedule.bz(t), schedule.jy_at(t), Basis::bell);
  };
  const TimeGrid grid{schedule.duration(), steps ? steps : default_init_steps(schedule), 1};
  InitResult out;
  out.run = propagate_schrodinger(h, init_start_state(), grid, ComplexVector::basis(4, 3));
  out.final_state = out.run.final_state;
  out.target_population = std::norm(out.final_state[init_target_index(target)]);
  out.max_ket3_population = *std::max_element(out.run.fidelities.begin(), out.run.fidelities.end());
  return out;
}

double init_round_trip_overlap(const InitSchedule& schedule, std::size_t steps) {
  const std::size_t n = steps ? steps : default_init_steps(schedule);
  const InitResult full = simulate_init(schedule, InitTarget::ket0, n);

  const ComplexVector start = init_start_state();
  ComplexVector eff0(3);
  for (std::size_t k = 0; k < 3; ++k) eff0[k] = start[kInitBasisOrder[k]];
  auto h = [&](double t) {
    const auto b = schedule.effective.at(t);
    return effective_H(b.g1, b.g2);
  };
  const TimeGrid grid{schedule.duration(), n, 0};
  const ComplexVector eff = propagate_schrodinger(h, eff0, grid, eff0).final_state;

  // undo the Jy frame: psi_frame = exp(+i E int Jy) psi_lab
  const double phase = schedule.jy_integral(schedule.duration());
  Complex overlap = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t bell = kInitBasisOrder[k];
    const Complex framed = std::exp(kI * (kJyEnergies[bell] * phase)) * full.final_state[bell];
    overlap += std::conj(eff[k]) * framed;
  }
  return std::abs(overlap);
}

}  // namespace spinsinglet
