#pragma once

// Fixed-step RK4 propagation of pure states and density matrices, the
// fidelity and leakage metrics, and systematic-error injection.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spinsinglet/invariantpath.hpp"
#include "spinsinglet/matrixkit.hpp"
#include "spinsinglet/spinmodel.hpp"

namespace spinsinglet {

/// Raised when norm or trace drift exceeds 1e-6; the step count is too small.
struct NumericalQualityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ErrorKind { none, delta_g, delta_J };

/// delta_g: g -> (1 + delta) g.
/// delta_J: constant coupling J -> J + delta (delta in 1/T);
///          modulated amplitude J0 -> (1 + delta) J0.
struct ErrorSpec {
  ErrorKind kind = ErrorKind::none;
  double delta = 0.0;

  static ErrorSpec none() { return {}; }
  static ErrorSpec drive(double d) { return {ErrorKind::delta_g, d}; }
  static ErrorSpec coupling(double d) { return {ErrorKind::delta_J, d}; }
};

struct TimeGrid {
  double duration = 1.0;
  std::size_t steps = 4096;
  /// Record a sample every this many steps; 0 picks about 256 samples.
  std::size_t record_every = 0;
};

struct SimResult {
  std::vector<double> times;
  std::vector<double> fidelities;
  double final_fidelity = 0.0;
  double leakage = 0.0;
  /// Largest |<psi|psi> - 1| (pure states) or |tr rho - 1| (density matrices) seen.
  double norm_drift = 0.0;
  /// Density runs only.
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  ComplexVector final_state;
  ComplexMatrix final_density;
};

using HamiltonianFn = std::function<ComplexMatrix(double)>;
using TargetFn = std::function<ComplexVector(double)>;

SimResult propagate_schrodinger(const HamiltonianFn& h, const ComplexVector& psi0, const TimeGrid& grid,
                                const TargetFn& target);
SimResult propagate_schrodinger(const HamiltonianFn& h, const ComplexVector& psi0, const TimeGrid& grid,
                                const ComplexVector& target);

/// Dephasing master equation with sigma_z noise of rate gamma on every spin.
/// The dimension must be 2^n (n spins, first spin slowest); the 64-dim tier is
/// the intended use. gamma is in 1/T.
SimResult propagate_lindblad(const HamiltonianFn& h, const ComplexMatrix& rho0, double gamma, const TimeGrid& grid,
                             const TargetFn& target);
SimResult propagate_lindblad(const HamiltonianFn& h, const ComplexMatrix& rho0, double gamma, const TimeGrid& grid,
                             const ComplexVector& target);

double fidelity(const ComplexVector& state, const ComplexVector& target);
double fidelity(const ComplexMatrix& rho, const ComplexVector& target);

/// 1 - sum_n |<psi_n|state>|^2 for a 64-dim state.
double leakage(const ComplexVector& state, const SubspaceBasis& subspace);
double leakage(const ComplexMatrix& rho, const SubspaceBasis& subspace);

/// A drive g(t) together with the coupling schedule it was synthesized for.
/// `coupling` is the nominal schedule (fixes the synthesis and the frame);
/// `actual` is what the hardware realizes.
struct PulseProgram {
  ControlSet drive;  // (g1, g2) for constant J, (gbar1, gbar2) for modulated J
  CouplingSchedule coupling;
  CouplingSchedule actual;
  double drive_scale = 1.0;

  static PulseProgram resonant(ControlSet controls, double j);
  static PulseProgram modulated(ControlSet gbar, double j0, double omega);

  double g(double t) const;
  double duration() const { return drive.duration(); }
};

PulseProgram apply_error(const PulseProgram& base, const ErrorSpec& err);
/// Only delta_g is meaningful without a coupling schedule.
ControlSet apply_error(const ControlSet& base, const ErrorSpec& err);

/// Step counts: 2^12 effective, 2^14 constant-J frame, 1024 per modulation period.
std::size_t default_steps_effective();
std::size_t default_steps(const PulseProgram& program);
/// 64-dim tiers: at least default_steps, and enough that h * ||H(t)|| <= 0.0125,
/// rounded up to a multiple of 1024.
std::size_t default_steps_lab(const PulseProgram& program);

/// Effective model from phi_1, target Psi_s. delta_J adds delta (3|phi1><phi1| + |phi2><phi2|).
SimResult simulate_effective(const ControlSet& controls, const ErrorSpec& err = {}, std::size_t steps = 0);

/// Six-dim rotating frame from psi_1.
SimResult simulate_rotating(const PulseProgram& program, std::size_t steps = 0);

/// 64-dim lab frame from |012>; fidelity taken in the nominal rotating frame.
SimResult simulate_full(const PulseProgram& program, std::size_t steps = 0);

/// As simulate_full, with dephasing rate gamma (1/T) on all six spins.
SimResult simulate_lindblad(const PulseProgram& program, double gamma, std::size_t steps = 0);

}  // namespace spinsinglet
