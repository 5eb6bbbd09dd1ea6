#include "spinsinglet/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Sparse>

#include "spinsinglet/modulation.hpp"

namespace spinsinglet {

namespace {

constexpr double kDriftLimit = 1e-6;
constexpr std::size_t kFullDim = 64;
// h * ||H|| per step in the 64-dim tiers; keeps RK4 norm loss near 1e-9 over a run
constexpr double kLabStepPhase = 0.0125;

std::size_t record_stride(const TimeGrid& grid) {
  if (grid.record_every > 0) return grid.record_every;
  return std::max<std::size_t>(1, grid.steps / 256);
}

void check_grid(const TimeGrid& grid) {
  if (grid.steps == 0) throw std::invalid_argument("time grid needs at least one step");
  if (!(grid.duration > 0.0)) throw std::invalid_argument("time grid duration must be positive");
}

const Eigen::MatrixXcd& checked_h(const ComplexMatrix& h, std::size_t dim) {
  if (h.dim() != dim) {
    throw DimensionError("Hamiltonian has dimension " + std::to_string(h.dim()) + ", state has " +
                         std::to_string(dim));
  }
  return h.eigen();
}

void check_hermitian(const ComplexMatrix& h, double t) {
  if (!h.is_hermitian(1e-10)) {
    throw NotHermitianError("Hamiltonian is not Hermitian at t = " + std::to_string(t));
  }
}

// sum_s z_s(a) z_s(b) - n over n spins, which is -2 per spin where a and b differ.
Eigen::MatrixXd dephasing_weights(std::size_t dim) {
  Eigen::MatrixXd w(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const int differing = std::popcount(a ^ b);
      w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = -2.0 * differing;
    }
  }
  return w;
}

}  // namespace

SimResult propagate_schrodinger(const HamiltonianFn& h, const ComplexVector& psi0, const TimeGrid& grid,
                                const TargetFn& target) {
  check_grid(grid);
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("initial state is not normalized");
  const std::size_t dim = psi0.dim();
  const double step = grid.duration / static_cast<double>(grid.steps);
  const std::size_t stride = record_stride(grid);

  SimResult out;
  Eigen::VectorXcd psi = psi0.eigen();
  auto record = [&](double t) {
    const ComplexVector state(psi);
    out.times.push_back(t);
    out.fidelities.push_back(fidelity(state, target(t)));
  };
  record(0.0);

  ComplexMatrix h_start = h(0.0);
  check_hermitian(h_start, 0.0);
  for (std::size_t n = 0; n < grid.steps; ++n) {
    const double t = step * static_cast<double>(n);
    const ComplexMatrix h_mid = h(t + 0.5 * step);
    ComplexMatrix h_end = h(t + step);
    const auto& a = checked_h(h_start, dim);
    const auto& m = checked_h(h_mid, dim);
    const auto& e = checked_h(h_end, dim);
    const Eigen::VectorXcd k1 = -kI * (a * psi);
    const Eigen::VectorXcd k2 = -kI * (m * (psi + 0.5 * step * k1));
    const Eigen::VectorXcd k3 = -kI * (m * (psi + 0.5 * step * k2));
    const Eigen::VectorXcd k4 = -kI * (e * (psi + step * k3));
    psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_start = std::move(h_end);

    const double drift = std::abs(psi.squaredNorm() - 1.0);
    out.norm_drift = std::max(out.norm_drift, drift);
    if (!(drift <= kDriftLimit)) {
      throw NumericalQualityError("norm drift " + std::to_string(drift) + " after " + std::to_string(n + 1) +
                                  " of " + std::to_string(grid.steps) + " steps; increase the step count");
    }
    if ((n + 1) % stride == 0 || n + 1 == grid.steps) {
      record(n + 1 == grid.steps ? grid.duration : t + step);
    }
  }
  check_hermitian(h_start, grid.duration);

  out.final_state = ComplexVector(psi);
  out.final_fidelity = out.fidelities.back();
  out.leakage = dim == kFullDim ? leakage(out.final_state, subspace_basis()) : 0.0;
  return out;
}

SimResult propagate_schrodinger(const HamiltonianFn& h, const ComplexVector& psi0, const TimeGrid& grid,
                                const ComplexVector& target) {
  return propagate_schrodinger(h, psi0, grid, [&target](double) { return target; });
}

SimResult propagate_lindblad(const HamiltonianFn& h, const ComplexMatrix& rho0, double gamma, const TimeGrid& grid,
                             const TargetFn& target) {
  check_grid(grid);
  const std::size_t dim = rho0.dim();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw DimensionError("density matrix dimension must be a power of two (one factor per spin)");
  }
  if (!rho0.is_hermitian(1e-10)) throw NotHermitianError("initial density matrix is not Hermitian");
  if (std::abs(rho0.trace() - 1.0) > 1e-10) throw std::invalid_argument("initial density matrix trace is not 1");
  if (gamma < 0.0) throw std::invalid_argument("dephasing rate must be nonnegative");

  const double step = grid.duration / static_cast<double>(grid.steps);
  const std::size_t stride = record_stride(grid);
  const Eigen::MatrixXd weights = gamma * dephasing_weights(dim);
  using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  auto sparse_of = [&](const ComplexMatrix& m) -> Sparse { return checked_h(m, dim).sparseView(); };
  auto rate = [&](const Sparse& hs, const Eigen::MatrixXcd& rho) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd m = -kI * (hs * rho);
    return m + m.adjoint() + weights.cwiseProduct(rho.real()).cast<Complex>() +
           kI * weights.cwiseProduct(rho.imag()).cast<Complex>();
  };

  SimResult out;
  Eigen::MatrixXcd rho = rho0.eigen();
  auto record = [&](double t) {
    out.times.push_back(t);
    out.fidelities.push_back(fidelity(ComplexMatrix(rho), target(t)));
  };
  record(0.0);

  ComplexMatrix h0 = h(0.0);
  check_hermitian(h0, 0.0);
  Sparse hs_start = sparse_of(h0);
  for (std::size_t n = 0; n < grid.steps; ++n) {
    const double t = step * static_cast<double>(n);
    const Sparse hs_mid = sparse_of(h(t + 0.5 * step));
    Sparse hs_end = sparse_of(h(t + step));
    const Eigen::MatrixXcd k1 = rate(hs_start, rho);
    const Eigen::MatrixXcd k2 = rate(hs_mid, rho + 0.5 * step * k1);
    const Eigen::MatrixXcd k3 = rate(hs_mid, rho + 0.5 * step * k2);
    const Eigen::MatrixXcd k4 = rate(hs_end, rho + step * k3);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    hs_start = std::move(hs_end);

    const double drift = std::abs(rho.trace() - 1.0);
    out.norm_drift = std::max(out.norm_drift, drift);
    if (!(drift <= kDriftLimit)) {
      throw NumericalQualityError("trace drift " + std::to_string(drift) + " after " + std::to_string(n + 1) +
                                  " steps; increase the step count");
    }
    if ((n + 1) % stride == 0 || n + 1 == grid.steps) {
      record(n + 1 == grid.steps ? grid.duration : t + step);
    }
  }

  out.final_density = ComplexMatrix(rho);
  out.final_fidelity = out.fidelities.back();
  out.hermiticity_defect = out.final_density.hermiticity_defect();
  out.min_eigenvalue = dim <= kFullDim ? eig_hermitian(out.final_density, 1e-6).values.front() : 0.0;
  out.leakage = dim == kFullDim ? leakage(out.final_density, subspace_basis()) : 0.0;
  return out;
}

SimResult propagate_lindblad(const HamiltonianFn& h, const ComplexMatrix& rho0, double gamma, const TimeGrid& grid,
                             const ComplexVector& target) {
  return propagate_lindblad(h, rho0, gamma, grid, [&target](double) { return target; });
}

double fidelity(const ComplexVector& state, const ComplexVector& target) {
  return std::norm(target.dot(state));
}

double fidelity(const ComplexMatrix& rho, const ComplexVector& target) {
  return rho.element(target, target).real();
}

double leakage(const ComplexVector& state, const SubspaceBasis& subspace) {
  if (state.dim() != kFullDim) throw DimensionError("leakage needs a 64-dim state");
  double inside = 0.0;
  for (const auto& v : subspace.embedding) inside += std::norm(v.dot(state));
  return std::max(0.0, state.norm() * state.norm() - inside);
}

double leakage(const ComplexMatrix& rho, const SubspaceBasis& subspace) {
  if (rho.dim() != kFullDim) throw DimensionError("leakage needs a 64-dim density matrix");
  double inside = 0.0;
  for (const auto& v : subspace.embedding) inside += rho.element(v, v).real();
  return std::max(0.0, rho.trace().real() - inside);
}

// ---- pulse programs --------------------------------------------------------

PulseProgram PulseProgram::resonant(ControlSet controls, double j) {
  const auto c = CouplingSchedule::constant(j);
  return PulseProgram{std::move(controls), c, c, 1.0};
}

PulseProgram PulseProgram::modulated(ControlSet gbar, double j0, double omega) {
  const auto c = CouplingSchedule::modulated(j0, omega);
  return PulseProgram{std::move(gbar), c, c, 1.0};
}

double PulseProgram::g(double t) const {
  const ControlPair d = drive.at(t);
  const double base = coupling.is_modulated() ? modulated_g(t, d.g1, d.g2, coupling.omega())
                                              : resonant_g(t, d.g1, d.g2, coupling.amplitude());
  return drive_scale * base;
}

PulseProgram apply_error(const PulseProgram& base, const ErrorSpec& err) {
  PulseProgram out = base;
  switch (err.kind) {
    case ErrorKind::none:
      break;
    case ErrorKind::delta_g:
      out.drive_scale *= 1.0 + err.delta;
      break;
    case ErrorKind::delta_J:
      out.actual = base.actual.is_modulated() ? base.actual.with_amplitude((1.0 + err.delta) * base.actual.amplitude())
                                              : base.actual.with_amplitude(base.actual.amplitude() + err.delta);
      break;
  }
  return out;
}

ControlSet apply_error(const ControlSet& base, const ErrorSpec& err) {
  switch (err.kind) {
    case ErrorKind::none:
      return base;
    case ErrorKind::delta_g:
      return base.scaled(1.0 + err.delta);
    case ErrorKind::delta_J:
      break;
  }
  throw std::invalid_argument("a coupling error needs a pulse program, not bare controls");
}

std::size_t default_steps_effective() { return std::size_t{1} << 12; }

std::size_t default_steps(const PulseProgram& program) {
  if (!program.coupling.is_modulated()) return std::size_t{1} << 14;
  const double periods = program.coupling.omega() * program.duration() / (2.0 * std::numbers::pi);
  return 1024 * static_cast<std::size_t>(std::ceil(periods - 1e-9));
}

namespace {

double spectral_radius(const ComplexMatrix& m) {
  const auto e = eig_hermitian(m);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

}  // namespace

std::size_t default_steps_lab(const PulseProgram& program) {
  static const double single = spectral_radius(physical_model().single_per_unit_j);
  static const double coupling = spectral_radius(physical_model().coupling_per_unit_g);
  const double j = std::max(std::abs(program.actual.amplitude()), std::abs(program.coupling.amplitude()));
  // |g| <= (2|g1| + sqrt2 |g2|) / sqrt3 for either drive form
  const double g = (2.0 + std::sqrt(2.0)) / std::sqrt(3.0) * program.drive.max_abs() * std::abs(program.drive_scale);
  const double bound = (single * j + coupling * g) * program.duration();
  const auto needed = static_cast<std::size_t>(std::ceil(bound / kLabStepPhase));
  const std::size_t blocks = (needed + 1023) / 1024;
  return std::max(default_steps(program), 1024 * blocks);
}

SimResult simulate_effective(const ControlSet& controls, const ErrorSpec& err, std::size_t steps) {
  const double scale = err.kind == ErrorKind::delta_g ? 1.0 + err.delta : 1.0;
  const double detuning = err.kind == ErrorKind::delta_J ? err.delta : 0.0;
  auto h = [&](double t) {
    const auto g = controls.at(t);
    ComplexMatrix m = effective_H(scale * g.g1, scale * g.g2);
    m(0, 0) = 3.0 * detuning;
    m(1, 1) = detuning;
    return m;
  };
  const TimeGrid grid{controls.duration(), steps ? steps : default_steps_effective(), 0};
  return propagate_schrodinger(h, ComplexVector::basis(3, 0), grid, singlet_state(ModelTier::effective3));
}

SimResult simulate_rotating(const PulseProgram& program, std::size_t steps) {
  auto h = [&](double t) { return rotating_frame_H(t, program.g(t), program.coupling, program.actual); };
  const TimeGrid grid{program.duration(), steps ? steps : default_steps(program), 0};
  return propagate_schrodinger(h, ComplexVector::basis(6, 0), grid, singlet_state(ModelTier::subspace6));
}

namespace {

TargetFn lab_target(const PulseProgram& program) {
  const ComplexVector singlet = singlet_state(ModelTier::physical64);
  const CouplingSchedule frame = program.coupling;
  return [singlet, frame](double t) { return physical_frame_transform(frame.phase_integral(t)) * singlet; };
}

}  // namespace

SimResult simulate_full(const PulseProgram& program, std::size_t steps) {
  auto h = [&](double t) { return full_physical_H(t, program.actual, program.g(t)); };
  const TimeGrid grid{program.duration(), steps ? steps : default_steps_lab(program), 0};
  return propagate_schrodinger(h, subspace_basis().embedding[0], grid, lab_target(program));
}

SimResult simulate_lindblad(const PulseProgram& program, double gamma, std::size_t steps) {
  auto h = [&](double t) { return full_physical_H(t, program.actual, program.g(t)); };
  const TimeGrid grid{program.duration(), steps ? steps : default_steps_lab(program), 0};
  const ComplexVector psi0 = subspace_basis().embedding[0];
  return propagate_lindblad(h, ComplexMatrix::outer(psi0, psi0), gamma, grid, lab_target(program));
}

}  // namespace spinsinglet
