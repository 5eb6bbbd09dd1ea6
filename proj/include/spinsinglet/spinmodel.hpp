#pragma once

// Hamiltonians for three logical qubits, each encoded in the Bell states of a
// spin pair, at three levels of description:
//
//   physical64  six spins, ordered (q11, q12, q21, q22, q31, q32) with q11 the
//               slowest Kronecker index; per spin |up> = index 0.
//   subspace6   the permutation states psi_1..psi_6 of |012>, rotating frame.
//   effective3  the phi_1..phi_3 basis after the resonance approximation.
//
// Natural units: the protocol duration is T = 1 and energies are in 1/T.
// A coupling value J means the rotating-frame splitting of the single-pair
// terms, i.e. psi_1..psi_6 carry energies (3, 1, 0, 1, 0, 1) * J. The exchange
// strengths realizing this in the spin model are 2J (see singlet_exchange_pattern).

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "spinsinglet/matrixkit.hpp"

namespace spinsinglet {

enum class ModelTier { physical64, subspace6, effective3 };
enum class Basis { physical, bell };

struct ExchangeStrengths {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
};

/// Rows are the logical states |0>,|1>,|2>,|3> in the pair basis {uu, ud, du, dd}.
struct BellBasisPair {
  ComplexMatrix transform;
};
const BellBasisPair& bell_basis_pair();

using LogicalLabel = std::array<int, 3>;

struct SubspaceBasis {
  std::array<LogicalLabel, 6> labels;
  std::vector<ComplexVector> embedding;  // six 64-dim vectors
};
const SubspaceBasis& subspace_basis();

/// phi_1..phi_3 expressed in psi coordinates (6-dim).
struct PhiBasis {
  std::array<ComplexVector, 3> vectors;
};
const PhiBasis& phi_basis();

/// Energies of psi_1..psi_6 per unit coupling J in the single-pair Hamiltonian.
inline constexpr std::array<double, 6> kFrameEnergies{3.0, 1.0, 0.0, 1.0, 0.0, 1.0};

/// Exchange coupling J(t) of the single-pair terms. Either constant, or J0 cos(omega t).
class CouplingSchedule {
 public:
  static CouplingSchedule constant(double j);
  static CouplingSchedule modulated(double j0, double omega);

  bool is_modulated() const { return modulated_; }
  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }

  double value(double t) const;
  /// Integral of J from 0 to t, evaluated in closed form.
  double phase_integral(double t) const;

  CouplingSchedule with_amplitude(double amplitude) const;

 private:
  bool modulated_ = false;
  double amplitude_ = 0.0;
  double omega_ = 0.0;
};

/// Exchange strengths of the singlet configuration: one zero per pair, the other
/// two equal to 2J, giving Bell-state splittings that match kFrameEnergies.
std::array<ExchangeStrengths, 3> singlet_exchange_pattern(double j);

/// |a b c> in the 64-dim spin basis, a,b,c in {0,1,2,3}.
ComplexVector logical_product_state(int a, int b, int c);

ComplexVector singlet_state(ModelTier tier);

/// Single-pair exchange Hamiltonian, 4x4. `pair` in {1,2,3} labels the pair only.
ComplexMatrix single_qubit_H(int pair, const ExchangeStrengths& s, Basis basis);

/// Exchange between two pairs, all four cross-spin couplings equal. 16x16, the
/// first pair of `pairs` is the slower index.
ComplexMatrix pair_exchange_H(std::pair<int, int> pairs, const ExchangeStrengths& g, Basis basis);

/// The same coupling embedded in the 64-dim spin space.
ComplexMatrix pair_exchange_H_embedded(std::pair<int, int> pairs, const ExchangeStrengths& g);

/// Single-pair Hamiltonian embedded in 64 dims.
ComplexMatrix single_qubit_H_embedded(int pair, const ExchangeStrengths& s);

ComplexMatrix subspace_H_mu(double g);

/// 6x6 rotating-frame Hamiltonian. Frame phases follow `nominal`; if the
/// realized coupling `actual` differs, the residual (actual - nominal) * E
/// appears on the diagonal.
ComplexMatrix rotating_frame_H(double t, double g, const CouplingSchedule& nominal,
                               const CouplingSchedule& actual);
ComplexMatrix rotating_frame_H(double t, double g, const CouplingSchedule& nominal);

/// so(3) generators G1, G2, G3 in the phi basis; index 1..3.
ComplexMatrix so3_generator(int k);

ComplexMatrix effective_H(double g1, double g2);

/// Lab-frame 64x64 Hamiltonian: single-pair terms at coupling J(t) plus
/// isotropic inter-pair exchange g on all three pairs.
ComplexMatrix full_physical_H(double t, const CouplingSchedule& coupling, double g);

/// The two constant pieces of full_physical_H: H = J * single + g * coupling.
struct PhysicalModel {
  ComplexMatrix single_per_unit_j;
  ComplexMatrix coupling_per_unit_g;
};
const PhysicalModel& physical_model();

/// R = exp(-i * phase * H_single_per_unit_j), 64x64, with phase = int_0^t J.
ComplexMatrix physical_frame_transform(double phase);

/// 2*g1 sin(2Jt) + sqrt2*g2 sin(Jt), over sqrt3: the constant-J drive whose
/// rotating-wave part is effective_H(g1, g2).
double resonant_g(double t, double g1, double g2, double j);

}  // namespace spinsinglet
