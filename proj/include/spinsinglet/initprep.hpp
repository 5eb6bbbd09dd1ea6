#pragma once

// Preparing one logical qubit in |0>, |1> or |2> from |dd> with transverse
// and longitudinal fields on both spins of the pair plus a Jy sigma_y sigma_y
// exchange. In the Bell basis:
//
//   H = [Bx |0><1| + Bz |0><2|] / 2 + h.c. + (Jy / 4) diag(-1, 1, 1, -1)
//
// In the frame of the Jy term, with Bx = 4 Bbx sin(Jy t / 2) and
// Bz = -4 Bbz sin(Jy t / 2), the rotating-wave part is effective_H(Bbx, Bbz)
// on the ordered basis (|1>, |0>, |2>). The same so(3) path machinery
// therefore designs (Bbx, Bbz).

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "spinsinglet/dynamics.hpp"
#include "spinsinglet/invariantpath.hpp"
#include "spinsinglet/matrixkit.hpp"
#include "spinsinglet/spinmodel.hpp"

namespace spinsinglet {

enum class InitTarget { ket0, ket1, ket2 };

/// Bell index of each effective-basis slot: (|1>, |0>, |2>).
inline constexpr std::array<std::size_t, 3> kInitBasisOrder{1, 0, 2};

/// Path from (th, b) = (-3pi/4, 0), which is |dd>, to the target:
/// ket0 (-pi/2, 0), ket1 (0, pi/2), ket2 (0, 0). Fourier terms default to zero.
PathParams init_path(InitTarget target, double kappa1 = 0.0, double kappa2 = 0.0);

/// Bell index (0..3) of the target.
std::size_t init_target_index(InitTarget target);

/// 4x4 pair Hamiltonian. Physical form:
/// (Bx/4)(sx1 + sx2) + (Bz/4)(sz1 + sz2) + (Jy/4) sy1 sy2.
ComplexMatrix init_hamiltonian(double bx, double bz, double jy, Basis basis);

/// Initial state |dd> in Bell coordinates.
ComplexVector init_start_state();

struct InitSchedule {
  ControlSet effective;  // (Bbx, Bbz)
  bool modulated = false;
  double jy = 0.0;       // constant Jy, or Jy0 when modulated
  double omega = 0.0;
  double bessel_factor = 1.0;  // J1(Jy0 / omega) when modulated
  std::vector<std::string> warnings;

  double duration() const { return effective.duration(); }
  double jy_at(double t) const;
  /// int_0^t Jy
  double jy_integral(double t) const;
  double bx(double t) const;
  double bz(double t) const;
};

/// Resonant schedule for constant Jy. Warns when max |Bb| exceeds Jy / 10.
InitSchedule init_controls(const PathParams& path, double jy);

/// Jy(t) = 2 Jy0 cos(omega t), Bx = 2 Bb sin(omega t) / J1(Jy0/omega), Bz = -2 Bb sin(omega t) / J1(...).
/// Throws std::invalid_argument when |J1(Jy0/omega)| <= 0.05.
InitSchedule init_modulated_controls(const PathParams& path, double jy0, double omega);

struct InitResult {
  double target_population = 0.0;
  double max_ket3_population = 0.0;
  ComplexVector final_state;  // Bell coordinates, lab frame
  SimResult run;              // fidelity trajectory = population of |3>
};

std::size_t default_init_steps(const InitSchedule& schedule);

/// Full 4-level propagation from |dd>.
InitResult simulate_init(const InitSchedule& schedule, InitTarget target, std::size_t steps = 0);

/// |<effective final | full final in the Jy frame>| on the (|1>,|0>,|2>) slots.
double init_round_trip_overlap(const InitSchedule& schedule, std::size_t steps = 0);

}  // namespace spinsinglet
