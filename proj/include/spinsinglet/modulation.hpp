#pragma once

// Periodic modulation J(t) = J0 cos(omega t) of the single-pair coupling.
//
// With eta = J0 / omega and the drive g = [gbar1 sin(wt) + gbar2 sin(3wt)] / sqrt3,
// first-order averaging leaves effective_H(gt1, gt2) with
//   gt1 = J1(2 eta) gbar1 + J3(2 eta) gbar2
//   gt2 = sqrt2 [J1(eta) gbar1 + J3(eta) gbar2]
// The determinant of this map is upsilon(eta).

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinsinglet/dynamics.hpp"
#include "spinsinglet/invariantpath.hpp"

namespace spinsinglet {

struct SingularInversionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModulationParams {
  double eta = 2.3;
  double kappa = 16.0;  // modulation periods per protocol duration
  double T = 1.0;

  double omega() const { return 2.0 * std::numbers::pi * kappa / T; }
  double j0() const { return eta * omega(); }
  bool integer_kappa() const;
  /// kappa >= 1, eta > 0, T > 0.
  void validate() const;
};

/// First-kind Bessel function from its ascending series. Accurate to ~1e-14
/// for |x| <= 10; loses digits to cancellation beyond |x| ~ 20.
double bessel_j(int m, double x);

double upsilon(double eta);

/// Forward map (gbar1, gbar2) -> (gt1, gt2).
ControlPair effective_from_bar(const ControlPair& gbar, double eta);

/// Inverse map; throws SingularInversionError when |upsilon(eta)| <= 1e-6.
ControlPair invert_controls(const ControlPair& gtilde, double eta);
ControlSet invert_controls(const ControlSet& gtilde, double eta);

double modulated_g(double t, double gbar1, double gbar2, double omega);

/// Pulse program realizing effective controls `gtilde` under modulation.
/// Requires integer kappa so the frame closes at T.
PulseProgram modulated_program(const ControlSet& gtilde, const ModulationParams& params);

struct KappaEtaScan {
  std::vector<double> kappas;
  std::vector<double> etas;
  /// fidelity[i * etas.size() + j] for (kappas[i], etas[j]); NaN where invalid.
  std::vector<double> fidelity;
  std::vector<bool> valid;
  std::vector<std::string> status;
};

/// Rotating-frame fidelity over a (kappa, eta) grid. Non-integer kappa is
/// allowed here. Cell failures are recorded, not thrown.
KappaEtaScan scan_kappa_eta(const std::vector<double>& kappas, const std::vector<double>& etas,
                            const PathParams& path, unsigned workers = 1, std::size_t steps_per_period = 1024);

}  // namespace spinsinglet
