#pragma once

// Invariant-based inverse engineering on so(3).
//
// The invariant I = l1 G1 + l2 G2 + l3 G3 is parametrized by two angles,
// l = (cos th cos b, cos th sin b, sin th). A path (th(t), b(t)) fixes the
// controls g1, g2 of effective_H, and the zero-eigenvalue eigenvector Phi0
// carries the state from its value at t = 0 to its value at t = T.
//
// Path shape:
//   th(t) = th0 + (thT - th0) s^2,            s = sin(pi t / 2T)
//   b(t)  = bT mu + b0 (1 - mu) + k1 sin(pi mu) + k2 sin(2 pi mu)
// with mu = s^4, except when thT = 0, where mu = 1 - c^4 (c = cos(pi t / 2T))
// so that b_dot cot(th) stays finite as th -> 0 at the end.

#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spinsinglet/matrixkit.hpp"

namespace spinsinglet {

struct InvalidPathError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathParams {
  double theta0 = 0.0;
  double thetaT = std::numbers::pi / 4.0;
  double beta0 = std::numbers::pi / 2.0;
  double betaT = 0.6154797086703874;  // asin(1/sqrt3)
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double T = 1.0;

  /// Singlet-generation boundaries with the given Fourier coefficients.
  static PathParams singlet(double kappa1, double kappa2);
  /// The error-optimized point (0.97, 0.71).
  static PathParams optimized() { return singlet(0.97, 0.71); }
};

struct InvariantCoeffs {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

struct ControlPair {
  double g1 = 0.0;
  double g2 = 0.0;
};

/// Throws InvalidPathError when th crosses zero inside (0, T), when both ends
/// sit at th = 0, when |th| reaches pi, or when T <= 0.
void validate_path(const PathParams& path);

double theta(double t, const PathParams& path);
double theta_dot(double t, const PathParams& path);
double path_mu(double t, const PathParams& path);
double path_mu_dot(double t, const PathParams& path);
double beta(double t, const PathParams& path);
double beta_dot(double t, const PathParams& path);
/// mu_dot / sin(th), finite at th = 0 ends.
double path_mu_dot_csc_theta(double t, const PathParams& path);
/// b_dot / sin(th), finite at th = 0 ends.
double beta_dot_csc_theta(double t, const PathParams& path);

InvariantCoeffs invariant_coeffs(double t, const PathParams& path);
ControlPair controls_from_path(double t, const PathParams& path);

ComplexMatrix invariant_matrix(double t, const PathParams& path);
ComplexVector phi0(double t, const PathParams& path);
ComplexVector phi_plus(double t, const PathParams& path);
ComplexVector phi_minus(double t, const PathParams& path);
/// Time derivative of phi_plus from the closed-form angle derivatives.
ComplexVector phi_plus_dot(double t, const PathParams& path);

/// alpha_+(t) = int_0^t 2 b_dot csc(th), adaptive Gauss-Kronrod quadrature.
/// alpha_- = -alpha_+.
double lr_phase_plus(double t, const PathParams& path, double tol = 1e-12);

/// alpha_+(t) from the phase definition int <Phi+| i d/dt - H_e |Phi+>, with
/// H_e built from controls_from_path. Comes out as exactly half of lr_phase_plus.
double lr_phase_from_definition(double t, const PathParams& path, double tol = 1e-12);

/// Controls sampled on a uniform grid over [0, T], interpolated with
/// four-point Lagrange cubics. Immutable once built.
class ControlSet {
 public:
  static constexpr std::size_t kDefaultSamples = 4001;

  ControlSet() = default;
  ControlSet(std::vector<double> g1, std::vector<double> g2, double duration);

  static ControlSet tabulate(const std::function<ControlPair(double)>& f, double duration,
                             std::size_t samples = kDefaultSamples);
  static ControlSet from_path(const PathParams& path, std::size_t samples = kDefaultSamples);
  static ControlSet constant(double g1, double g2, double duration = 1.0);

  ControlPair at(double t) const;
  double duration() const { return duration_; }
  std::size_t samples() const { return g1_.size(); }
  double time(std::size_t i) const;
  const std::vector<double>& g1() const { return g1_; }
  const std::vector<double>& g2() const { return g2_; }
  /// max over samples of max(|g1|, |g2|)
  double max_abs() const;

  ControlSet scaled(double factor) const;
  ControlSet mapped(const std::function<ControlPair(const ControlPair&)>& f) const;

 private:
  std::vector<double> g1_;
  std::vector<double> g2_;
  double duration_ = 1.0;
};

}  // namespace spinsinglet
