#pragma once

// Sensitivity of the singlet protocol to a proportional drive error
// g -> (1 + delta) g, and its minimization over the Fourier coefficients of
// the beta(t) path.
//
// Two sensitivities live here:
//   qs()                the closed form 2 [int (b_dot cos th sin a + th_dot cos a) dt]^2
//                       with a = lr_phase_plus; this defines the landscape.
//   sensitivity_exact() sum_k |int e^{-i a_k} <Phi_k|H_e|Phi_0> dt|^2 with the
//                       phases taken from their definition; this is the true
//                       second-order coefficient -1/2 d2F/d delta2.
// They do not agree; see the README section on the sensitivity landscape.

#include <cstddef>
#include <vector>

#include "spinsinglet/dynamics.hpp"
#include "spinsinglet/invariantpath.hpp"

namespace spinsinglet {

struct QsGrid {
  double kappa1_min = 0.0;
  double kappa1_max = 2.0;
  double kappa2_min = 0.0;
  double kappa2_max = 2.0;
  double step = 0.01;

  std::vector<double> kappa1_values() const;
  std::vector<double> kappa2_values() const;
};

struct QsLandscape {
  std::vector<double> kappa1_grid;
  std::vector<double> kappa2_grid;
  std::vector<double> qs_values;  // row-major, kappa1 index slowest

  double at(std::size_t i, std::size_t j) const { return qs_values[i * kappa2_grid.size() + j]; }
};

struct KappaOptimum {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double qs = 0.0;
  bool refined = false;
};

/// Evaluates qs for many (kappa1, kappa2) on one set of path boundaries. The
/// kappa-independent parts of the integrand are tabulated once.
class QsEvaluator {
 public:
  explicit QsEvaluator(const PathParams& base, std::size_t steps = 2000);
  double operator()(double kappa1, double kappa2) const;

 private:
  struct Node {
    double cos_pi_mu, cos_2pi_mu, mu_dot, mu_dot_csc, cos_theta, theta_dot;
  };
  PathParams base_;
  std::size_t steps_;
  std::vector<Node> nodes_;  // at every half step
};

double qs(const PathParams& path, std::size_t steps = 2000);

/// qs with lr_phase_plus from adaptive quadrature inside an adaptive outer
/// integral. Slow; used to cross-check QsEvaluator.
double qs_reference(const PathParams& path);

double sensitivity_exact(const PathParams& path, std::size_t steps = 4000);

/// -1/2 d2F/d delta2 from effective-model simulations at delta = 0, +-h.
double sensitivity_from_simulation(const PathParams& path, double h = 0.02);

/// 1 - delta^2 * sensitivity_exact(path).
double perturbative_fidelity(double delta, const PathParams& path);

QsLandscape qs_landscape(const QsGrid& grid, const PathParams& base = PathParams::singlet(0, 0),
                         unsigned workers = 1);

/// Every grid point whose value does not exceed any of its (up to 8) neighbors, ascending in qs.
std::vector<KappaOptimum> local_minima(const QsLandscape& landscape);

/// Global grid minimum; with refine, polished by a compass pattern search.
KappaOptimum optimize_kappas(const QsGrid& grid, bool refine, const PathParams& base = PathParams::singlet(0, 0),
                             unsigned workers = 1);
KappaOptimum optimize_kappas(const QsLandscape& landscape, bool refine,
                             const PathParams& base = PathParams::singlet(0, 0));

/// Compass search from `start`, step halved on failure until below `tol`.
KappaOptimum pattern_search(const QsEvaluator& f, double kappa1, double kappa2, double step, double tol = 1e-7);

enum class BaselineKind { optimized, reverse_only, flat };

inline constexpr double kFlatG1 = 1.2358;
inline constexpr double kFlatG2 = 1.2057;

/// Path behind the optimized (0.97, 0.71) and reverse_only (0, 0) baselines.
/// The flat baseline has no path and throws.
PathParams baseline_path(BaselineKind kind);
ControlSet baseline_controls(BaselineKind kind, std::size_t samples = ControlSet::kDefaultSamples);

}  // namespace spinsinglet
