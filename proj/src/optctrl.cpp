#include "spinsinglet/optctrl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spinsinglet/parallel.hpp"
#include "spinsinglet/spinmodel.hpp"

namespace spinsinglet {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> axis(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("empty kappa grid");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  // rounded to the step so grid values print cleanly
  for (std::size_t i = 0; i < n; ++i) v[i] = std::round((lo + step * static_cast<double>(i)) / step) * step;
  return v;
}

}  // namespace

std::vector<double> QsGrid::kappa1_values() const { return axis(kappa1_min, kappa1_max, step); }
std::vector<double> QsGrid::kappa2_values() const { return axis(kappa2_min, kappa2_max, step); }

// ---- qs --------------------------------------------------------------------

QsEvaluator::QsEvaluator(const PathParams& base, std::size_t steps) : base_(base), steps_(steps) {
  validate_path(base);
  if (steps < 2) throw std::invalid_argument("qs integration needs at least two steps");
  PathParams flat = base;
  flat.kappa1 = flat.kappa2 = 0.0;
  nodes_.resize(2 * steps + 1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double t = base.T * static_cast<double>(i) / static_cast<double>(2 * steps);
    const double mu = path_mu(t, flat);
    const double mu_dot = path_mu_dot(t, flat);
    const double mu_dot_csc = path_mu_dot_csc_theta(t, flat);
    nodes_[i] = {std::cos(kPi * mu), std::cos(2.0 * kPi * mu), mu_dot, mu_dot_csc, std::cos(theta(t, flat)),
                 theta_dot(t, flat)};
  }
}

double QsEvaluator::operator()(double kappa1, double kappa2) const {
  const double slope0 = base_.betaT - base_.beta0;
  auto rates = [&](const Node& n, double alpha, double& dalpha, double& dint) {
    const double slope = slope0 + kPi * kappa1 * n.cos_pi_mu + 2.0 * kPi * kappa2 * n.cos_2pi_mu;
    dalpha = 2.0 * slope * n.mu_dot_csc;
    dint = slope * n.mu_dot * n.cos_theta * std::sin(alpha) + n.theta_dot * std::cos(alpha);
  };
  const double h = base_.T / static_cast<double>(steps_);
  double alpha = 0.0, integral = 0.0;
  for (std::size_t s = 0; s < steps_; ++s) {
    const Node& a = nodes_[2 * s];
    const Node& m = nodes_[2 * s + 1];
    const Node& e = nodes_[2 * s + 2];
    double a1, i1, a2, i2, a3, i3, a4, i4;
    rates(a, alpha, a1, i1);
    rates(m, alpha + 0.5 * h * a1, a2, i2);
    rates(m, alpha + 0.5 * h * a2, a3, i3);
    rates(e, alpha + h * a3, a4, i4);
    alpha += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    integral += h / 6.0 * (i1 + 2.0 * i2 + 2.0 * i3 + i4);
  }
  return 2.0 * integral * integral;
}

double qs(const PathParams& path, std::size_t steps) { return QsEvaluator(path, steps)(path.kappa1, path.kappa2); }

double qs_reference(const PathParams& path) {
  validate_path(path);
  auto integrand = [&](double t) {
    const double alpha = lr_phase_plus(t, path, 1e-11);
    return beta_dot(t, path) * std::cos(theta(t, path)) * std::sin(alpha) + theta_dot(t, path) * std::cos(alpha);
  };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, path.T, 12, 1e-10, &err);
  return 2.0 * v * v;
}

double sensitivity_exact(const PathParams& path, std::size_t steps) {
  validate_path(path);
  // state: alpha_+, alpha_-, A_+, A_-
  struct State {
    double ap, am;
    Complex Ap, Am;
  };
  auto rate = [&](double t, const State& s) {
    const auto g = controls_from_path(t, path);
    const ComplexMatrix h = effective_H(g.g1, g.g2);
    const ComplexVector p0 = phi0(t, path);
    const ComplexVector pp = phi_plus(t, path);
    const ComplexVector pm = phi_minus(t, path);
    const ComplexVector ppd = phi_plus_dot(t, path);
    // phi_minus is the complex conjugate of phi_plus
    ComplexVector pmd(3);
    for (std::size_t k = 0; k < 3; ++k) pmd[k] = std::conj(ppd[k]);
    State d;
    d.ap = (kI * pp.dot(ppd) - h.element(pp, pp)).real();
    d.am = (kI * pm.dot(pmd) - h.element(pm, pm)).real();
    d.Ap = std::exp(-kI * s.ap) * h.element(pp, p0);
    d.Am = std::exp(-kI * s.am) * h.element(pm, p0);
    return d;
  };
  auto axpy = [](const State& s, double w, const State& d) {
    return State{s.ap + w * d.ap, s.am + w * d.am, s.Ap + w * d.Ap, s.Am + w * d.Am};
  };
  const double h = path.T / static_cast<double>(steps);
  State s{0.0, 0.0, 0.0, 0.0};
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = h * static_cast<double>(n);
    const State k1 = rate(t, s);
    const State k2 = rate(t + 0.5 * h, axpy(s, 0.5 * h, k1));
    const State k3 = rate(t + 0.5 * h, axpy(s, 0.5 * h, k2));
    const State k4 = rate(std::min(t + h, path.T), axpy(s, h, k3));
    s.ap += h / 6.0 * (k1.ap + 2.0 * k2.ap + 2.0 * k3.ap + k4.ap);
    s.am += h / 6.0 * (k1.am + 2.0 * k2.am + 2.0 * k3.am + k4.am);
    s.Ap += h / 6.0 * (k1.Ap + 2.0 * k2.Ap + 2.0 * k3.Ap + k4.Ap);
    s.Am += h / 6.0 * (k1.Am + 2.0 * k2.Am + 2.0 * k3.Am + k4.Am);
  }
  return std::norm(s.Ap) + std::norm(s.Am);
}

double sensitivity_from_simulation(const PathParams& path, double h) {
  const ControlSet controls = ControlSet::from_path(path);
  const double f0 = simulate_effective(controls).final_fidelity;
  const double fp = simulate_effective(controls, ErrorSpec::drive(h)).final_fidelity;
  const double fm = simulate_effective(controls, ErrorSpec::drive(-h)).final_fidelity;
  return -(fp + fm - 2.0 * f0) / (2.0 * h * h);
}

double perturbative_fidelity(double delta, const PathParams& path) {
  if (delta == 0.0) return 1.0;
  return 1.0 - delta * delta * sensitivity_exact(path);
}

// ---- landscape and search --------------------------------------------------

QsLandscape qs_landscape(const QsGrid& grid, const PathParams& base, unsigned workers) {
  QsLandscape out{grid.kappa1_values(), grid.kappa2_values(), {}};
  const QsEvaluator f(base);
  const std::size_t n2 = out.kappa2_grid.size();
  out.qs_values = parallel_map<double>(out.kappa1_grid.size() * n2, workers, [&](std::size_t idx) {
    return f(out.kappa1_grid[idx / n2], out.kappa2_grid[idx % n2]);
  });
  return out;
}

std::vector<KappaOptimum> local_minima(const QsLandscape& l) {
  const auto n1 = static_cast<long>(l.kappa1_grid.size());
  const auto n2 = static_cast<long>(l.kappa2_grid.size());
  std::vector<KappaOptimum> out;
  for (long i = 0; i < n1; ++i) {
    for (long j = 0; j < n2; ++j) {
      const double v = l.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      bool minimal = true;
      for (long di = -1; di <= 1 && minimal; ++di) {
        for (long dj = -1; dj <= 1; ++dj) {
          const long a = i + di, b = j + dj;
          if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n1 || b >= n2) continue;
          if (l.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) < v) {
            minimal = false;
            break;
          }
        }
      }
      if (minimal) {
        out.push_back({l.kappa1_grid[static_cast<std::size_t>(i)], l.kappa2_grid[static_cast<std::size_t>(j)], v, false});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.qs < b.qs; });
  return out;
}

KappaOptimum pattern_search(const QsEvaluator& f, double kappa1, double kappa2, double step, double tol) {
  KappaOptimum best{kappa1, kappa2, f(kappa1, kappa2), true};
  constexpr std::array<std::array<int, 2>, 4> moves{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (step > tol) {
    bool improved = false;
    for (const auto& m : moves) {
      const double a = best.kappa1 + step * m[0];
      const double b = best.kappa2 + step * m[1];
      const double v = f(a, b);
      if (v < best.qs) {
        best = {a, b, v, true};
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

KappaOptimum optimize_kappas(const QsLandscape& landscape, bool refine, const PathParams& base) {
  if (landscape.qs_values.empty()) throw std::invalid_argument("empty kappa grid");
  const auto it = std::min_element(landscape.qs_values.begin(), landscape.qs_values.end());
  const auto idx = static_cast<std::size_t>(it - landscape.qs_values.begin());
  const std::size_t n2 = landscape.kappa2_grid.size();
  KappaOptimum best{landscape.kappa1_grid[idx / n2], landscape.kappa2_grid[idx % n2], *it, false};
  if (!refine) return best;
  double step = 0.01;
  if (landscape.kappa1_grid.size() > 1) step = landscape.kappa1_grid[1] - landscape.kappa1_grid[0];
  else if (n2 > 1) step = landscape.kappa2_grid[1] - landscape.kappa2_grid[0];
  return pattern_search(QsEvaluator(base), best.kappa1, best.kappa2, 0.5 * step);
}

KappaOptimum optimize_kappas(const QsGrid& grid, bool refine, const PathParams& base, unsigned workers) {
  return optimize_kappas(qs_landscape(grid, base, workers), refine, base);
}

// ---- baselines -------------------------------------------------------------

PathParams baseline_path(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::optimized:
      return PathParams::optimized();
    case BaselineKind::reverse_only:
      return PathParams::singlet(0.0, 0.0);
    case BaselineKind::flat:
      break;
  }
  throw std::invalid_argument("the flat baseline is not built from a path");
}

ControlSet baseline_controls(BaselineKind kind, std::size_t samples) {
  if (kind == BaselineKind::flat) return ControlSet::constant(kFlatG1, kFlatG2, 1.0);
  return ControlSet::from_path(baseline_path(kind), samples);
}

}  // namespace spinsinglet
