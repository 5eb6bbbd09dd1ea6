#include "spinsinglet/invariantpath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spinsinglet/spinmodel.hpp"

namespace spinsinglet {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_time(double t, const PathParams& path) {
  const double slack = 1e-12 * path.T;
  if (t < -slack || t > path.T + slack) {
    throw std::domain_error("time " + std::to_string(t) + " outside [0, T]");
  }
  return std::clamp(t, 0.0, path.T);
}

// sin(x)/x with a series near zero
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

bool ends_at_zero(const PathParams& p) { return p.thetaT == 0.0; }

struct Quarter {
  double s;
  double c;
};

Quarter quarter(double t, const PathParams& p) {
  const double a = kPi * t / (2.0 * p.T);
  return {std::sin(a), std::cos(a)};
}

double dbeta_dmu(double mu, const PathParams& p) {
  return (p.betaT - p.beta0) + kPi * p.kappa1 * std::cos(kPi * mu) +
         2.0 * kPi * p.kappa2 * std::cos(2.0 * kPi * mu);
}

template <class F>
double integrate(F f, double t, double tol, const char* what) {
  if (t == 0.0) return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 20, tol, &err);
  if (!std::isfinite(v) || err > 1e3 * tol * std::max(1.0, std::abs(v))) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge (error estimate " +
                          std::to_string(err) + ")");
  }
  return v;
}

}  // namespace

PathParams PathParams::singlet(double kappa1, double kappa2) {
  PathParams p;
  p.kappa1 = kappa1;
  p.kappa2 = kappa2;
  return p;
}

void validate_path(const PathParams& p) {
  if (!(p.T > 0.0)) throw InvalidPathError("path duration must be positive");
  if (p.theta0 == 0.0 && p.thetaT == 0.0) throw InvalidPathError("theta is zero at both ends");
  if (p.theta0 * p.thetaT < 0.0) throw InvalidPathError("theta crosses zero inside the path");
  if (std::abs(p.theta0) >= kPi || std::abs(p.thetaT) >= kPi) {
    throw InvalidPathError("|theta| must stay below pi");
  }
  for (double v : {p.theta0, p.thetaT, p.beta0, p.betaT, p.kappa1, p.kappa2}) {
    if (!std::isfinite(v)) throw InvalidPathError("non-finite path parameter");
  }
}

double theta(double t, const PathParams& p) {
  const auto [s, c] = quarter(checked_time(t, p), p);
  return p.theta0 + (p.thetaT - p.theta0) * s * s;
}

double theta_dot(double t, const PathParams& p) {
  const auto [s, c] = quarter(checked_time(t, p), p);
  return (p.thetaT - p.theta0) * kPi * s * c / p.T;
}

double path_mu(double t, const PathParams& p) {
  const auto [s, c] = quarter(checked_time(t, p), p);
  return ends_at_zero(p) ? 1.0 - c * c * c * c : s * s * s * s;
}

double path_mu_dot(double t, const PathParams& p) {
  const auto [s, c] = quarter(checked_time(t, p), p);
  return ends_at_zero(p) ? 2.0 * kPi * c * c * c * s / p.T : 2.0 * kPi * s * s * s * c / p.T;
}

double beta(double t, const PathParams& p) {
  const double mu = path_mu(t, p);
  return p.betaT * mu + p.beta0 * (1.0 - mu) + p.kappa1 * std::sin(kPi * mu) +
         p.kappa2 * std::sin(2.0 * kPi * mu);
}

double beta_dot(double t, const PathParams& p) {
  return dbeta_dmu(path_mu(t, p), p) * path_mu_dot(t, p);
}

double path_mu_dot_csc_theta(double t, const PathParams& p) {
  validate_path(p);
  t = checked_time(t, p);
  const auto [s, c] = quarter(t, p);
  const double th = theta(t, p);
  // the vanishing factor of sin(th) is cancelled analytically at a th = 0 end
  if (p.theta0 == 0.0) return 2.0 * kPi * s * c / (p.T * p.thetaT * sinc(th));
  if (p.thetaT == 0.0) return 2.0 * kPi * c * s / (p.T * p.theta0 * sinc(th));
  return path_mu_dot(t, p) / std::sin(th);
}

double beta_dot_csc_theta(double t, const PathParams& p) {
  const double v = dbeta_dmu(path_mu(t, p), p) * path_mu_dot_csc_theta(t, p);
  if (!std::isfinite(v)) throw InvalidPathError("beta_dot csc(theta) is not finite on this path");
  return v;
}

InvariantCoeffs invariant_coeffs(double t, const PathParams& p) {
  const double th = theta(t, p);
  const double b = beta(t, p);
  return {std::cos(th) * std::cos(b), std::cos(th) * std::sin(b), std::sin(th)};
}

ControlPair controls_from_path(double t, const PathParams& p) {
  const double th = theta(t, p);
  const double b = beta(t, p);
  const double thd = theta_dot(t, p);
  const double bcot = beta_dot_csc_theta(t, p) * std::cos(th);
  return {thd * std::sin(b) - bcot * std::cos(b), -thd * std::cos(b) - bcot * std::sin(b)};
}

ComplexMatrix invariant_matrix(double t, const PathParams& p) {
  const auto l = invariant_coeffs(t, p);
  return so3_generator(1) * Complex(l.lambda1) + so3_generator(2) * Complex(l.lambda2) +
         so3_generator(3) * Complex(l.lambda3);
}

ComplexVector phi0(double t, const PathParams& p) {
  const double th = theta(t, p);
  const double b = beta(t, p);
  return ComplexVector{std::cos(th) * std::sin(b), -std::sin(th), std::cos(th) * std::cos(b)};
}

ComplexVector phi_plus(double t, const PathParams& p) {
  const double th = theta(t, p);
  const double b = beta(t, p);
  const double r = 1.0 / std::sqrt(2.0);
  return ComplexVector{r * (std::sin(th) * std::sin(b) + kI * std::cos(b)), r * std::cos(th),
                       r * (std::sin(th) * std::cos(b) - kI * std::sin(b))};
}

ComplexVector phi_minus(double t, const PathParams& p) {
  const double th = theta(t, p);
  const double b = beta(t, p);
  const double r = 1.0 / std::sqrt(2.0);
  return ComplexVector{r * (std::sin(th) * std::sin(b) - kI * std::cos(b)), r * std::cos(th),
                       r * (std::sin(th) * std::cos(b) + kI * std::sin(b))};
}

ComplexVector phi_plus_dot(double t, const PathParams& p) {
  const double th = theta(t, p);
  const double b = beta(t, p);
  const double thd = theta_dot(t, p);
  const double bd = beta_dot(t, p);
  const double r = 1.0 / std::sqrt(2.0);
  const double st = std::sin(th), ct = std::cos(th), sb = std::sin(b), cb = std::cos(b);
  return ComplexVector{r * (thd * ct * sb + bd * (st * cb - kI * sb)), r * (-thd * st),
                       r * (thd * ct * cb + bd * (-st * sb - kI * cb))};
}

double lr_phase_plus(double t, const PathParams& p, double tol) {
  validate_path(p);
  t = checked_time(t, p);
  return integrate([&](double u) { return 2.0 * beta_dot_csc_theta(u, p); }, t, tol, "lr_phase_plus");
}

double lr_phase_from_definition(double t, const PathParams& p, double tol) {
  validate_path(p);
  t = checked_time(t, p);
  auto rate = [&](double u) {
    const ComplexVector phi = phi_plus(u, p);
    const auto g = controls_from_path(u, p);
    const Complex geometric = kI * phi.dot(phi_plus_dot(u, p));
    const Complex dynamic = effective_H(g.g1, g.g2).element(phi, phi);
    return (geometric - dynamic).real();
  };
  return integrate(rate, t, tol, "lr_phase_from_definition");
}

// ---- ControlSet ------------------------------------------------------------

ControlSet::ControlSet(std::vector<double> g1, std::vector<double> g2, double duration)
    : g1_(std::move(g1)), g2_(std::move(g2)), duration_(duration) {
  if (g1_.size() != g2_.size()) throw DimensionError("control tables differ in length");
  if (g1_.size() < 2) throw std::invalid_argument("a control table needs at least two samples");
  if (!(duration_ > 0.0)) throw std::invalid_argument("control duration must be positive");
}

ControlSet ControlSet::tabulate(const std::function<ControlPair(double)>& f, double duration,
                                std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("a control table needs at least two samples");
  std::vector<double> g1(samples), g2(samples);
  const double h = duration / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? duration : h * static_cast<double>(i);
    const auto v = f(t);
    g1[i] = v.g1;
    g2[i] = v.g2;
  }
  return ControlSet(std::move(g1), std::move(g2), duration);
}

ControlSet ControlSet::from_path(const PathParams& path, std::size_t samples) {
  validate_path(path);
  return tabulate([&](double t) { return controls_from_path(t, path); }, path.T, samples);
}

ControlSet ControlSet::constant(double g1, double g2, double duration) {
  return ControlSet({g1, g1}, {g2, g2}, duration);
}

double ControlSet::time(std::size_t i) const {
  return duration_ * static_cast<double>(i) / static_cast<double>(samples() - 1);
}

ControlPair ControlSet::at(double t) const {
  const std::size_t n = samples();
  // accept round-off at the ends from accumulated step times
  if (t < -1e-9 * duration_ || t > duration_ * (1.0 + 1e-9)) {
    throw std::domain_error("control time " + std::to_string(t) + " outside [0, T]");
  }
  const double x = std::clamp(t / duration_, 0.0, 1.0) * static_cast<double>(n - 1);
  if (n < 4) {
    const auto i = std::min(static_cast<std::size_t>(x), n - 2);
    const double w = x - static_cast<double>(i);
    return {(1 - w) * g1_[i] + w * g1_[i + 1], (1 - w) * g2_[i] + w * g2_[i + 1]};
  }
  // stencil i0..i0+3 around x, shifted inward at the edges
  const auto cell = std::min(static_cast<std::size_t>(x), n - 2);
  const std::size_t i0 = std::clamp<std::size_t>(cell == 0 ? 0 : cell - 1, 0, n - 4);
  double w[4];
  for (int a = 0; a < 4; ++a) {
    double v = 1.0;
    const double xa = static_cast<double>(i0 + a);
    for (int b = 0; b < 4; ++b) {
      if (b != a) v *= (x - static_cast<double>(i0 + b)) / (xa - static_cast<double>(i0 + b));
    }
    w[a] = v;
  }
  ControlPair out;
  for (int a = 0; a < 4; ++a) {
    out.g1 += w[a] * g1_[i0 + a];
    out.g2 += w[a] * g2_[i0 + a];
  }
  return out;
}

double ControlSet::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < samples(); ++i) m = std::max({m, std::abs(g1_[i]), std::abs(g2_[i])});
  return m;
}

ControlSet ControlSet::scaled(double factor) const {
  return mapped([factor](const ControlPair& v) { return ControlPair{factor * v.g1, factor * v.g2}; });
}

ControlSet ControlSet::mapped(const std::function<ControlPair(const ControlPair&)>& f) const {
  std::vector<double> g1(samples()), g2(samples());
  for (std::size_t i = 0; i < samples(); ++i) {
    const auto v = f({g1_[i], g2_[i]});
    g1[i] = v.g1;
    g2[i] = v.g2;
  }
  return ControlSet(std::move(g1), std::move(g2), duration_);
}

}  // namespace spinsinglet
