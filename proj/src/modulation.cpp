#include "spinsinglet/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinsinglet/parallel.hpp"

namespace spinsinglet {

namespace {
constexpr double kSingularUpsilon = 1e-6;
}

bool ModulationParams::integer_kappa() const { return std::abs(kappa - std::round(kappa)) < 1e-9; }

void ModulationParams::validate() const {
  if (!(kappa >= 1.0)) throw std::invalid_argument("kappa must be at least 1");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("duration must be positive");
}

double bessel_j(int m, double x) {
  if (m < 0) return (m % 2 == 0 ? 1.0 : -1.0) * bessel_j(-m, x);
  if (x < 0.0) return (m % 2 == 0 ? 1.0 : -1.0) * bessel_j(m, -x);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;

  const long double half = 0.5L * static_cast<long double>(x);
  long double term = 1.0L;
  for (int k = 1; k <= m; ++k) term *= half / k;  // (x/2)^m / m!
  long double sum = term;
  long double largest = std::abs(term);
  const long double q = -half * half;
  // Past k ~ x/2 the terms shrink monotonically; stop once they fall below
  // round-off of the largest term, which bounds the attainable accuracy.
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * static_cast<long double>(k + m));
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (k > half && std::abs(term) <= 1e-17L * largest) break;
  }
  return static_cast<double>(sum);
}

double upsilon(double eta) {
  return std::sqrt(2.0) * (bessel_j(1, 2.0 * eta) * bessel_j(3, eta) - bessel_j(3, 2.0 * eta) * bessel_j(1, eta));
}

ControlPair effective_from_bar(const ControlPair& gbar, double eta) {
  return {bessel_j(1, 2.0 * eta) * gbar.g1 + bessel_j(3, 2.0 * eta) * gbar.g2,
          std::sqrt(2.0) * (bessel_j(1, eta) * gbar.g1 + bessel_j(3, eta) * gbar.g2)};
}

ControlPair invert_controls(const ControlPair& gtilde, double eta) {
  const double u = upsilon(eta);
  if (!(std::abs(u) > kSingularUpsilon)) {
    throw SingularInversionError("upsilon(" + std::to_string(eta) + ") = " + std::to_string(u) +
                                 " is too small to invert the modulated controls");
  }
  const double s2 = std::sqrt(2.0);
  return {(s2 * bessel_j(3, eta) * gtilde.g1 - bessel_j(3, 2.0 * eta) * gtilde.g2) / u,
          (bessel_j(1, 2.0 * eta) * gtilde.g2 - s2 * bessel_j(1, eta) * gtilde.g1) / u};
}

ControlSet invert_controls(const ControlSet& gtilde, double eta) {
  invert_controls(ControlPair{}, eta);  // singularity check up front
  return gtilde.mapped([eta](const ControlPair& v) { return invert_controls(v, eta); });
}

double modulated_g(double t, double gbar1, double gbar2, double omega) {
  return (gbar1 * std::sin(omega * t) + gbar2 * std::sin(3.0 * omega * t)) / std::sqrt(3.0);
}

PulseProgram modulated_program(const ControlSet& gtilde, const ModulationParams& params) {
  params.validate();
  if (!params.integer_kappa()) {
    throw std::invalid_argument("pulse synthesis needs an integer number of modulation periods");
  }
  if (std::abs(gtilde.duration() - params.T) > 1e-12 * params.T) {
    throw std::invalid_argument("control duration does not match the modulation duration");
  }
  return PulseProgram::modulated(invert_controls(gtilde, params.eta), params.j0(), params.omega());
}

KappaEtaScan scan_kappa_eta(const std::vector<double>& kappas, const std::vector<double>& etas,
                            const PathParams& path, unsigned workers, std::size_t steps_per_period) {
  if (kappas.empty() || etas.empty()) throw std::invalid_argument("empty scan grid");
  const ControlSet gtilde = ControlSet::from_path(path);
  KappaEtaScan out{kappas, etas, {}, {}, {}};
  const std::size_t cells = kappas.size() * etas.size();

  struct Cell {
    double fidelity = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
    std::string status;
  };
  const auto results = parallel_map<Cell>(cells, workers, [&](std::size_t idx) {
    const ModulationParams p{etas[idx % etas.size()], kappas[idx / etas.size()], path.T};
    Cell c;
    try {
      p.validate();
      const auto program = PulseProgram::modulated(invert_controls(gtilde, p.eta), p.j0(), p.omega());
      const auto steps = static_cast<std::size_t>(std::ceil(steps_per_period * p.kappa - 1e-9));
      c.fidelity = simulate_rotating(program, steps).final_fidelity;
      c.valid = true;
      c.status = "ok";
    } catch (const SingularInversionError&) {
      c.status = "singular";
    } catch (const NumericalQualityError&) {
      c.status = "drift";
    } catch (const std::exception&) {
      c.status = "error";
    }
    return c;
  });
  for (const auto& c : results) {
    out.fidelity.push_back(c.fidelity);
    out.valid.push_back(c.valid);
    out.status.push_back(c.status);
  }
  return out;
}

}  // namespace spinsinglet
