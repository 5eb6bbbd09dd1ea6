#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <vector>

#include "spinsinglet/dynamics.hpp"
#include "spinsinglet/harness.hpp"
#include "spinsinglet/initprep.hpp"
#include "spinsinglet/invariantpath.hpp"
#include "spinsinglet/modulation.hpp"
#include "spinsinglet/optctrl.hpp"

namespace py = pybind11;
using namespace spinsinglet;

namespace {

std::vector<std::complex<double>> to_list(const ComplexVector& v) {
  std::vector<std::complex<double>> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i];
  return out;
}

py::dict sim_dict(const SimResult& r) {
  py::dict d;
  d["times"] = r.times;
  d["fidelities"] = r.fidelities;
  d["final_fidelity"] = r.final_fidelity;
  d["leakage"] = r.leakage;
  d["norm_drift"] = r.norm_drift;
  d["min_eigenvalue"] = r.min_eigenvalue;
  return d;
}

ErrorSpec error_of(const std::string& kind, double delta) {
  if (kind == "none") return ErrorSpec::none();
  if (kind == "delta_g") return ErrorSpec::drive(delta);
  if (kind == "delta_J") return ErrorSpec::coupling(delta);
  throw py::value_error("error kind must be none, delta_g or delta_J");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust three-qubit singlet generation";

  py::register_exception<NumericalQualityError>(m, "NumericalQualityError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<InvalidPathError>(m, "InvalidPathError", PyExc_ValueError);
  py::register_exception<SingularInversionError>(m, "SingularInversionError", PyExc_ValueError);

  py::class_<PathParams>(m, "PathParams")
      .def(py::init<>())
      .def_static("singlet", &PathParams::singlet, py::arg("kappa1"), py::arg("kappa2"))
      .def_static("optimized", &PathParams::optimized)
      .def_readwrite("theta0", &PathParams::theta0)
      .def_readwrite("thetaT", &PathParams::thetaT)
      .def_readwrite("beta0", &PathParams::beta0)
      .def_readwrite("betaT", &PathParams::betaT)
      .def_readwrite("kappa1", &PathParams::kappa1)
      .def_readwrite("kappa2", &PathParams::kappa2)
      .def_readwrite("T", &PathParams::T);

  m.def("theta", &theta, py::arg("t"), py::arg("path"));
  m.def("beta", &beta, py::arg("t"), py::arg("path"));
  m.def("controls", [](double t, const PathParams& p) {
    const auto g = controls_from_path(t, p);
    return py::make_tuple(g.g1, g.g2);
  }, py::arg("t"), py::arg("path"));
  m.def("phi0", [](double t, const PathParams& p) { return to_list(phi0(t, p)); }, py::arg("t"), py::arg("path"));
  m.def("max_control", [](const PathParams& p) { return ControlSet::from_path(p).max_abs(); }, py::arg("path"));

  m.def("qs", [](const PathParams& p) { return qs(p); }, py::arg("path"));
  m.def("sensitivity_exact", [](const PathParams& p) { return sensitivity_exact(p); }, py::arg("path"));

  m.def("bessel_j", &bessel_j, py::arg("m"), py::arg("x"));
  m.def("upsilon", &upsilon, py::arg("eta"));
  m.def("invert_controls", [](double g1, double g2, double eta) {
    const auto b = invert_controls(ControlPair{g1, g2}, eta);
    return py::make_tuple(b.g1, b.g2);
  }, py::arg("gtilde1"), py::arg("gtilde2"), py::arg("eta"));

  m.def("simulate_effective", [](const PathParams& p, const std::string& kind, double delta, std::size_t steps) {
    return sim_dict(simulate_effective(ControlSet::from_path(p), error_of(kind, delta), steps));
  }, py::arg("path"), py::arg("error") = "none", py::arg("delta") = 0.0, py::arg("steps") = 0);

  m.def("simulate_rotating", [](const PathParams& p, double j, const std::string& kind, double delta, std::size_t steps) {
    const auto program = PulseProgram::resonant(ControlSet::from_path(p), j);
    return sim_dict(simulate_rotating(apply_error(program, error_of(kind, delta)), steps));
  }, py::arg("path"), py::arg("J") = 300.0, py::arg("error") = "none", py::arg("delta") = 0.0, py::arg("steps") = 0);

  m.def("simulate_modulated", [](const PathParams& p, double eta, double kappa, const std::string& kind, double delta,
                                 std::size_t steps) {
    const auto program = modulated_program(ControlSet::from_path(p), ModulationParams{eta, kappa, 1.0});
    return sim_dict(simulate_rotating(apply_error(program, error_of(kind, delta)), steps));
  }, py::arg("path"), py::arg("eta") = 2.3, py::arg("kappa") = 16.0, py::arg("error") = "none", py::arg("delta") = 0.0,
        py::arg("steps") = 0);

  m.def("simulate_init", [](int target, double jy, std::size_t steps) {
    if (target < 0 || target > 2) throw py::value_error("target must be 0, 1 or 2");
    const auto t = static_cast<InitTarget>(target);
    const InitResult r = simulate_init(init_controls(init_path(t), jy), t, steps);
    return py::make_tuple(r.target_population, r.max_ket3_population);
  }, py::arg("target"), py::arg("Jy") = 300.0, py::arg("steps") = 0);

  m.def("scenarios", [] {
    std::vector<std::string> names;
    for (Scenario s : all_scenarios()) names.push_back(scenario_name(s));
    return names;
  });
  m.def("run_scenario", [](const std::string& name, const std::map<std::string, std::string>& overrides,
                           unsigned workers) {
    ConfigEntries sets(overrides.begin(), overrides.end());
    RunConfig c = resolve_config(parse_scenario(name), {}, sets);
    c.workers = workers;
    const Table t = run_scenario(c);
    py::dict d;
    d["columns"] = t.columns;
    d["rows"] = t.rows;
    d["status"] = t.status;
    d["metadata"] = t.metadata;
    return d;
  }, py::arg("scenario"), py::arg("overrides") = std::map<std::string, std::string>{}, py::arg("workers") = 1);
}
