#include <span>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hsm/experiments.hpp"
#include "hsm/spectral.hpp"
#include "hsm/surrogate.hpp"

namespace py = pybind11;

namespace {

std::string run_config(const std::string& text) {
  const auto cfg = hsm::parse_config(text);
  hsm::ExperimentReport rep;
  {
    py::gil_scoped_release release;
    rep = hsm::run_experiment(cfg);
  }
  return hsm::report_to_json(rep);
}

Eigen::VectorXd evaluate(const hsm::HsmParams& theta, const Eigen::VectorXd& x, const Eigen::VectorXd& t) {
  if (x.size() != t.size()) throw std::invalid_argument("x and t must have the same length");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double p[] = {x(i), t(i)};
    out(i) = hsm::hsm_eval(theta, p);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_hsm, m) {
  m.doc() = "Hybrid surrogate models: Chebyshev polynomial plus Heaviside jumps.";
  m.attr("SCHEMA_VERSION") = hsm::kSchemaVersion;

  py::register_exception<hsm::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "legendre_grid",
      [](int n, double a, double b) {
        const auto g = hsm::legendre_grid_1d(n, a, b);
        return py::make_tuple(g.nodes, g.weights);
      },
      py::arg("n"), py::arg("a") = -1.0, py::arg("b") = 1.0, "Gauss-Legendre nodes and weights (n + 1 points) on [a, b].");
  m.def(
      "diff_matrix",
      [](int n, double a, double b) { return hsm::diff_matrix_1d(hsm::legendre_grid_1d(n, a, b)); }, py::arg("n"),
      py::arg("a") = -1.0, py::arg("b") = 1.0, "Lagrange differentiation matrix on the degree-n Legendre grid.");
  m.def("chebyshev", &hsm::chebyshev_1d, py::arg("k"), py::arg("x"));

  m.def("validate_config", &hsm::validate_config_text, py::arg("text"),
        "Validation messages for a config document; empty when valid.");
  m.def(
      "normalize_config", [](const std::string& text) { return hsm::config_to_json(hsm::parse_config(text)); },
      py::arg("text"), "Config echo with every field filled in.");
  m.def("run_config", &run_config, py::arg("text"), "Runs an experiment and returns the report as JSON text.");

  py::class_<hsm::HsmParams>(m, "Surrogate")
      .def_static("from_json", &hsm::hsm_params_from_json, py::arg("text"))
      .def("to_json", [](const hsm::HsmParams& p) { return hsm::to_json(p); })
      .def_readonly("degrees", &hsm::HsmParams::degrees)
      .def_readonly("m", &hsm::HsmParams::m)
      .def_readonly("T", &hsm::HsmParams::T)
      .def_readonly("xi", &hsm::HsmParams::xi)
      .def_readonly("h", &hsm::HsmParams::h)
      .def("__call__", &evaluate, py::arg("x"), py::arg("t"))
      .def("shock", [](const hsm::HsmParams& p, std::size_t i, double x) { return hsm::shock_eval(p.shocks.at(i), x); },
           py::arg("i"), py::arg("x"));
}
