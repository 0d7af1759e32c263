#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "aluthge/cli.hpp"
#include "aluthge/closed_forms.hpp"
#include "aluthge/config.hpp"
#include "aluthge/errors.hpp"
#include "aluthge/harness.hpp"
#include "aluthge/matrix_engine.hpp"
#include "aluthge/wlft.hpp"

namespace py = pybind11;
using namespace aluthge;

namespace {

py::tuple matrix_tuple(const Mobius2& m) { return py::make_tuple(m.a, m.b, m.c, m.d); }

WeightedLFT element(double a, double alpha, std::size_t n, bool dual) {
  const PaperScenario sc{a, alpha, n};
  return dual ? adjoint_iterate_symbols(sc) : iterate_symbols(sc);
}

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"aluthge"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : full) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

std::string verify(const std::string& config_text, unsigned threads) {
  ExperimentConfig cfg;
  apply_config_text(cfg, config_text);
  Report report;
  {
    py::gil_scoped_release release;
    report = run_all(cfg, threads);
  }
  return dump_json(report_json(report));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<WeightedLFT>(m, "WeightedLFT")
      .def_property_readonly("alpha", [](const WeightedLFT& w) { return w.space().alpha(); })
      .def_property_readonly("lam", &WeightedLFT::lambda)
      .def_property_readonly("disk", [](const WeightedLFT& w) { return matrix_tuple(w.disk_matrix()); })
      .def("weight", &WeightedLFT::weight, py::arg("z"))
      .def("map", &WeightedLFT::map, py::arg("z"))
      .def("adjoint", [](const WeightedLFT& w) { return adjoint(w); })
      .def("aluthge", [](const WeightedLFT& w) { return aluthge_step(w); })
      .def("__matmul__", [](const WeightedLFT& x, const WeightedLFT& y) { return compose(x, y); })
      .def("distance", [](const WeightedLFT& x, const WeightedLFT& y) { return distance(x, y); })
      .def("truncate", [](const WeightedLFT& w, std::size_t N) { return truncate(w, N).entries; }, py::arg("N"))
      .def("kernel_norm_sq", [](const WeightedLFT& w, cplx omega) { return adjoint_kernel_norm_sq(adjoint(w), omega); },
           py::arg("omega"), "Squared norm of the operator applied to the reproducing kernel at omega.");

  m.def("c_phi", [](double a, double alpha) { return c_phi({a, alpha, 0}); }, py::arg("a"), py::arg("alpha"));
  m.def("iterate", &element, py::arg("a"), py::arg("alpha"), py::arg("n"), py::arg("dual") = false,
        "Closed-form n-th Aluthge iterate of C_phi, or of its adjoint when dual is set.");
  m.def("norm_value", [](double a, double alpha) { return norm_value({a, alpha, 0}); }, py::arg("a"),
        py::arg("alpha"));
  m.def("operator_norm", &operator_norm, py::arg("matrix"));
  m.def("numerical_radius", &numerical_radius, py::arg("matrix"), py::arg("angles") = 256);
  m.def("aluthge_numeric",
        [](const Eigen::MatrixXcd& A, double cutoff) {
          return aluthge_numeric(TruncatedOperator{{}, A}, cutoff).entries;
        },
        py::arg("matrix"), py::arg("cutoff") = 1e-12);
  m.def("sot_curve",
        [](double a, double alpha, cplx omega, std::size_t n_max) {
          std::vector<double> out;
          for (const auto& r : sot_decay_curve({{a}, {alpha}, {omega}, n_max, 0})) out.push_back(r.exact_norm_sq);
          return out;
        },
        py::arg("a"), py::arg("alpha"), py::arg("omega"), py::arg("n_max") = 30,
        "Squared norms of the iterates applied to the kernel at omega, n = 0..n_max.");
  m.def("verify", &verify, py::arg("config") = "", py::arg("threads") = 0,
        "Runs the experiment harness on a config text and returns the report as JSON text.");
  m.def("cli", &cli, py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
  m.attr("__version__") = ALUTHGE_VERSION;
}
