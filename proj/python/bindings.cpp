#include <pybind11/pybind11.h>

#include "jetlc/commands.hpp"
#include "jetlc/verify.hpp"

namespace py = pybind11;

// JSON crosses the boundary as text; the Python package decodes it.
PYBIND11_MODULE(_jetlc, m) {
  m.doc() = "Exact symbolic engine for the universal Levi-Civita connection on jets of metrics";

  py::register_exception<jetlc::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<jetlc::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<jetlc::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "verify_json",
      [](const std::string& config) {
        const auto cfg = jetlc::SuiteConfig::from_json(nlohmann::json::parse(config));
        jetlc::VerifyReport report;
        {
          py::gil_scoped_release release;
          report = jetlc::run_verify(cfg);
        }
        return jetlc::to_json(report).dump();
      },
      py::arg("config"));
  m.def(
      "eval_json",
      [](const std::string& form, const std::string& point, const std::string& vectors) {
        return jetlc::eval_form(form, nlohmann::json::parse(point), nlohmann::json::parse(vectors)).dump();
      },
      py::arg("form"), py::arg("point"), py::arg("vectors"));
  m.def(
      "invariants_json",
      [](int n, const std::string& group, const std::string& space) {
        return jetlc::invariants_command(n, group, space).json.dump();
      },
      py::arg("n"), py::arg("group") = "O", py::arg("space") = "E");
}
