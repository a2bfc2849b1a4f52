#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "resolvent/errors.hpp"
#include "resolvent/instance.hpp"
#include "resolvent/pipeline.hpp"
#include "resolvent/random_instances.hpp"

namespace py = pybind11;
using namespace resolvent;

namespace {

std::pair<int, std::string> run(const std::string& command, const std::string& instance_json,
                                std::optional<std::pair<int, int>> window, std::optional<int> degree_max,
                                std::optional<std::int64_t> prime, std::optional<std::string> module,
                                const std::string& out, unsigned threads, bool timings) {
  RunConfig cfg;
  cfg.command = command;
  cfg.instance_path = "<python>";
  cfg.window = window;
  cfg.degree_max = degree_max;
  cfg.prime = prime;
  cfg.module = std::move(module);
  cfg.out = out;
  cfg.threads = threads;
  cfg.timings = timings;
  RunResult r;
  {
    py::gil_scoped_release release;
    try {
      r = run_command(cfg, parse_instance_json(instance_json));
    } catch (const ParseError& e) {
      r.exit_code = kInputError;
      r.report = {{"schema", 1}, {"command", command}, {"overall", "INPUT_ERROR"},
                  {"error", {{"kind", "ParseError"}, {"message", e.what()}, {"offset", e.offset()}}}};
    }
  }
  return {r.exit_code, r.report.dump()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Self-dual complete resolutions of embedded complete intersections";

  m.def("run", &run, py::arg("command"), py::arg("instance_json"), py::arg("window") = py::none(),
        py::arg("degree_max") = py::none(), py::arg("prime") = py::none(), py::arg("module") = py::none(),
        py::arg("out") = "", py::arg("threads") = 0u, py::arg("timings") = false,
        "Run validate/build/verify/homology; returns (exit_code, report JSON).");

  m.def("catalog_instance", [](int k) { return instance_to_json(catalog_instance(k)); }, py::arg("index"));
  m.def(
      "random_instance",
      [](std::uint64_t seed, const std::string& kind) {
        if (kind == "linear") return instance_to_json(random_linear_instance(seed));
        if (kind == "power") return instance_to_json(random_power_instance(seed));
        throw py::value_error("kind must be 'linear' or 'power'");
      },
      py::arg("seed"), py::arg("kind") = "linear");

  m.attr("PASS") = static_cast<int>(kPass);
  m.attr("INPUT_ERROR") = static_cast<int>(kInputError);
  m.attr("CONSTRUCTION_FAILURE") = static_cast<int>(kConstructionFailure);
  m.attr("VERIFICATION_FAILURE") = static_cast<int>(kVerificationFailure);
}
