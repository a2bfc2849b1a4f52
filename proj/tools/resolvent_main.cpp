#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

#include "resolvent/pipeline.hpp"

using namespace resolvent;

int main(int argc, char** argv) {
  CLI::App app{"Self-dual complete resolutions of embedded complete intersections"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string window, module;
  std::int64_t prime = 0;
  int degree_max = -1, zero_diff = 0;

  for (const char* name : {"validate", "build", "verify", "homology"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("instance", cfg.instance_path, "instance JSON file")->required();
    sub->add_option("--window", window, "homological window a:b");
    sub->add_option("--degree-max", degree_max, "internal degree bound D");
    sub->add_option("--prime", prime, "override the characteristic");
    sub->add_option("--module", module, "extra generators of J' as \"g1,...,gk\"");
    sub->add_option("--out", cfg.out, "report file (artifact directory for build)");
    sub->add_flag("--json", cfg.json, "print the JSON report");
    sub->add_flag("--timings", cfg.timings, "include wall-clock timings in the report");
    sub->add_flag("-v,--verbose", cfg.verbosity, "more output");
    sub->add_option("--zero-differential", zero_diff, "testing: zero D_n and D_{g-n} of T before verifying")
        ->group("");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();

  if (!window.empty()) {
    static const std::regex re(R"(^\s*(-?\d+)\s*:\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(window, m, re)) {
      std::cerr << "error: --window expects a:b\n";
      return kInputError;
    }
    cfg.window = std::make_pair(std::stoi(m[1]), std::stoi(m[2]));
  }
  if (sub->count("--degree-max")) cfg.degree_max = degree_max;
  if (sub->count("--prime")) cfg.prime = prime;
  if (sub->count("--module")) cfg.module = module;
  if (sub->count("--zero-differential")) cfg.zero_differential = zero_diff;

  RunResult res = run_command(cfg);
  const std::string text = res.report.dump(2) + "\n";
  if (cfg.json)
    std::cout << text;
  else
    std::cout << res.summary;
  if (!cfg.out.empty() && cfg.command != "build") {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return kInputError;
    }
    os << text;
  }
  return res.exit_code;
}
