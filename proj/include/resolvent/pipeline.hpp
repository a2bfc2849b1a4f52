#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "resolvent/homology.hpp"
#include "resolvent/instance.hpp"

namespace resolvent {

enum ExitCode : int { kPass = 0, kInputError = 2, kConstructionFailure = 3, kVerificationFailure = 4 };

struct RunConfig {
  std::string command;  // validate | build | verify | homology
  std::string instance_path;
  std::optional<std::pair<int, int>> window;
  std::optional<int> degree_max;
  std::optional<std::int64_t> prime;
  std::optional<std::string> module;  // generators of J' beyond the ideal of R
  std::string out;
  bool json = false;
  bool timings = false;
  int verbosity = 0;
  unsigned threads = 0;  // 0: RESOLVENT_THREADS or hardware concurrency
  /// Mutation hook: zero D_n and its self-duality partner D_{g-n} in T.
  std::optional<int> zero_differential;
};

/// Resolved windows: verdicts use the interior (n_min, n_max) of `request`;
/// T is built on [g-1-H, H].
struct Plan {
  DegreeWindow request;
  int H = 0;
};

/// Default window [-(g+3), 2g+4], D = 2 sum deg f + 4, each overridable.
/// Throws ValidationError("BadWindow") when the interior is empty or D is
/// below 2 max deg f.
Plan make_plan(const Instance& inst, const RunConfig& cfg);

/// Q / (f, extra) for a comma-separated generator list; an empty or absent list
/// gives R/J. Throws ParseError or ValidationError("BadModule").
QuotientPtr module_quotient(const Instance& inst, const std::optional<std::string>& spec);

struct RunResult {
  int exit_code = kPass;
  nlohmann::ordered_json report;
  std::string summary;  // human-readable lines
};

/// Loads, validates and runs one command. Never throws: failures are mapped
/// to exit codes and recorded in the report under "error".
RunResult run_command(const RunConfig& cfg);
/// Same, for an instance already in memory (instance_path is only echoed).
RunResult run_command(const RunConfig& cfg, const RawInstance& raw);

}  // namespace resolvent
