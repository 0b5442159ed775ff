// Running an external SMT solver on an emitted script.

#pragma once

#include "hls/config.hpp"
#include "hls/verdict.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hls {

struct SolverConfig {
  /// Executable plus fixed arguments, whitespace separated; the script path
  /// is appended.
  std::string cmd = "z3";
  double timeout_s = 3600;
  /// Address-space limit for the solver process; 0 disables it.
  std::uint64_t mem_mb = 4096;
};

struct SolverOutcome {
  enum class Kind { sat, unsat, unknown, timeout, resource_error };
  enum class Resource { none, max_depth, out_of_memory, other };

  Kind kind = Kind::resource_error;
  Resource resource = Resource::none;
  std::string detail;
  double wall_s = 0;
  std::uint64_t stderr_digest = 0;
  /// Solver output after the status line (the model, on sat).
  std::string model;
};

const char* to_string(SolverOutcome::Kind kind);
const char* to_string(SolverOutcome::Resource resource);
/// "sat", "timeout", "resource-error(out-of-memory)", ...
std::string describe(const SolverOutcome& outcome);

/// Classifies captured solver output. `exit_code` is the process status
/// (negative for a signal).
SolverOutcome parse_solver_output(const std::string& out, const std::string& err, int exit_code);

/// Launches the solver in its own process group under the memory limit and
/// kills the whole group when the timeout expires. Throws Error(Stage::solver)
/// if the executable cannot be found.
SolverOutcome run_solver(const std::string& script_path, const SolverConfig& config);

/// Unsat -> satisfied, sat -> violated, unknown -> unknown, anything else ->
/// inconclusive with the outcome as reason.
Verdict verdict(const SolverOutcome& outcome);

/// Reads `solver.cmd`, `solver.timeout_s` and `solver.mem_mb` over `base`.
SolverConfig solver_config_from(const KeyValues& kv, SolverConfig base = {});

}  // namespace hls
