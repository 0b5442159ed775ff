// Shared fixtures: data paths, the reference gyro trace and a solver runner.
#pragma once

#include "hls/parser.hpp"
#include "hls/smt.hpp"
#include "hls/solver.hpp"
#include "hls/trace.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#ifndef HLS_TEST_DATA_DIR
#error "HLS_TEST_DATA_DIR must point at tests/data"
#endif
#ifndef HLS_TEST_SOLVER
#define HLS_TEST_SOLVER "z3"
#endif

namespace hls::testing {

inline std::string data_path(const std::string& name) { return std::string(HLS_TEST_DATA_DIR) + "/" + name; }

inline std::string solver_cmd() { return HLS_TEST_SOLVER; }

inline Trace gyro() { return load_trace_file(data_path("gyro.csv")); }

inline Trace trace_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  return load_trace(in);
}

inline std::set<SignalName> signature_of(const Trace& t) { return {t.signals().begin(), t.signals().end()}; }

inline FormulaPtr parse_for(const Trace& t, const std::string& text) { return parse(text, signature_of(t)); }

inline FormulaPtr r1() {
  return parse_property(read_text_file(data_path("r1.hls")), {}).formula;
}

inline std::string scratch_dir() {
  static const std::string dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("hls-tests-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d.string();
  }();
  return dir;
}

inline std::string scratch_file(const std::string& stem, const std::string& ext) {
  static std::atomic<unsigned> counter{0};
  return scratch_dir() + "/" + stem + "-" + std::to_string(counter++) + ext;
}

inline SolverOutcome solve_text(const std::string& text, double timeout_s = 60) {
  const std::string path = scratch_file("q", ".smt2");
  {
    std::ofstream out(path);
    out << text;
  }
  SolverConfig cfg;
  cfg.cmd = solver_cmd();
  cfg.timeout_s = timeout_s;
  SolverOutcome o = run_solver(path, cfg);
  std::filesystem::remove(path);
  return o;
}

inline SolverOutcome solve(const SmtScript& script, double timeout_s = 60) { return solve_text(emit(script), timeout_s); }

}  // namespace hls::testing
