// End-to-end checking: load, filter, preprocess, translate, solve, report.

#pragma once

#include "hls/parser.hpp"
#include "hls/preprocess.hpp"
#include "hls/semantics.hpp"
#include "hls/smt.hpp"
#include "hls/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hls {

enum class IotaChoice { automatic, variable, fixed };

IotaChoice parse_iota_choice(const std::string& text);

struct CheckOptions {
  PreprocessConfig preprocess;
  IotaChoice iota = IotaChoice::automatic;
  TranslateOptions translate;
  SolverConfig solver;
  /// Cross-check with the direct evaluator on the preprocessed trace.
  bool oracle = false;
  /// Directory receiving the .smt2 artifacts.
  std::string out_dir = ".";
};

/// Applies a key-value config file (preprocessing keys and solver.*).
void apply_config_file(CheckOptions& options, const std::string& path);

/// Everything up to (and including) the emitted script.
struct Prepared {
  Trace trace;
  FormulaPtr formula;
  IotaMode mode;
  std::size_t raw_records = 0;
  std::size_t filtered_records = 0;
  NameMap names;
  std::string script_text;
};

/// A1 -> variable rate, A2 -> fixed rate unless overridden.
IotaMode choose_iota(IotaChoice choice, Strategy strategy, const Trace& preprocessed);

Prepared prepare(const Trace& raw, const Property& property, const CheckOptions& options);
Prepared prepare_files(const std::string& trace_path, const std::string& property_path, const CheckOptions& options);

/// Writes `text` to `dir/name`, creating `dir`; returns the path.
std::string write_artifact(const std::string& dir, const std::string& name, const std::string& text);

struct CheckResult {
  std::string id;
  Verdict verdict = Verdict::inconclusive("not run");
  std::optional<SolverOutcome> outcome;
  /// End-to-end wall time of each run, in seconds.
  std::vector<double> wall_s;
  std::size_t raw_records = 0;
  std::size_t filtered_records = 0;
  std::size_t preprocessed_records = 0;
  std::string iota;
  std::string script_path;
  std::string signal_map;
  std::optional<Verdict> oracle;
  std::optional<Verdict> oracle_sampled;
  /// Stage of the error that stopped the pipeline, if any.
  std::optional<Stage> failed_stage;
  std::string error;
};

/// Runs the whole pipeline `repeat` times; errors are captured in the result.
/// The verdict and artifacts are those of the first run.
CheckResult run_check(const std::string& id, const std::string& trace_path, const std::string& property_path,
                      const CheckOptions& options, int repeat = 1);

/// True if the direct evaluator and the solver gave different definitive verdicts.
bool oracle_disagrees(const CheckResult& r);

// Exit codes.
inline constexpr int kExitSatisfied = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolated = 10;
inline constexpr int kExitUnknown = 20;
inline constexpr int kExitInconclusive = 30;
inline constexpr int kExitOracleMismatch = 40;

int exit_code(Stage stage);
int exit_code(const CheckResult& r);

struct ManifestEntry {
  std::string id;
  std::string trace;
  std::string property;
  std::optional<Strategy> strategy;
  std::string config;
};

/// CSV with header `id,trace,property,strategy,config`. Relative paths are
/// resolved against `base_dir`. Missing files are reported when the entry runs.
std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::string& base_dir);
std::vector<ManifestEntry> load_manifest(const std::string& path);

/// Runs every entry with at most `jobs` concurrent checks. Rows are ordered by
/// id (numerically when both ids are integers).
std::vector<CheckResult> run_batch(const std::vector<ManifestEntry>& entries, const CheckOptions& options,
                                   unsigned jobs, int repeat = 1);

enum class ReportFormat { csv, jsonl };

ReportFormat parse_report_format(const std::string& text);

struct WallStats {
  double avg = 0, min = 0, max = 0, sd = 0;
};

/// Sample standard deviation; 0 for a single run.
WallStats wall_stats(const std::vector<double>& samples);

void write_report(std::ostream& out, const std::vector<CheckResult>& rows, ReportFormat format, bool with_stats);

}  // namespace hls
