// hlscheck: offline checking of HLS properties over CSV traces.

#include "hls/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

struct Flags {
  std::string strategy;
  std::string interpolation;
  std::string iota = "auto";
  std::string solver;
  double timeout_s = -1;
  long long mem_mb = -1;
  std::size_t iota_cap = hls::kDefaultExpansionCap;
  std::string config;
  std::string out_dir = "hlscheck-out";
  bool oracle = false;
  int repeat = 1;
  std::string report;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--strategy", f.strategy, "Preprocessing strategy: A1 (fill in place) or A2 (fixed-rate resampling)")
      ->check(CLI::IsMember({"A1", "A2", "a1", "a2"}));
  cmd->add_option("--interpolation", f.interpolation, "Default interpolation: constant, linear or cubic")
      ->check(CLI::IsMember({"constant", "linear", "cubic"}));
  cmd->add_option("--iota", f.iota, "Timestamp lookup encoding: auto, variable or fixed")
      ->check(CLI::IsMember({"auto", "variable", "fixed"}));
  cmd->add_option("--iota-cap", f.iota_cap, "Largest trace for the variable-rate lookup chain");
  cmd->add_option("--config", f.config, "Key-value config (interpolation kinds, solver.*)");
  cmd->add_option("--out", f.out_dir, "Directory for generated artifacts");
}

void add_solver(CLI::App* cmd, Flags& f) {
  cmd->add_option("--solver", f.solver, "Solver command; the script path is appended");
  cmd->add_option("--timeout", f.timeout_s, "Solver timeout in seconds (default 3600)");
  cmd->add_option("--mem", f.mem_mb, "Solver memory limit in MB, 0 for none (default 4096)");
  cmd->add_flag("--oracle", f.oracle, "Cross-check with the direct evaluator");
  cmd->add_option("--repeat", f.repeat, "Run each check N times and report timing statistics")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--report", f.report, "Report format: csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
}

hls::CheckOptions options_from(const Flags& f) {
  hls::CheckOptions o;
  if (!f.config.empty()) hls::apply_config_file(o, f.config);
  if (!f.strategy.empty()) o.preprocess.strategy = hls::parse_strategy(f.strategy);
  if (!f.interpolation.empty()) o.preprocess.default_kind = hls::parse_interpolation_kind(f.interpolation);
  o.iota = hls::parse_iota_choice(f.iota);
  o.translate.expansion_cap = f.iota_cap;
  if (!f.solver.empty()) o.solver.cmd = f.solver;
  if (f.timeout_s >= 0) o.solver.timeout_s = f.timeout_s;
  if (f.mem_mb >= 0) o.solver.mem_mb = static_cast<std::uint64_t>(f.mem_mb);
  o.oracle = f.oracle;
  o.out_dir = f.out_dir;
  return o;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int fail(const hls::Error& e) {
  std::cerr << "hlscheck: " << hls::to_string(e.stage()) << " error: " << e.what() << "\n";
  return hls::exit_code(e.stage());
}

int cmd_validate(const std::string& trace_path, const std::string& property_path) {
  hls::Trace trace = hls::load_trace_file(trace_path);
  std::cout << "trace: " << trace.size() << " records, " << trace.signals().size() << " signals, "
            << (trace.is_total() ? "total" : "partial") << ", ";
  if (auto f = std::get_if<hls::FixedRate>(&trace.rate()))
    std::cout << "fixed rate " << hls::to_decimal_string(f->sr) << "\n";
  else
    std::cout << "variable rate\n";
  if (property_path.empty()) return 0;
  std::set<hls::SignalName> signature(trace.signals().begin(), trace.signals().end());
  hls::Property p = hls::parse_property(hls::read_text_file(property_path), signature);
  for (const auto& s : hls::signals_used(*p.formula))
    if (!trace.has_signal(s)) throw hls::Error(hls::Stage::signature, "signal '" + s + "' not present in trace");
  std::cout << "property: " << hls::format(*p.formula) << "\n"
            << "quantifiers: " << hls::quantifier_count(*p.formula) << ", depth "
            << hls::quantifier_depth(*p.formula) << "\n";
  return 0;
}

int cmd_preprocess(const std::string& trace_path, const std::string& property_path, const std::string& output,
                   const hls::CheckOptions& o) {
  hls::Trace raw = hls::load_trace_file(trace_path);
  std::set<hls::SignalName> used(raw.signals().begin(), raw.signals().end());
  if (!property_path.empty()) {
    hls::Property p = hls::parse_property(hls::read_text_file(property_path), used);
    used = hls::signals_used(*p.formula);
  }
  hls::Trace filtered = hls::filter_unused(raw, used);
  hls::Trace pre = hls::preprocess(filtered, o.preprocess);
  if (output.empty() || output == "-") {
    hls::write_trace(std::cout, pre);
  } else {
    std::ofstream out(output);
    if (!out) throw hls::Error(hls::Stage::io, "cannot write '" + output + "'");
    hls::write_trace(out, pre);
  }
  std::cerr << "records: raw " << raw.size() << ", filtered " << filtered.size() << ", preprocessed "
            << pre.size() << "\n";
  return 0;
}

int cmd_translate(const std::string& trace_path, const std::string& property_path, const std::string& output,
                  const hls::CheckOptions& o) {
  hls::Prepared p = hls::prepare_files(trace_path, property_path, o);
  std::string path;
  if (output == "-") {
    std::cout << p.script_text;
    return 0;
  }
  if (output.empty()) {
    path = hls::write_artifact(o.out_dir, stem(trace_path) + "__" + stem(property_path) + ".smt2", p.script_text);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out || !(out << p.script_text)) throw hls::Error(hls::Stage::io, "cannot write '" + output + "'");
    path = output;
  }
  std::cout << path << "\n";
  return 0;
}

int cmd_check(const std::string& trace_path, const std::string& property_path, const hls::CheckOptions& o,
              const Flags& f) {
  hls::CheckResult r = hls::run_check(stem(trace_path) + "__" + stem(property_path), trace_path, property_path, o,
                                      f.repeat);
  if (r.failed_stage) {
    std::cerr << "hlscheck: " << hls::to_string(*r.failed_stage) << " error: " << r.error << "\n";
    return hls::exit_code(r);
  }
  if (!f.report.empty()) {
    hls::write_report(std::cout, {r}, hls::parse_report_format(f.report), f.repeat > 1);
  } else {
    std::cout << hls::to_string(r.verdict) << "\n"
              << "  outcome: " << hls::describe(*r.outcome) << " in " << r.outcome->wall_s << " s\n"
              << "  records: raw " << r.raw_records << ", filtered " << r.filtered_records << ", preprocessed "
              << r.preprocessed_records << "\n"
              << "  iota: " << r.iota << "\n"
              << "  script: " << r.script_path << "\n";
    if (r.oracle) std::cout << "  oracle: " << hls::to_string(*r.oracle) << " (sampled: " << hls::to_string(*r.oracle_sampled) << ")\n";
  }
  if (hls::oracle_disagrees(r)) std::cerr << "hlscheck: solver and direct evaluator disagree\n";
  return hls::exit_code(r);
}

int cmd_batch(const std::string& manifest, const std::string& output, unsigned jobs, const hls::CheckOptions& o,
              const Flags& f) {
  auto entries = hls::load_manifest(manifest);
  auto rows = hls::run_batch(entries, o, jobs, f.repeat);
  const auto format = hls::parse_report_format(f.report.empty() ? "csv" : f.report);
  std::string path = output;
  if (path.empty())
    path = (std::filesystem::path(o.out_dir) / (format == hls::ReportFormat::csv ? "report.csv" : "report.jsonl"))
               .string();
  if (path == "-") {
    hls::write_report(std::cout, rows, format, f.repeat > 1);
  } else {
    std::error_code ec;
    if (auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
      std::filesystem::create_directories(parent, ec);
    std::ofstream out(path);
    if (!out) throw hls::Error(hls::Stage::io, "cannot write '" + path + "'");
    hls::write_report(out, rows, format, f.repeat > 1);
    std::cout << path << "\n";
  }
  int worst = 0;
  for (const auto& r : rows) worst = std::max(worst, hls::exit_code(r));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline trace checking of HLS properties via SMT"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hls::kToolVersion);
  Flags f;
  std::string trace, property, output, manifest;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* validate = app.add_subcommand("validate", "Load a trace (and property) and report what was parsed");
  validate->add_option("trace", trace, "Trace CSV")->required();
  validate->add_option("property", property, "Property file");

  auto* pre = app.add_subcommand("preprocess", "Filter and preprocess a trace, writing CSV");
  pre->add_option("trace", trace, "Trace CSV")->required();
  pre->add_option("--property", property, "Keep only the signals this property uses");
  pre->add_option("-o,--output", output, "Output CSV (default stdout)");
  add_common(pre, f);

  auto* tr = app.add_subcommand("translate", "Emit the SMT-LIB check script");
  tr->add_option("trace", trace, "Trace CSV")->required();
  tr->add_option("property", property, "Property file")->required();
  tr->add_option("-o,--output", output, "Script path, or - for stdout");
  add_common(tr, f);

  auto* check = app.add_subcommand("check", "Check a property over a trace");
  check->add_option("trace", trace, "Trace CSV")->required();
  check->add_option("property", property, "Property file")->required();
  add_common(check, f);
  add_solver(check, f);

  auto* batch = app.add_subcommand("batch", "Run every entry of a manifest");
  batch->add_option("manifest", manifest, "CSV manifest: id,trace,property,strategy,config")->required();
  batch->add_option("-j,--jobs", jobs, "Concurrent checks")->check(CLI::PositiveNumber);
  batch->add_option("-o,--output", output, "Report path, or - for stdout (default <out>/report.csv)");
  add_common(batch, f);
  add_solver(batch, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : hls::kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(trace, property);
    const hls::CheckOptions o = options_from(f);
    if (*pre) return cmd_preprocess(trace, property, output, o);
    if (*tr) return cmd_translate(trace, property, output, o);
    if (*check) return cmd_check(trace, property, o, f);
    if (*batch) return cmd_batch(manifest, output, jobs, o, f);
  } catch (const hls::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "hlscheck: " << e.what() << "\n";
    return 1;
  }
  return hls::kExitUsage;
}
