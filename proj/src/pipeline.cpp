#include "hls/pipeline.hpp"

#include "hls/config.hpp"
#include "hls/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace hls {

namespace fs = std::filesystem;

IotaChoice parse_iota_choice(const std::string& text) {
  if (text == "auto") return IotaChoice::automatic;
  if (text == "variable") return IotaChoice::variable;
  if (text == "fixed") return IotaChoice::fixed;
  throw Error(Stage::translate, "unknown iota mode '" + text + "' (expected auto, variable or fixed)");
}

void apply_config_file(CheckOptions& options, const std::string& path) {
  options.preprocess = load_preprocess_config(path);
  options.solver = solver_config_from(load_key_values(path), options.solver);
}

IotaMode choose_iota(IotaChoice choice, Strategy strategy, const Trace& preprocessed) {
  switch (choice) {
    case IotaChoice::variable: return IotaVariable{};
    case IotaChoice::fixed: return fixed_mode_for(preprocessed);
    case IotaChoice::automatic: break;
  }
  if (strategy == Strategy::a1) return IotaVariable{};
  return fixed_mode_for(preprocessed);
}

namespace {

std::string join_names(const NameMap& names) {
  std::string out;
  for (const auto& [signal, id] : names) out += (out.empty() ? "" : ";") + signal + "=" + id;
  return out;
}

std::string file_stem_for(const std::string& id) {
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out.empty() ? std::string("check") : out;
}

}  // namespace

Prepared prepare(const Trace& raw, const Property& property, const CheckOptions& options) {
  Trace filtered = filter_unused(raw, signals_used(*property.formula));
  Trace pre = preprocess(filtered, options.preprocess);
  IotaMode mode = choose_iota(options.iota, options.preprocess.strategy, pre);
  SmtScript script = build_check_script(pre, *property.formula, mode, options.translate);
  script.request_model = true;
  Prepared out{std::move(pre), property.formula, mode, raw.size(), filtered.size(), {}, emit(script)};
  out.names = signal_name_map(out.trace);
  return out;
}

Prepared prepare_files(const std::string& trace_path, const std::string& property_path, const CheckOptions& options) {
  Trace raw = load_trace_file(trace_path);
  std::set<SignalName> signature(raw.signals().begin(), raw.signals().end());
  Property property = parse_property(read_text_file(property_path), signature);
  return prepare(raw, property, options);
}

std::string write_artifact(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir.empty() ? "." : dir, ec);
  const std::string path = (fs::path(dir.empty() ? "." : dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Stage::io, "cannot write '" + path + "'");
  return path;
}

CheckResult run_check(const std::string& id, const std::string& trace_path, const std::string& property_path,
                      const CheckOptions& options, int repeat) {
  CheckResult r;
  r.id = id;
  for (int run = 0; run < std::max(1, repeat); ++run) {
    const auto start = std::chrono::steady_clock::now();
    try {
      Prepared p = prepare_files(trace_path, property_path, options);
      std::string path = write_artifact(options.out_dir, file_stem_for(id) + ".smt2", p.script_text);
      SolverOutcome outcome = run_solver(path, options.solver);
      if (run == 0) {
        r.raw_records = p.raw_records;
        r.filtered_records = p.filtered_records;
        r.preprocessed_records = p.trace.size();
        r.iota = to_string(p.mode);
        r.script_path = path;
        r.signal_map = join_names(p.names);
        r.verdict = verdict(outcome);
        r.outcome = outcome;
        if (options.oracle) {
          r.oracle = check_direct(p.trace, *p.formula, TimeDomain::dense);
          r.oracle_sampled = check_direct(p.trace, *p.formula, TimeDomain::sampled);
        }
      }
    } catch (const Error& e) {
      r.failed_stage = e.stage();
      r.error = e.what();
      r.verdict = Verdict::inconclusive(std::string(to_string(e.stage())) + "-error");
      r.wall_s.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      break;
    }
    r.wall_s.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return r;
}

bool oracle_disagrees(const CheckResult& r) {
  return r.oracle && r.oracle->definitive() && r.verdict.definitive() && r.oracle->kind != r.verdict.kind;
}

int exit_code(Stage stage) {
  switch (stage) {
    case Stage::io: return 3;
    case Stage::trace: return 4;
    case Stage::property: return 4;
    case Stage::signature: return 5;
    case Stage::preprocess: return 6;
    case Stage::translate: return 7;
    case Stage::solver: return 8;
    case Stage::domain: return 9;
  }
  return 1;
}

int exit_code(const CheckResult& r) {
  if (r.failed_stage) return exit_code(*r.failed_stage);
  if (oracle_disagrees(r)) return kExitOracleMismatch;
  switch (r.verdict.kind) {
    case Verdict::Kind::satisfied: return kExitSatisfied;
    case Verdict::Kind::violated: return kExitViolated;
    case Verdict::Kind::unknown: return kExitUnknown;
    case Verdict::Kind::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<long long> as_integer(const std::string& s) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return std::stoll(s);
}

bool id_less(const std::string& a, const std::string& b) {
  auto x = as_integer(a), y = as_integer(b);
  if (x && y) return *x < *y || (*x == *y && a < b);
  return a < b;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::string& base_dir) {
  std::vector<ManifestEntry> out;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  bool header = false;
  auto resolve = [&](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base_dir) / p).lexically_normal().string();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split_commas(t);
    if (!header) {
      if (cells != std::vector<std::string>{"id", "trace", "property", "strategy", "config"})
        throw Error(Stage::io, "manifest line " + std::to_string(line_no) +
                                   ": expected header 'id,trace,property,strategy,config'");
      header = true;
      continue;
    }
    if (cells.size() == 4) cells.emplace_back();
    if (cells.size() != 5)
      throw Error(Stage::io, "manifest line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                 std::to_string(cells.size()));
    ManifestEntry e;
    e.id = cells[0];
    if (e.id.empty()) throw Error(Stage::io, "manifest line " + std::to_string(line_no) + ": empty id");
    if (!ids.insert(e.id).second)
      throw Error(Stage::io, "manifest line " + std::to_string(line_no) + ": duplicate id '" + e.id + "'");
    e.trace = resolve(cells[1]);
    e.property = resolve(cells[2]);
    if (!cells[3].empty()) {
      try {
        e.strategy = parse_strategy(cells[3]);
      } catch (const Error& err) {
        throw Error(Stage::io, "manifest line " + std::to_string(line_no) + ": " + err.what());
      }
    }
    e.config = resolve(cells[4]);
    out.push_back(std::move(e));
  }
  if (!header) throw Error(Stage::io, "manifest has no header");
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Stage::io, "cannot open manifest '" + path + "'");
  return parse_manifest(in, fs::path(path).parent_path().string());
}

std::vector<CheckResult> run_batch(const std::vector<ManifestEntry>& entries, const CheckOptions& options,
                                   unsigned jobs, int repeat) {
  std::vector<CheckResult> rows(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < entries.size();) {
      const ManifestEntry& e = entries[k];
      CheckOptions opts = options;
      try {
        if (!e.config.empty()) apply_config_file(opts, e.config);
      } catch (const Error& err) {
        CheckResult r;
        r.id = e.id;
        r.failed_stage = err.stage();
        r.error = err.what();
        r.verdict = Verdict::inconclusive(std::string(to_string(err.stage())) + "-error");
        r.wall_s.push_back(0);
        rows[k] = std::move(r);
        continue;
      }
      if (e.strategy) opts.preprocess.strategy = *e.strategy;
      rows[k] = run_check(e.id, e.trace, e.property, opts, repeat);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::stable_sort(rows.begin(), rows.end(), [](const CheckResult& a, const CheckResult& b) { return id_less(a.id, b.id); });
  return rows;
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "jsonl") return ReportFormat::jsonl;
  throw Error(Stage::io, "unknown report format '" + text + "' (expected csv or jsonl)");
}

WallStats wall_stats(const std::vector<double>& samples) {
  WallStats s;
  if (samples.empty()) return s;
  s.min = *std::min_element(samples.begin(), samples.end());
  s.max = *std::max_element(samples.begin(), samples.end());
  double sum = 0;
  for (double x : samples) sum += x;
  s.avg = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double sq = 0;
    for (double x : samples) sq += (x - s.avg) * (x - s.avg);
    s.sd = std::sqrt(sq / static_cast<double>(samples.size() - 1));
  }
  return s;
}

namespace {

std::string seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string verdict_name(const Verdict& v) { return to_string(v.kind); }

}  // namespace

void write_report(std::ostream& out, const std::vector<CheckResult>& rows, ReportFormat format, bool with_stats) {
  if (format == ReportFormat::csv) {
    out << "id,verdict,reason,outcome,wall_s,records_raw,records_filtered,records_preprocessed,iota,script,"
           "signal_map,oracle,oracle_sampled,error";
    if (with_stats) out << ",wall_avg_s,wall_min_s,wall_max_s,wall_sd_s";
    out << "\n";
    for (const auto& r : rows) {
      std::vector<std::string> f = {r.id,
                                    verdict_name(r.verdict),
                                    r.verdict.reason,
                                    r.outcome ? describe(*r.outcome) : "",
                                    seconds(r.wall_s.empty() ? 0 : r.wall_s.front()),
                                    std::to_string(r.raw_records),
                                    std::to_string(r.filtered_records),
                                    std::to_string(r.preprocessed_records),
                                    r.iota,
                                    r.script_path,
                                    r.signal_map,
                                    r.oracle ? to_string(*r.oracle) : "",
                                    r.oracle_sampled ? to_string(*r.oracle_sampled) : "",
                                    r.error};
      if (with_stats) {
        WallStats s = wall_stats(r.wall_s);
        for (double x : {s.avg, s.min, s.max, s.sd}) f.push_back(seconds(x));
      }
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
      out << "\n";
    }
    return;
  }

  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["verdict"] = verdict_name(r.verdict);
    j["reason"] = r.verdict.reason;
    j["outcome"] = r.outcome ? describe(*r.outcome) : "";
    j["wall_s"] = std::stod(seconds(r.wall_s.empty() ? 0 : r.wall_s.front()));
    j["records_raw"] = r.raw_records;
    j["records_filtered"] = r.filtered_records;
    j["records_preprocessed"] = r.preprocessed_records;
    j["iota"] = r.iota;
    j["script"] = r.script_path;
    j["signal_map"] = r.signal_map;
    j["oracle"] = r.oracle ? to_string(*r.oracle) : "";
    j["oracle_sampled"] = r.oracle_sampled ? to_string(*r.oracle_sampled) : "";
    j["error"] = r.error;
    if (r.outcome) {
      j["solver_detail"] = r.outcome->detail;
      j["model"] = r.outcome->model;
    }
    if (with_stats) {
      WallStats s = wall_stats(r.wall_s);
      j["wall_avg_s"] = std::stod(seconds(s.avg));
      j["wall_min_s"] = std::stod(seconds(s.min));
      j["wall_max_s"] = std::stod(seconds(s.max));
      j["wall_sd_s"] = std::stod(seconds(s.sd));
    }
    out << j.dump() << "\n";
  }
}

}  // namespace hls
