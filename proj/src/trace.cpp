#include "hls/trace.hpp"

#include "hls/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace hls {

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::io: return "io";
    case Stage::trace: return "trace";
    case Stage::property: return "property";
    case Stage::signature: return "signature";
    case Stage::preprocess: return "preprocess";
    case Stage::translate: return "translate";
    case Stage::solver: return "solver";
    case Stage::domain: return "domain";
  }
  return "unknown";
}

Trace::Trace(std::vector<SignalName> signals, std::vector<Record> records)
    : signals_(std::move(signals)), records_(std::move(records)) {
  if (records_.empty()) throw Error(Stage::trace, "empty trace");
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    if (signals_[i].empty()) throw Error(Stage::trace, "empty signal name in column " + std::to_string(i + 1));
    if (!slots_.emplace(signals_[i], i).second)
      throw Error(Stage::trace, "duplicate signal '" + signals_[i] + "'");
  }
  for (std::size_t j = 0; j < records_.size(); ++j) {
    Record& r = records_[j];
    r.index = j;
    if (r.values.size() != signals_.size())
      throw Error(Stage::trace, "record " + std::to_string(j) + " has " + std::to_string(r.values.size()) +
                                    " values, expected " + std::to_string(signals_.size()));
    if (j > 0 && !(records_[j - 1].timestamp < r.timestamp))
      throw Error(Stage::trace, "non-monotonic timestamp at row " + std::to_string(j + 1));
  }
  rate_ = classify_rate(*this);
}

std::optional<std::size_t> Trace::signal_slot(std::string_view name) const {
  auto it = slots_.find(std::string(name));
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

bool Trace::is_total() const {
  return std::all_of(records_.begin(), records_.end(), [](const Record& r) {
    return std::all_of(r.values.begin(), r.values.end(), [](const auto& v) { return v.has_value(); });
  });
}

std::uint64_t Trace::digest() const {
  std::ostringstream os;
  write_trace(os, *this);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

Trace load_trace(std::istream& in, TraceFormat /*format*/) {
  std::string line;
  // Skip a UTF-8 byte-order mark and leading blank lines.
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw Error(Stage::trace, "missing header");
  if (header.front() != "timestamp") throw Error(Stage::trace, "first column must be 'timestamp'");

  std::optional<std::size_t> index_col;
  std::vector<SignalName> signals;
  std::vector<std::size_t> signal_cols;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c] == "index") {
      if (index_col) throw Error(Stage::trace, "duplicate 'index' column");
      index_col = c;
    } else {
      signals.push_back(header[c]);
      signal_cols.push_back(c);
    }
  }

  std::vector<Record> records;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    auto cells = split_csv_line(line);
    const std::string where = " at row " + std::to_string(row);
    if (cells.size() != header.size())
      throw Error(Stage::trace, "expected " + std::to_string(header.size()) + " cells, found " +
                                    std::to_string(cells.size()) + where);
    Record r;
    r.index = row - 1;
    auto ts = parse_decimal(cells[0]);
    if (!ts) throw Error(Stage::trace, "malformed timestamp '" + cells[0] + "'" + where);
    r.timestamp = *ts;
    if (!records.empty() && !(records.back().timestamp < r.timestamp))
      throw Error(Stage::trace, "non-monotonic timestamp" + where);
    if (index_col) {
      auto idx = parse_decimal(cells[*index_col]);
      if (!idx || !is_integer(*idx) || *idx != Real(static_cast<long>(row - 1)))
        throw Error(Stage::trace, "duplicate or out-of-order index '" + cells[*index_col] + "'" + where);
    }
    r.values.reserve(signal_cols.size());
    for (std::size_t k = 0; k < signal_cols.size(); ++k) {
      const std::string& cell = cells[signal_cols[k]];
      if (cell.empty()) {
        r.values.emplace_back(std::nullopt);
        continue;
      }
      auto v = parse_decimal(cell);
      if (!v) throw Error(Stage::trace, "malformed numeric cell '" + cell + "' in column '" + signals[k] + "'" + where);
      r.values.emplace_back(std::move(*v));
    }
    records.push_back(std::move(r));
  }
  if (records.empty()) throw Error(Stage::trace, "empty trace");
  return Trace(std::move(signals), std::move(records));
}

Trace load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Stage::io, "cannot open trace '" + path + "'");
  return load_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << "timestamp";
  for (const auto& s : trace.signals()) out << ',' << s;
  out << '\n';
  for (const auto& r : trace.records()) {
    out << to_decimal_string(r.timestamp);
    for (const auto& v : r.values) {
      out << ',';
      if (v) out << to_decimal_string(*v);
    }
    out << '\n';
  }
}

SampleRate classify_rate(const Trace& trace, double tolerance) {
  const auto& recs = trace.records();
  if (recs.size() < 2) return VariableRate{};
  const Real first_gap = recs[1].timestamp - recs[0].timestamp;
  const Real slack = Real(tolerance) * first_gap;
  for (std::size_t j = 1; j + 1 < recs.size(); ++j) {
    Real gap = recs[j + 1].timestamp - recs[j].timestamp;
    if (abs(gap - first_gap) > slack) return VariableRate{};
  }
  return FixedRate{first_gap};
}

std::size_t iota_variable(const Trace& trace, const Real& t) {
  if (t < trace.first_time() || t > trace.last_time())
    throw Error(Stage::domain, "timestamp " + to_decimal_string(t) + " outside trace span [" +
                                   to_decimal_string(trace.first_time()) + ", " +
                                   to_decimal_string(trace.last_time()) + "]");
  const auto& recs = trace.records();
  auto it = std::upper_bound(recs.begin(), recs.end(), t,
                             [](const Real& x, const Record& r) { return x < r.timestamp; });
  return static_cast<std::size_t>(it - recs.begin()) - 1;
}

std::size_t iota_fixed(const Real& sr, const Real& t, const Real& origin) {
  if (sgn(sr) <= 0) throw Error(Stage::domain, "sample rate must be positive");
  if (t < origin) throw Error(Stage::domain, "timestamp " + to_decimal_string(t) + " precedes the grid origin");
  return static_cast<std::size_t>(floor_div(t - origin, sr).get_num().get_ui());
}

const Real& value_at(const Trace& trace, std::string_view signal, std::size_t j) {
  auto slot = trace.signal_slot(signal);
  if (!slot) throw Error(Stage::domain, "unknown signal '" + std::string(signal) + "'");
  if (j >= trace.size())
    throw Error(Stage::domain, "index " + std::to_string(j) + " outside [0, " + std::to_string(trace.last_index()) + "]");
  const auto& v = trace.records()[j].values[*slot];
  if (!v) throw Error(Stage::domain, "signal '" + std::string(signal) + "' unassigned at index " + std::to_string(j));
  return *v;
}

}  // namespace hls
