// Execution traces: timestamped records of signal values, plus the two
// timestamp-to-index lookups (variable-rate bracket search and fixed-rate floor).

#pragma once

#include "hls/real.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace hls {

using SignalName = std::string;

struct Record {
  std::size_t index = 0;
  Real timestamp;
  // One slot per trace signal, in Trace::signals() order; nullopt = unassigned.
  std::vector<std::optional<Real>> values;
};

struct VariableRate {
  bool operator==(const VariableRate&) const = default;
};

struct FixedRate {
  Real sr;
  bool operator==(const FixedRate& o) const { return sr == o.sr; }
};

using SampleRate = std::variant<VariableRate, FixedRate>;

/// Relative tolerance used when classifying sample rates.
inline constexpr double kDefaultRateTolerance = 1e-9;

/// Immutable after construction. The constructor re-indexes records from 0
/// and rejects empty traces, duplicate signals and non-increasing timestamps.
class Trace {
 public:
  Trace(std::vector<SignalName> signals, std::vector<Record> records);

  const std::vector<SignalName>& signals() const { return signals_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  /// Largest index m.
  std::size_t last_index() const { return records_.size() - 1; }
  const Real& timestamp(std::size_t j) const { return records_.at(j).timestamp; }
  const Real& first_time() const { return records_.front().timestamp; }
  const Real& last_time() const { return records_.back().timestamp; }

  std::optional<std::size_t> signal_slot(std::string_view name) const;
  bool has_signal(std::string_view name) const { return signal_slot(name).has_value(); }

  /// True when every signal is assigned in every record.
  bool is_total() const;

  /// Rate classified with kDefaultRateTolerance at construction.
  const SampleRate& rate() const { return rate_; }

  /// FNV-1a digest of the canonical CSV rendering.
  std::uint64_t digest() const;

 private:
  std::vector<SignalName> signals_;
  std::vector<Record> records_;
  std::unordered_map<std::string, std::size_t> slots_;
  SampleRate rate_;
};

enum class TraceFormat { csv };

Trace load_trace(std::istream& in, TraceFormat format = TraceFormat::csv);
Trace load_trace_file(const std::string& path);

/// Writes the CSV interchange format; values are rendered as exact decimals.
void write_trace(std::ostream& out, const Trace& trace);

/// Fixed(sr) iff every gap equals the first gap within `tolerance * first gap`.
/// Single-record traces are Variable.
SampleRate classify_rate(const Trace& trace, double tolerance = kDefaultRateTolerance);

/// Index of the record with the greatest timestamp <= t. Throws a domain
/// error outside [t_0, t_m].
std::size_t iota_variable(const Trace& trace, const Real& t);

/// floor((t - origin) / sr). Throws a domain error for sr <= 0 or t < origin.
std::size_t iota_fixed(const Real& sr, const Real& t, const Real& origin = Real(0));

/// pi[j].s; throws on out-of-range index, unknown signal or unassigned cell.
const Real& value_at(const Trace& trace, std::string_view signal, std::size_t j);

}  // namespace hls
