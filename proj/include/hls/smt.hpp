// Translation of traces and HLS formulas into SMT-LIB (AUFLIRA).
//
// The trace becomes an array `t` of timestamps and one array per signal; the
// formula is rewritten structurally, with timestamp-to-index lookups encoded
// either as a conditional chain over the record timestamps (variable rate) or
// as a fresh integer k with origin + k*sr <= tt < origin + (k+1)*sr (fixed rate).

#pragma once

#include "hls/ast.hpp"
#include "hls/trace.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hls {

inline constexpr const char* kToolVersion = "hlscheck 0.1.0";

struct IotaVariable {
  bool operator==(const IotaVariable&) const = default;
};

struct IotaFixed {
  Real sr;
  Real origin;
  bool operator==(const IotaFixed& o) const { return sr == o.sr && origin == o.origin; }
};

using IotaMode = std::variant<IotaVariable, IotaFixed>;

/// "variable" or "fixed(sr=..., origin=...)".
std::string to_string(const IotaMode& mode);

/// Fixed mode for a trace classified as fixed rate; throws a translate error
/// otherwise.
IotaFixed fixed_mode_for(const Trace& trace);

inline constexpr std::size_t kDefaultExpansionCap = 50000;

struct TranslateOptions {
  /// Largest trace for which the variable-rate chain is emitted.
  std::size_t expansion_cap = kDefaultExpansionCap;
};

/// Signal -> SMT array identifier, in trace signal order.
using NameMap = std::vector<std::pair<SignalName, std::string>>;

/// "v_" + name with '-' and ' ' mapped to '_'. Throws a translate error
/// (with a suggested rename) for names that stay illegal.
std::string signal_identifier(const SignalName& name);

/// Map for every signal of the trace; rejects collisions after sanitization.
NameMap signal_name_map(const Trace& trace);

struct SmtScript {
  std::string logic = "AUFLIRA";
  std::vector<std::string> comments;
  std::vector<std::string> declarations;
  std::vector<std::string> assertions;
  /// Adds produce-models and a get-model after the check.
  bool request_model = false;
};

/// Array declarations and one equality per record and array. Requires a
/// total trace.
SmtScript translate_trace(const Trace& trace);

/// Translated lookup index for the time term `tt` (already in SMT syntax).
struct IotaTerm {
  std::string expr;
  /// Fresh integer constants and their defining constraints (fixed mode).
  std::vector<std::string> fresh;
  std::vector<std::string> constraints;
};

/// `counter` numbers the fresh names and is advanced.
IotaTerm translate_iota(const IotaMode& mode, const Trace& trace, const std::string& tt, std::size_t& counter);

struct FormulaTranslation {
  std::string term;
  /// Fresh integers whose arguments are closed; declared globally.
  std::vector<std::string> global_fresh;
  std::vector<std::string> global_constraints;
};

/// Structural rewriting of a closed, typed formula. Time quantifiers range
/// over their interval intersected with [t_0, t_m] of `trace`.
FormulaTranslation translate_formula(const Formula& f, const IotaMode& mode, const Trace& trace,
                                     const TranslateOptions& options = {});

enum class Polarity { negated, plain };

/// h(not f) and t(trace) (or h(f) for Polarity::plain), with a header naming
/// the tool version, ι mode, trace digest and signal map.
SmtScript build_check_script(const Trace& trace, const Formula& f, const IotaMode& mode,
                             const TranslateOptions& options = {}, Polarity polarity = Polarity::negated);

/// Deterministic SMT-LIB 2 text ending in exactly one check-sat.
std::string emit(const SmtScript& script);

}  // namespace hls
