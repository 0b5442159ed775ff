// Concrete syntax of HLS properties.
//
//   exists|forall <var> [: index|time|real] [in <interval>] such that <formula>
//   <term> (< | <= | = | != | >= | >) <term>
//   not, and, or, implies            (tightest to loosest; implies is right-assoc)
//   (s @i <index term>), (s @t <time term>), i2t(<index term>), t2i(<time term>)
//   +, -, and multiplication by a constant
//
// Intervals are written [a, b], (a, b], [a, b) or (a, b); time bounds may carry
// a unit suffix `s`. Variable sorts follow the sigma/tau/rho naming convention
// (Greek or ASCII) unless annotated explicitly.

#pragma once

#include "hls/ast.hpp"
#include "hls/error.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace hls {

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_signal, unbound_variable, sort_mismatch };

  ParseError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

/// Parses and type-checks one closed formula. Signal names are resolved
/// against `signature`; names containing '-' are recognised only if declared.
FormulaPtr parse(std::string_view text, const std::set<SignalName>& signature);

struct Property {
  FormulaPtr formula;
  /// Signals from `signal <name> : real` header lines, if any were present.
  std::optional<std::set<SignalName>> declared;
};

/// Extracts `signal <name> : real` declarations from a property file.
std::optional<std::set<SignalName>> declared_signals(std::string_view text);

/// Parses a property file: declarations (if any) form the signature,
/// otherwise `fallback` does.
Property parse_property(std::string_view text, const std::set<SignalName>& fallback);

std::string read_text_file(const std::string& path);

}  // namespace hls
