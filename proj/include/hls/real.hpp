// Exact rational numbers for timestamps, signal values and term evaluation.
//
// Everything the checker compares is kept as an exact rational so that the
// direct evaluator and the SMT encoding (which reasons over exact reals)
// agree on every comparison, including floor(t / sr) at grid points.

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace hls {

using Real = mpq_class;

/// Parses decimal text such as "12", "-0.25", "1e-3" or "3.0E2" exactly.
/// Returns nullopt if the text is not a decimal number.
std::optional<Real> parse_decimal(std::string_view text);

/// Exact decimal rendering if the denominator has only factors 2 and 5.
std::optional<std::string> to_exact_decimal(const Real& x);

/// Decimal rendering for data files: exact when possible, otherwise rounded
/// to `digits` significant digits.
std::string to_decimal_string(const Real& x, int digits = 20);

/// SMT-LIB real literal: "1.5", "(- 2.0)", "(/ 1.0 3.0)".
std::string to_smt_real(const Real& x);

/// SMT-LIB integer literal: "3", "(- 1)". Requires an integral value.
std::string to_smt_int(const Real& x);

Real floor_div(const Real& num, const Real& den);

inline bool is_integer(const Real& x) { return x.get_den() == 1; }

inline long to_long(const Real& x) { return x.get_num().get_si(); }

}  // namespace hls
