// Direct evaluation of HLS formulas over a trace.
//
// Evaluation is three-valued: out-of-range indices and timestamps produce an
// error value rather than false, and connectives/quantifiers combine values
// with strong Kleene rules, so a definite answer is reported only when it
// does not depend on any out-of-range cell.

#pragma once

#include "hls/ast.hpp"
#include "hls/trace.hpp"
#include "hls/verdict.hpp"

#include <map>
#include <optional>
#include <string>

namespace hls {

enum class Truth { false_, true_, error };

/// Variable assignments for time, index and real-valued variables.
struct Assignment {
  std::map<std::string, Real> time;
  std::map<std::string, long> index;
  std::map<std::string, Real> real;
};

/// How timestamp quantifiers range over their (span-clipped) interval.
enum class TimeDomain {
  /// Every real in the interval; decided exactly by enumerating the points
  /// where a lookup crosses a record timestamp (oracle fragment only).
  dense,
  /// Record timestamps inside the interval plus its closed endpoints.
  sampled,
};

/// Interval restricted to [t_0, t_m]; nullopt when the intersection is empty.
std::optional<Interval> clip_to_span(const Interval& range, const Trace& trace);

/// Interprets a term. Throws Error(Stage::domain) for out-of-range indices or
/// timestamps and for unbound variables.
Real eval_term(const Term& term, const Trace& trace, const Assignment& mu);

Truth satisfies(const Trace& trace, const Assignment& mu, const Formula& f, TimeDomain domain = TimeDomain::dense);

/// Reason `f` lies outside the fragment the dense evaluator decides exactly,
/// or nullopt if it is inside.
std::optional<std::string> oracle_fragment_violation(const Formula& f);

/// Satisfied / violated for closed formulas in the oracle fragment;
/// inconclusive on evaluation errors or formulas outside the fragment.
Verdict check_direct(const Trace& trace, const Formula& f, TimeDomain domain = TimeDomain::dense);

}  // namespace hls
