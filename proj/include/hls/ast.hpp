// Typed abstract syntax of HLS properties.
//
// Terms carry one of three sorts (time, index, value); formulas are built
// from relational atoms, boolean connectives and sorted quantifiers. Nodes
// are immutable and shared, so copying a formula is cheap.

#pragma once

#include "hls/real.hpp"
#include "hls/trace.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

namespace hls {

enum class Sort { time, index, value };
enum class ArithOp { add, sub, mul };
enum class RelOp { lt, le, eq, ne, ge, gt };
enum class BoolOp { and_, or_, implies };
enum class Quantifier { exists, forall };

const char* to_string(Sort sort);
const char* to_string(ArithOp op);
const char* to_string(RelOp op);
const char* to_string(BoolOp op);

/// Byte range in the source text plus the 1-based line/column of its start.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 0;
  int column = 0;
};

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
  struct Var {
    std::string name;
  };
  struct Literal {
    Real value;
    std::string text;  // source spelling; empty for synthesized literals
  };
  struct I2T {
    TermPtr index;
  };
  struct T2I {
    TermPtr time;
  };
  struct AtIndex {
    SignalName signal;
    TermPtr index;
  };
  struct AtTime {
    SignalName signal;
    TermPtr time;
  };
  /// Linear arithmetic; for `mul` at least one operand is a Literal.
  struct Arith {
    ArithOp op;
    TermPtr lhs;
    TermPtr rhs;
  };

  Sort sort;
  std::variant<Var, Literal, I2T, T2I, AtIndex, AtTime, Arith> node;
  Span span;
};

struct Bound {
  Real value;
  std::string text;
  bool open = false;
};

struct Interval {
  Bound lower;
  Bound upper;

  bool contains(const Real& x) const;
};

struct Formula {
  struct Rel {
    RelOp op;
    TermPtr lhs;
    TermPtr rhs;
  };
  struct Not {
    FormulaPtr arg;
  };
  struct Binary {
    BoolOp op;
    FormulaPtr lhs;
    FormulaPtr rhs;
  };
  /// `range` is absent exactly for value-sorted (real) quantifiers.
  struct Quant {
    Quantifier quantifier;
    Sort sort;
    std::string var;
    std::optional<Interval> range;
    FormulaPtr body;
  };

  std::variant<Rel, Not, Binary, Quant> node;
  Span span;
};

// Builders. Spans default to empty; the parser fills them in.
TermPtr make_var(Sort sort, std::string name, Span span = {});
TermPtr make_literal(Sort sort, Real value, std::string text = {}, Span span = {});
TermPtr make_i2t(TermPtr index, Span span = {});
TermPtr make_t2i(TermPtr time, Span span = {});
TermPtr make_at_index(SignalName signal, TermPtr index, Span span = {});
TermPtr make_at_time(SignalName signal, TermPtr time, Span span = {});
TermPtr make_arith(ArithOp op, TermPtr lhs, TermPtr rhs, Span span = {});

FormulaPtr make_rel(RelOp op, TermPtr lhs, TermPtr rhs, Span span = {});
FormulaPtr make_not(FormulaPtr arg, Span span = {});
FormulaPtr make_binary(BoolOp op, FormulaPtr lhs, FormulaPtr rhs, Span span = {});
FormulaPtr make_quant(Quantifier q, Sort sort, std::string var, std::optional<Interval> range, FormulaPtr body,
                      Span span = {});

Interval closed_interval(const Real& lo, const Real& hi);

/// Structural equality; spans and literal spellings are ignored.
bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);

/// Concrete syntax that re-parses to a structurally equal formula.
std::string format(const Formula& f);
std::string format(const Term& t);

/// Rewrites forall, implies and and into not / or / exists.
FormulaPtr desugar(const FormulaPtr& f);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> free_variables(const Term& t);
std::set<SignalName> signals_used(const Formula& f);
std::size_t quantifier_count(const Formula& f);
std::size_t quantifier_depth(const Formula& f);

bool uses_real_quantifier(const Formula& f);
/// True if any t2i or @t occurs (the constructs that need an index lookup).
bool uses_time_lookup(const Formula& f);

/// The sort a variable name implies by convention (sigma*, tau*, rho* and
/// their Greek spellings), if any.
std::optional<Sort> conventional_sort(const std::string& name);

}  // namespace hls
