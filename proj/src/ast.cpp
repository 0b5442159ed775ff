#include "hls/ast.hpp"

#include <algorithm>
#include <cctype>

namespace hls {

const char* to_string(Sort sort) {
  switch (sort) {
    case Sort::time: return "time";
    case Sort::index: return "index";
    case Sort::value: return "real";
  }
  return "?";
}

const char* to_string(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
  }
  return "?";
}

const char* to_string(RelOp op) {
  switch (op) {
    case RelOp::lt: return "<";
    case RelOp::le: return "<=";
    case RelOp::eq: return "=";
    case RelOp::ne: return "!=";
    case RelOp::ge: return ">=";
    case RelOp::gt: return ">";
  }
  return "?";
}

const char* to_string(BoolOp op) {
  switch (op) {
    case BoolOp::and_: return "and";
    case BoolOp::or_: return "or";
    case BoolOp::implies: return "implies";
  }
  return "?";
}

bool Interval::contains(const Real& x) const {
  const bool above = lower.open ? lower.value < x : lower.value <= x;
  const bool below = upper.open ? x < upper.value : x <= upper.value;
  return above && below;
}

TermPtr make_var(Sort sort, std::string name, Span span) {
  return std::make_shared<const Term>(Term{sort, Term::Var{std::move(name)}, span});
}
TermPtr make_literal(Sort sort, Real value, std::string text, Span span) {
  return std::make_shared<const Term>(Term{sort, Term::Literal{std::move(value), std::move(text)}, span});
}
TermPtr make_i2t(TermPtr index, Span span) {
  return std::make_shared<const Term>(Term{Sort::time, Term::I2T{std::move(index)}, span});
}
TermPtr make_t2i(TermPtr time, Span span) {
  return std::make_shared<const Term>(Term{Sort::index, Term::T2I{std::move(time)}, span});
}
TermPtr make_at_index(SignalName signal, TermPtr index, Span span) {
  return std::make_shared<const Term>(Term{Sort::value, Term::AtIndex{std::move(signal), std::move(index)}, span});
}
TermPtr make_at_time(SignalName signal, TermPtr time, Span span) {
  return std::make_shared<const Term>(Term{Sort::value, Term::AtTime{std::move(signal), std::move(time)}, span});
}
TermPtr make_arith(ArithOp op, TermPtr lhs, TermPtr rhs, Span span) {
  const Sort sort = lhs->sort;
  return std::make_shared<const Term>(Term{sort, Term::Arith{op, std::move(lhs), std::move(rhs)}, span});
}

FormulaPtr make_rel(RelOp op, TermPtr lhs, TermPtr rhs, Span span) {
  return std::make_shared<const Formula>(Formula{Formula::Rel{op, std::move(lhs), std::move(rhs)}, span});
}
FormulaPtr make_not(FormulaPtr arg, Span span) {
  return std::make_shared<const Formula>(Formula{Formula::Not{std::move(arg)}, span});
}
FormulaPtr make_binary(BoolOp op, FormulaPtr lhs, FormulaPtr rhs, Span span) {
  return std::make_shared<const Formula>(Formula{Formula::Binary{op, std::move(lhs), std::move(rhs)}, span});
}
FormulaPtr make_quant(Quantifier q, Sort sort, std::string var, std::optional<Interval> range, FormulaPtr body,
                      Span span) {
  return std::make_shared<const Formula>(
      Formula{Formula::Quant{q, sort, std::move(var), std::move(range), std::move(body)}, span});
}

Interval closed_interval(const Real& lo, const Real& hi) { return Interval{Bound{lo, {}, false}, Bound{hi, {}, false}}; }

// ---------------------------------------------------------------------------
// Structural equality

namespace {

bool bound_equal(const Bound& a, const Bound& b) { return a.value == b.value && a.open == b.open; }

}  // namespace

bool equal(const Term& a, const Term& b) {
  if (a.sort != b.sort || a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Term::Var>) return x.name == y.name;
        if constexpr (std::is_same_v<T, Term::Literal>) return x.value == y.value;
        if constexpr (std::is_same_v<T, Term::I2T>) return equal(*x.index, *y.index);
        if constexpr (std::is_same_v<T, Term::T2I>) return equal(*x.time, *y.time);
        if constexpr (std::is_same_v<T, Term::AtIndex>) return x.signal == y.signal && equal(*x.index, *y.index);
        if constexpr (std::is_same_v<T, Term::AtTime>) return x.signal == y.signal && equal(*x.time, *y.time);
        if constexpr (std::is_same_v<T, Term::Arith>)
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
      },
      a.node);
}

bool equal(const Formula& a, const Formula& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Formula::Rel>)
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        if constexpr (std::is_same_v<T, Formula::Not>) return equal(*x.arg, *y.arg);
        if constexpr (std::is_same_v<T, Formula::Binary>)
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        if constexpr (std::is_same_v<T, Formula::Quant>) {
          if (x.quantifier != y.quantifier || x.sort != y.sort || x.var != y.var) return false;
          if (x.range.has_value() != y.range.has_value()) return false;
          if (x.range && !(bound_equal(x.range->lower, y.range->lower) && bound_equal(x.range->upper, y.range->upper)))
            return false;
          return equal(*x.body, *y.body);
        }
      },
      a.node);
}

// ---------------------------------------------------------------------------
// Pretty printing

std::optional<Sort> conventional_sort(const std::string& name) {
  static const std::pair<const char*, Sort> prefixes[] = {
      {"\xCF\x83", Sort::index}, {"sigma", Sort::index}, {"\xCF\x84", Sort::time},
      {"tau", Sort::time},       {"\xCF\x81", Sort::value}, {"rho", Sort::value},
  };
  for (const auto& [prefix, sort] : prefixes) {
    const std::string p(prefix);
    if (name.rfind(p, 0) != 0) continue;
    const std::string rest = name.substr(p.size());
    if (rest.empty() || std::isdigit(static_cast<unsigned char>(rest[0])) || rest[0] == '_') return sort;
  }
  return std::nullopt;
}

namespace {

std::string literal_text(const Real& value, const std::string& text) {
  if (!text.empty()) return text;
  return to_decimal_string(value);
}

void print(std::string& out, const Term& t);

void print(std::string& out, const Term& t) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, Term::Literal>) {
          out += literal_text(x.value, x.text);
        } else if constexpr (std::is_same_v<T, Term::I2T>) {
          out += "i2t(";
          print(out, *x.index);
          out += ")";
        } else if constexpr (std::is_same_v<T, Term::T2I>) {
          out += "t2i(";
          print(out, *x.time);
          out += ")";
        } else if constexpr (std::is_same_v<T, Term::AtIndex>) {
          out += "(" + x.signal + " @i ";
          print(out, *x.index);
          out += ")";
        } else if constexpr (std::is_same_v<T, Term::AtTime>) {
          out += "(" + x.signal + " @t ";
          print(out, *x.time);
          out += ")";
        } else if constexpr (std::is_same_v<T, Term::Arith>) {
          out += "(";
          print(out, *x.lhs);
          out += std::string(" ") + to_string(x.op) + " ";
          print(out, *x.rhs);
          out += ")";
        }
      },
      t.node);
}

void print(std::string& out, const Formula& f) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula::Rel>) {
          out += "(";
          print(out, *x.lhs);
          out += std::string(" ") + to_string(x.op) + " ";
          print(out, *x.rhs);
          out += ")";
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          out += "(not ";
          print(out, *x.arg);
          out += ")";
        } else if constexpr (std::is_same_v<T, Formula::Binary>) {
          out += "(";
          print(out, *x.lhs);
          out += std::string(" ") + to_string(x.op) + " ";
          print(out, *x.rhs);
          out += ")";
        } else if constexpr (std::is_same_v<T, Formula::Quant>) {
          out += x.quantifier == Quantifier::exists ? "(exists " : "(forall ";
          out += x.var;
          if (conventional_sort(x.var) != x.sort) out += std::string(" : ") + to_string(x.sort);
          if (x.range) {
            out += " in ";
            out += x.range->lower.open ? "(" : "[";
            out += literal_text(x.range->lower.value, x.range->lower.text);
            out += ", ";
            out += literal_text(x.range->upper.value, x.range->upper.text);
            out += x.range->upper.open ? ")" : "]";
          }
          out += " such that ";
          print(out, *x.body);
          out += ")";
        }
      },
      f.node);
}

}  // namespace

std::string format(const Formula& f) {
  std::string out;
  print(out, f);
  return out;
}

std::string format(const Term& t) {
  std::string out;
  print(out, t);
  return out;
}

// ---------------------------------------------------------------------------
// Desugaring and queries

FormulaPtr desugar(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& x) -> FormulaPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula::Rel>) {
          return f;
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return make_not(desugar(x.arg), f->span);
        } else if constexpr (std::is_same_v<T, Formula::Binary>) {
          auto l = desugar(x.lhs);
          auto r = desugar(x.rhs);
          switch (x.op) {
            case BoolOp::or_: return make_binary(BoolOp::or_, l, r, f->span);
            case BoolOp::implies: return make_binary(BoolOp::or_, make_not(l), r, f->span);
            case BoolOp::and_: return make_not(make_binary(BoolOp::or_, make_not(l), make_not(r)), f->span);
          }
          return f;
        } else if constexpr (std::is_same_v<T, Formula::Quant>) {
          auto body = desugar(x.body);
          if (x.quantifier == Quantifier::exists)
            return make_quant(Quantifier::exists, x.sort, x.var, x.range, body, f->span);
          return make_not(make_quant(Quantifier::exists, x.sort, x.var, x.range, make_not(body)), f->span);
        }
      },
      f->node);
}

namespace {

template <class OnTerm, class OnFormula>
void walk(const Formula& f, OnTerm&& on_term, OnFormula&& on_formula);

template <class OnTerm>
void walk_term(const Term& t, OnTerm&& on_term) {
  on_term(t);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Term::I2T>) walk_term(*x.index, on_term);
        if constexpr (std::is_same_v<T, Term::T2I>) walk_term(*x.time, on_term);
        if constexpr (std::is_same_v<T, Term::AtIndex>) walk_term(*x.index, on_term);
        if constexpr (std::is_same_v<T, Term::AtTime>) walk_term(*x.time, on_term);
        if constexpr (std::is_same_v<T, Term::Arith>) {
          walk_term(*x.lhs, on_term);
          walk_term(*x.rhs, on_term);
        }
      },
      t.node);
}

template <class OnTerm, class OnFormula>
void walk(const Formula& f, OnTerm&& on_term, OnFormula&& on_formula) {
  on_formula(f);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula::Rel>) {
          walk_term(*x.lhs, on_term);
          walk_term(*x.rhs, on_term);
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          walk(*x.arg, on_term, on_formula);
        } else if constexpr (std::is_same_v<T, Formula::Binary>) {
          walk(*x.lhs, on_term, on_formula);
          walk(*x.rhs, on_term, on_formula);
        } else if constexpr (std::is_same_v<T, Formula::Quant>) {
          walk(*x.body, on_term, on_formula);
        }
      },
      f.node);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula::Rel>) {
          for (const auto& side : {x.lhs, x.rhs})
            for (const auto& v : free_variables(*side))
              if (!bound.count(v)) out.insert(v);
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          collect_free(*x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, Formula::Binary>) {
          collect_free(*x.lhs, bound, out);
          collect_free(*x.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, Formula::Quant>) {
          const bool fresh = bound.insert(x.var).second;
          collect_free(*x.body, bound, out);
          if (fresh) bound.erase(x.var);
        }
      },
      f.node);
}

}  // namespace

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> out;
  walk_term(t, [&](const Term& n) {
    if (auto v = std::get_if<Term::Var>(&n.node)) out.insert(v->name);
  });
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<SignalName> signals_used(const Formula& f) {
  std::set<SignalName> out;
  walk(
      f,
      [&](const Term& t) {
        if (auto a = std::get_if<Term::AtIndex>(&t.node)) out.insert(a->signal);
        if (auto a = std::get_if<Term::AtTime>(&t.node)) out.insert(a->signal);
      },
      [](const Formula&) {});
  return out;
}

std::size_t quantifier_count(const Formula& f) {
  std::size_t n = 0;
  walk(f, [](const Term&) {}, [&](const Formula& g) { n += std::holds_alternative<Formula::Quant>(g.node); });
  return n;
}

std::size_t quantifier_depth(const Formula& f) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula::Rel>) return 0;
        if constexpr (std::is_same_v<T, Formula::Not>) return quantifier_depth(*x.arg);
        if constexpr (std::is_same_v<T, Formula::Binary>)
          return std::max(quantifier_depth(*x.lhs), quantifier_depth(*x.rhs));
        if constexpr (std::is_same_v<T, Formula::Quant>) return 1 + quantifier_depth(*x.body);
      },
      f.node);
}

bool uses_real_quantifier(const Formula& f) {
  bool found = false;
  walk(f, [](const Term&) {}, [&](const Formula& g) {
    if (auto q = std::get_if<Formula::Quant>(&g.node)) found = found || q->sort == Sort::value;
  });
  return found;
}

bool uses_time_lookup(const Formula& f) {
  bool found = false;
  walk(
      f,
      [&](const Term& t) {
        found = found || std::holds_alternative<Term::T2I>(t.node) || std::holds_alternative<Term::AtTime>(t.node);
      },
      [](const Formula&) {});
  return found;
}

}  // namespace hls
