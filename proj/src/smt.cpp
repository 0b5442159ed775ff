#include "hls/smt.hpp"

#include "hls/error.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace hls {

std::string to_string(const IotaMode& mode) {
  if (auto f = std::get_if<IotaFixed>(&mode))
    return "fixed(sr=" + to_decimal_string(f->sr) + ", origin=" + to_decimal_string(f->origin) + ")";
  return "variable";
}

IotaFixed fixed_mode_for(const Trace& trace) {
  auto f = std::get_if<FixedRate>(&trace.rate());
  if (!f) throw Error(Stage::translate, "fixed-rate lookup requested but the trace has a variable sample rate; use strategy A2");
  return IotaFixed{f->sr, trace.first_time()};
}

namespace {

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

const char* greek_name(unsigned code) {
  static const char* const names[] = {"alpha", "beta",    "gamma", "delta",  "epsilon", "zeta",  "eta",
                                      "theta", "iota",    "kappa", "lambda", "mu",      "nu",    "xi",
                                      "omicron", "pi",    "rho",   "sigma",  "sigma",   "tau",   "upsilon",
                                      "phi",   "chi",     "psi",   "omega"};
  if (code >= 0x3B1 && code <= 0x3C9) return names[code - 0x3B1];
  return nullptr;
}

// Variable names may be Greek; anything else outside [A-Za-z0-9_] is hex-escaped.
std::string variable_identifier(const std::string& name) {
  std::string out = "v_";
  for (std::size_t i = 0; i < name.size();) {
    unsigned char c = static_cast<unsigned char>(name[i]);
    if ((c & 0xE0) == 0xC0 && i + 1 < name.size()) {
      unsigned code = ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(name[i + 1]) & 0x3Fu);
      if (const char* g = greek_name(code)) {
        out += g;
        i += 2;
        continue;
      }
    }
    if (is_ident_char(static_cast<char>(c))) {
      out += static_cast<char>(c);
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "_x%02x", c);
      out += buf;
    }
    ++i;
  }
  return out;
}

const char* smt_sort(Sort s) { return s == Sort::index ? "Int" : "Real"; }

std::string smt_literal(Sort s, const Real& v) { return s == Sort::index ? to_smt_int(v) : to_smt_real(v); }

std::string app(const char* op, const std::string& a, const std::string& b) {
  return std::string("(") + op + " " + a + " " + b + ")";
}

std::string conjunction(const std::vector<std::string>& parts) {
  if (parts.empty()) return "true";
  if (parts.size() == 1) return parts.front();
  std::string out = "(and";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

class Translator {
 public:
  Translator(const IotaMode& mode, const Trace& trace) : mode_(mode), trace_(trace) {
    for (const auto& [signal, id] : signal_name_map(trace)) {
      signal_ids_.emplace(signal, id);
      reserved_.insert(id);
    }
    reserved_.insert("t");
    frames_.push_back(Frame{});
  }

  std::string formula(const Formula& f) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Formula::Rel>) {
            std::string l = term(*x.lhs), r = term(*x.rhs);
            switch (x.op) {
              case RelOp::lt: return app("<", l, r);
              case RelOp::le: return app("<=", l, r);
              case RelOp::eq: return app("=", l, r);
              case RelOp::ne: return "(not " + app("=", l, r) + ")";
              case RelOp::ge: return app(">=", l, r);
              case RelOp::gt: return app(">", l, r);
            }
            return {};
          } else if constexpr (std::is_same_v<T, Formula::Not>) {
            return "(not " + formula(*x.arg) + ")";
          } else if constexpr (std::is_same_v<T, Formula::Binary>) {
            const char* op = x.op == BoolOp::and_ ? "and" : x.op == BoolOp::or_ ? "or" : "=>";
            std::string l = formula(*x.lhs);
            return app(op, l, formula(*x.rhs));
          } else if constexpr (std::is_same_v<T, Formula::Quant>) {
            return quant(x);
          }
        },
        f.node);
  }

  std::vector<std::string> global_fresh() const { return frames_.front().fresh; }
  std::vector<std::string> global_constraints() const { return frames_.front().constraints; }

 private:
  struct Frame {
    std::string var;
    std::vector<std::string> fresh;
    std::vector<std::string> constraints;
  };

  std::string term(const Term& t) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Term::Var>) {
            auto it = var_ids_.find(x.name);
            if (it == var_ids_.end()) throw Error(Stage::translate, "free variable '" + x.name + "'");
            return it->second;
          } else if constexpr (std::is_same_v<T, Term::Literal>) {
            return smt_literal(t.sort, x.value);
          } else if constexpr (std::is_same_v<T, Term::I2T>) {
            return "(select t " + term(*x.index) + ")";
          } else if constexpr (std::is_same_v<T, Term::T2I>) {
            return iota(*x.time);
          } else if constexpr (std::is_same_v<T, Term::AtIndex>) {
            return "(select " + signal(x.signal) + " " + term(*x.index) + ")";
          } else if constexpr (std::is_same_v<T, Term::AtTime>) {
            return "(select " + signal(x.signal) + " " + iota(*x.time) + ")";
          } else if constexpr (std::is_same_v<T, Term::Arith>) {
            const char* op = x.op == ArithOp::add ? "+" : x.op == ArithOp::sub ? "-" : "*";
            std::string l = term(*x.lhs);
            return app(op, l, term(*x.rhs));
          }
        },
        t.node);
  }

  const std::string& signal(const SignalName& s) const {
    auto it = signal_ids_.find(s);
    if (it == signal_ids_.end()) throw Error(Stage::signature, "signal '" + s + "' not in trace");
    return it->second;
  }

  std::string iota(const Term& time) {
    IotaTerm it = translate_iota(mode_, trace_, term(time), counter_);
    if (!it.fresh.empty()) {
      // Bind k where the innermost variable of its argument is bound.
      std::set<std::string> vars = free_variables(time);
      std::size_t at = 0;
      for (std::size_t k = frames_.size(); k-- > 1;)
        if (vars.count(frames_[k].var)) {
          at = k;
          break;
        }
      Frame& fr = frames_[at];
      fr.fresh.insert(fr.fresh.end(), it.fresh.begin(), it.fresh.end());
      fr.constraints.insert(fr.constraints.end(), it.constraints.begin(), it.constraints.end());
    }
    return it.expr;
  }

  std::string fresh_var_id(const std::string& name) {
    std::string id = variable_identifier(name);
    while (reserved_.count(id)) id += "_";
    return id;
  }

  std::string quant(const Formula::Quant& q) {
    const std::string id = fresh_var_id(q.var);
    auto previous = var_ids_.find(q.var) != var_ids_.end() ? std::optional(var_ids_[q.var]) : std::nullopt;
    var_ids_[q.var] = id;
    reserved_.insert(id);
    frames_.push_back(Frame{q.var, {}, {}});
    std::string body = formula(*q.body);
    Frame fr = std::move(frames_.back());
    frames_.pop_back();
    reserved_.erase(id);
    if (previous) var_ids_[q.var] = *previous;
    else var_ids_.erase(q.var);

    std::string binders = "((" + id + " " + smt_sort(q.sort) + ")";
    for (const auto& k : fr.fresh) binders += " (" + k + " Int)";
    binders += ")";

    std::vector<std::string> guard;
    if (q.range) {
      Bound lo = q.range->lower, hi = q.range->upper;
      if (q.sort == Sort::time) {
        if (lo.value < trace_.first_time()) lo = Bound{trace_.first_time(), {}, false};
        if (hi.value > trace_.last_time()) hi = Bound{trace_.last_time(), {}, false};
      }
      const std::string a = smt_literal(q.sort, lo.value), b = smt_literal(q.sort, hi.value);
      guard.push_back(app("and", app(lo.open ? "<" : "<=", a, id), app(hi.open ? "<" : "<=", id, b)));
    }
    guard.insert(guard.end(), fr.constraints.begin(), fr.constraints.end());

    if (q.quantifier == Quantifier::exists) {
      if (guard.empty()) return "(exists " + binders + " " + body + ")";
      guard.push_back(body);
      return "(exists " + binders + " " + conjunction(guard) + ")";
    }
    if (guard.empty()) return "(forall " + binders + " " + body + ")";
    return "(forall " + binders + " (=> " + conjunction(guard) + " " + body + "))";
  }

  const IotaMode& mode_;
  const Trace& trace_;
  std::map<SignalName, std::string> signal_ids_;
  std::map<std::string, std::string> var_ids_;
  std::set<std::string> reserved_;
  std::vector<Frame> frames_;
  std::size_t counter_ = 0;
};

}  // namespace

std::string signal_identifier(const SignalName& name) {
  std::string out = "v_";
  for (char c : name) {
    if (c == '-' || c == ' ') out += '_';
    else if (is_ident_char(c)) out += c;
    else {
      std::string suggestion;
      for (char d : name) suggestion += is_ident_char(d) ? d : '_';
      throw Error(Stage::translate, "signal name '" + name + "' is not a legal SMT identifier; rename it, e.g. to '" +
                                        suggestion + "'");
    }
  }
  return out;
}

NameMap signal_name_map(const Trace& trace) {
  NameMap map;
  std::map<std::string, SignalName> seen;
  for (const auto& s : trace.signals()) {
    std::string id = signal_identifier(s);
    if (auto [it, fresh] = seen.emplace(id, s); !fresh)
      throw Error(Stage::translate, "signals '" + it->second + "' and '" + s + "' both map to '" + id +
                                        "'; rename one of them");
    map.emplace_back(s, id);
  }
  return map;
}

SmtScript translate_trace(const Trace& trace) {
  if (!trace.is_total())
    throw Error(Stage::translate, "trace has unassigned values; preprocess it with A1 or A2 first");
  SmtScript out;
  NameMap names = signal_name_map(trace);
  out.declarations.push_back("(declare-const t (Array Int Real))");
  for (const auto& [signal, id] : names) out.declarations.push_back("(declare-const " + id + " (Array Int Real))");

  for (const auto& r : trace.records())
    out.assertions.push_back("(= (select t " + std::to_string(r.index) + ") " + to_smt_real(r.timestamp) + ")");
  for (std::size_t s = 0; s < names.size(); ++s)
    for (const auto& r : trace.records())
      out.assertions.push_back("(= (select " + names[s].second + " " + std::to_string(r.index) + ") " +
                               to_smt_real(*r.values[s]) + ")");
  return out;
}

IotaTerm translate_iota(const IotaMode& mode, const Trace& trace, const std::string& tt, std::size_t& counter) {
  IotaTerm out;
  const std::size_t n = counter++;
  if (auto f = std::get_if<IotaFixed>(&mode)) {
    if (sgn(f->sr) <= 0) throw Error(Stage::translate, "fixed-rate lookup needs a positive sample rate");
    const std::string k = "iota_k" + std::to_string(n);
    auto grid = [&](const std::string& idx) {
      std::string scaled = "(* " + to_smt_real(f->sr) + " (to_real " + idx + "))";
      return sgn(f->origin) == 0 ? scaled : "(+ " + to_smt_real(f->origin) + " " + scaled + ")";
    };
    out.expr = k;
    out.fresh.push_back(k);
    out.constraints.push_back(app("<=", grid(k), tt));
    out.constraints.push_back(app("<", tt, grid("(+ " + k + " 1)")));
    return out;
  }

  const auto& records = trace.records();
  if (records.size() == 1) {
    out.expr = "0";
    return out;
  }
  const std::string x = "tt_" + std::to_string(n);
  std::string chain;
  chain.reserve(records.size() * 40);
  for (std::size_t j = 1; j < records.size(); ++j)
    chain += "(ite (< " + x + " " + to_smt_real(records[j].timestamp) + ") " + std::to_string(j - 1) + " ";
  chain += std::to_string(records.size() - 1);
  chain.append(records.size() - 1, ')');
  out.expr = "(let ((" + x + " " + tt + ")) " + chain + ")";
  return out;
}

FormulaTranslation translate_formula(const Formula& f, const IotaMode& mode, const Trace& trace,
                                     const TranslateOptions& options) {
  if (auto free = free_variables(f); !free.empty())
    throw Error(Stage::translate, "formula has free variable '" + *free.begin() + "'");
  if (std::holds_alternative<IotaVariable>(mode) && uses_time_lookup(f) && trace.size() > options.expansion_cap)
    throw Error(Stage::translate, "variable-rate lookup over " + std::to_string(trace.size()) +
                                      " records exceeds the expansion cap of " +
                                      std::to_string(options.expansion_cap) +
                                      "; use strategy A2 (fixed-rate lookup) or raise the cap");
  Translator tr(mode, trace);
  FormulaTranslation out;
  out.term = tr.formula(f);
  out.global_fresh = tr.global_fresh();
  out.global_constraints = tr.global_constraints();
  return out;
}

SmtScript build_check_script(const Trace& trace, const Formula& f, const IotaMode& mode,
                             const TranslateOptions& options, Polarity polarity) {
  FormulaTranslation h = translate_formula(f, mode, trace, options);
  SmtScript out = translate_trace(trace);

  char digest[32];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(trace.digest()));
  std::string names;
  for (const auto& [signal, id] : signal_name_map(trace)) names += (names.empty() ? "" : ", ") + signal + " -> " + id;
  out.comments = {kToolVersion,
                  std::string("iota: ") + to_string(mode),
                  std::string("trace digest (fnv1a-64): ") + digest,
                  "records: " + std::to_string(trace.size()),
                  "signals: " + names,
                  polarity == Polarity::negated ? "query: negated property (unsat = satisfied)"
                                                : "query: property as stated"};

  for (const auto& k : h.global_fresh) out.declarations.push_back("(declare-const " + k + " Int)");
  out.assertions.insert(out.assertions.end(), h.global_constraints.begin(), h.global_constraints.end());
  out.assertions.push_back(polarity == Polarity::negated ? "(not " + h.term + ")" : h.term);
  return out;
}

std::string emit(const SmtScript& script) {
  std::string out;
  for (const auto& c : script.comments) out += "; " + c + "\n";
  if (script.request_model) out += "(set-option :produce-models true)\n";
  out += "(set-logic " + script.logic + ")\n";
  for (const auto& d : script.declarations) out += d + "\n";
  for (const auto& a : script.assertions) out += "(assert " + a + ")\n";
  out += "(check-sat)\n";
  if (script.request_model) out += "(get-model)\n";
  return out;
}

}  // namespace hls
