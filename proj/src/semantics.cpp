#include "hls/semantics.hpp"

#include "hls/error.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>
#include <vector>

namespace hls {

const char* to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::satisfied: return "satisfied";
    case Verdict::Kind::violated: return "violated";
    case Verdict::Kind::unknown: return "unknown";
    case Verdict::Kind::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(const Verdict& v) {
  if (v.kind == Verdict::Kind::inconclusive) return "inconclusive(" + v.reason + ")";
  return to_string(v.kind);
}

std::optional<Interval> clip_to_span(const Interval& range, const Trace& trace) {
  Interval out = range;
  if (out.lower.value < trace.first_time()) out.lower = Bound{trace.first_time(), {}, false};
  else if (out.lower.value == trace.first_time()) out.lower.text.clear();
  if (out.upper.value > trace.last_time()) out.upper = Bound{trace.last_time(), {}, false};
  else if (out.upper.value == trace.last_time()) out.upper.text.clear();
  if (out.lower.value > out.upper.value) return std::nullopt;
  if (out.lower.value == out.upper.value && (out.lower.open || out.upper.open)) return std::nullopt;
  return out;
}

namespace {

Truth negate(Truth t) {
  switch (t) {
    case Truth::true_: return Truth::false_;
    case Truth::false_: return Truth::true_;
    case Truth::error: return Truth::error;
  }
  return Truth::error;
}

// Strong Kleene disjunction / conjunction accumulators.
struct AnyOf {
  bool any_true = false;
  bool any_error = false;
  void add(Truth t) {
    any_true = any_true || t == Truth::true_;
    any_error = any_error || t == Truth::error;
  }
  Truth result() const { return any_true ? Truth::true_ : any_error ? Truth::error : Truth::false_; }
};

struct AllOf {
  bool any_false = false;
  bool any_error = false;
  void add(Truth t) {
    any_false = any_false || t == Truth::false_;
    any_error = any_error || t == Truth::error;
  }
  Truth result() const { return any_false ? Truth::false_ : any_error ? Truth::error : Truth::true_; }
};

bool mentions(const Term& t, const std::string& var) { return free_variables(t).count(var) > 0; }

// Time-sorted subterms whose value feeds an index lookup or a time comparison.
struct Site {
  const Term* lhs;
  const Term* rhs;  // null for lookup arguments
};

template <class F>
void each_term(const Term& t, F&& f) {
  f(t);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Term::I2T>) each_term(*x.index, f);
        if constexpr (std::is_same_v<T, Term::T2I>) each_term(*x.time, f);
        if constexpr (std::is_same_v<T, Term::AtIndex>) each_term(*x.index, f);
        if constexpr (std::is_same_v<T, Term::AtTime>) each_term(*x.time, f);
        if constexpr (std::is_same_v<T, Term::Arith>) {
          each_term(*x.lhs, f);
          each_term(*x.rhs, f);
        }
      },
      t.node);
}

template <class F>
void each_site(const Formula& f, F&& on_site) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula::Rel>) {
          if (x.lhs->sort == Sort::time) on_site(Site{x.lhs.get(), x.rhs.get()});
          for (const auto& side : {x.lhs, x.rhs})
            each_term(*side, [&](const Term& t) {
              if (auto a = std::get_if<Term::T2I>(&t.node)) on_site(Site{a->time.get(), nullptr});
              if (auto a = std::get_if<Term::AtTime>(&t.node)) on_site(Site{a->time.get(), nullptr});
            });
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          each_site(*x.arg, on_site);
        } else if constexpr (std::is_same_v<T, Formula::Binary>) {
          each_site(*x.lhs, on_site);
          each_site(*x.rhs, on_site);
        } else if constexpr (std::is_same_v<T, Formula::Quant>) {
          each_site(*x.body, on_site);
        }
      },
      f.node);
}

// True if `var` occurs in `t` only at affine positions (never under i2t/t2i/@).
bool affine_in(const Term& t, const std::string& var) {
  if (!mentions(t, var)) return true;
  if (auto v = std::get_if<Term::Var>(&t.node)) return v->name == var;
  if (auto a = std::get_if<Term::Arith>(&t.node)) return affine_in(*a->lhs, var) && affine_in(*a->rhs, var);
  return false;
}

class Evaluator {
 public:
  Evaluator(const Trace& trace, TimeDomain domain) : trace_(trace), domain_(domain) {}

  const std::string& first_error() const { return first_error_; }

  std::optional<Real> eval(const Term& t, const Assignment& mu) {
    return std::visit(
        [&](const auto& x) -> std::optional<Real> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Term::Var>) {
            return lookup(t.sort, x.name, mu);
          } else if constexpr (std::is_same_v<T, Term::Literal>) {
            return x.value;
          } else if constexpr (std::is_same_v<T, Term::I2T>) {
            auto j = index_of(*x.index, mu);
            if (!j) return std::nullopt;
            return trace_.timestamp(*j);
          } else if constexpr (std::is_same_v<T, Term::T2I>) {
            auto j = lookup_time(*x.time, mu);
            if (!j) return std::nullopt;
            return Real(static_cast<long>(*j));
          } else if constexpr (std::is_same_v<T, Term::AtIndex>) {
            auto j = index_of(*x.index, mu);
            if (!j) return std::nullopt;
            return cell(x.signal, *j);
          } else if constexpr (std::is_same_v<T, Term::AtTime>) {
            auto j = lookup_time(*x.time, mu);
            if (!j) return std::nullopt;
            return cell(x.signal, *j);
          } else if constexpr (std::is_same_v<T, Term::Arith>) {
            auto l = eval(*x.lhs, mu);
            if (!l) return std::nullopt;
            auto r = eval(*x.rhs, mu);
            if (!r) return std::nullopt;
            switch (x.op) {
              case ArithOp::add: return Real(*l + *r);
              case ArithOp::sub: return Real(*l - *r);
              case ArithOp::mul: return Real(*l * *r);
            }
            return std::nullopt;
          }
        },
        t.node);
  }

  Truth sat(const Formula& f, Assignment& mu) {
    return std::visit(
        [&](const auto& x) -> Truth {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Formula::Rel>) {
            auto l = eval(*x.lhs, mu);
            if (!l) return Truth::error;
            auto r = eval(*x.rhs, mu);
            if (!r) return Truth::error;
            return compare(x.op, *l, *r) ? Truth::true_ : Truth::false_;
          } else if constexpr (std::is_same_v<T, Formula::Not>) {
            return negate(sat(*x.arg, mu));
          } else if constexpr (std::is_same_v<T, Formula::Binary>) {
            Truth l = sat(*x.lhs, mu);
            if (x.op == BoolOp::and_) {
              if (l == Truth::false_) return l;
              AllOf all;
              all.add(l);
              all.add(sat(*x.rhs, mu));
              return all.result();
            }
            if (x.op == BoolOp::implies) l = negate(l);
            if (l == Truth::true_) return l;
            AnyOf any;
            any.add(l);
            any.add(sat(*x.rhs, mu));
            return any.result();
          } else if constexpr (std::is_same_v<T, Formula::Quant>) {
            return quant(f, x, mu);
          }
        },
        f.node);
  }

 private:
  std::nullopt_t fail(const std::string& msg) {
    if (first_error_.empty()) first_error_ = msg;
    return std::nullopt;
  }

  static bool compare(RelOp op, const Real& l, const Real& r) {
    switch (op) {
      case RelOp::lt: return l < r;
      case RelOp::le: return l <= r;
      case RelOp::eq: return l == r;
      case RelOp::ne: return l != r;
      case RelOp::ge: return l >= r;
      case RelOp::gt: return l > r;
    }
    return false;
  }

  static std::optional<Real> lookup(Sort sort, const std::string& name, const Assignment& mu) {
    switch (sort) {
      case Sort::time:
        if (auto it = mu.time.find(name); it != mu.time.end()) return it->second;
        break;
      case Sort::index:
        if (auto it = mu.index.find(name); it != mu.index.end()) return Real(it->second);
        break;
      case Sort::value:
        if (auto it = mu.real.find(name); it != mu.real.end()) return it->second;
        break;
    }
    throw Error(Stage::domain, "unbound variable '" + name + "'");
  }

  std::optional<std::size_t> index_of(const Term& t, const Assignment& mu) {
    auto v = eval(t, mu);
    if (!v) return std::nullopt;
    if (sgn(*v) < 0 || *v > Real(static_cast<long>(trace_.last_index())))
      return fail("index " + to_decimal_string(*v) + " outside [0, " + std::to_string(trace_.last_index()) + "]");
    return static_cast<std::size_t>(v->get_num().get_ui());
  }

  std::optional<std::size_t> lookup_time(const Term& t, const Assignment& mu) {
    auto v = eval(t, mu);
    if (!v) return std::nullopt;
    if (*v < trace_.first_time() || *v > trace_.last_time())
      return fail("timestamp " + to_decimal_string(*v) + " outside [" + to_decimal_string(trace_.first_time()) +
                  ", " + to_decimal_string(trace_.last_time()) + "]");
    return iota_variable(trace_, *v);
  }

  std::optional<Real> cell(const SignalName& s, std::size_t j) {
    auto slot = trace_.signal_slot(s);
    if (!slot) return fail("unknown signal '" + s + "'");
    const auto& v = trace_.records()[j].values[*slot];
    if (!v) return fail("signal '" + s + "' unassigned at index " + std::to_string(j));
    return *v;
  }

  // Evaluates without recording errors (used for breakpoint probing).
  std::optional<Real> probe(const Term& t, const Assignment& mu) {
    std::string saved = first_error_;
    auto v = eval(t, mu);
    first_error_ = std::move(saved);
    return v;
  }

  // Affine decomposition c * var + beta of a site operand at the current assignment.
  std::optional<std::pair<Real, Real>> affine(const Term& t, const std::string& var, Assignment& mu) {
    mu.time[var] = Real(0);
    auto beta = probe(t, mu);
    mu.time[var] = Real(1);
    auto one = probe(t, mu);
    if (!beta || !one) return std::nullopt;
    return std::make_pair(Real(*one - *beta), *beta);
  }

  const std::vector<Site>& sites_of(const Formula& quant_node, const Formula::Quant& q) {
    auto it = sites_.find(&quant_node);
    if (it != sites_.end()) return it->second;
    std::vector<Site> out;
    each_site(*q.body, [&](const Site& s) {
      if (mentions(*s.lhs, q.var) || (s.rhs && mentions(*s.rhs, q.var))) out.push_back(s);
    });
    return sites_.emplace(&quant_node, std::move(out)).first->second;
  }

  std::vector<Real> time_candidates(const Formula& node, const Formula::Quant& q, const Interval& range,
                                    Assignment& mu) {
    std::vector<Real> points;
    if (domain_ == TimeDomain::sampled) {
      for (const auto& r : trace_.records())
        if (range.contains(r.timestamp)) points.push_back(r.timestamp);
      if (!range.lower.open) points.push_back(range.lower.value);
      if (!range.upper.open) points.push_back(range.upper.value);
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      return points;
    }

    std::vector<Real> cuts{range.lower.value, range.upper.value};
    auto add_cut = [&](const Real& x) {
      if (range.lower.value < x && x < range.upper.value) cuts.push_back(x);
    };
    for (const Site& s : sites_of(node, q)) {
      if (!affine_in(*s.lhs, q.var) || (s.rhs && !affine_in(*s.rhs, q.var)))
        throw Error(Stage::domain, "outside oracle fragment: '" + q.var + "' occurs non-affinely");
      auto l = affine(*s.lhs, q.var, mu);
      if (!l) continue;
      if (s.rhs) {
        auto r = affine(*s.rhs, q.var, mu);
        if (!r) continue;
        Real c = l->first - r->first;
        if (sgn(c) != 0) add_cut(Real(-(l->second - r->second) / c));
      } else if (sgn(l->first) != 0) {
        for (const auto& rec : trace_.records()) add_cut(Real((rec.timestamp - l->second) / l->first));
      }
    }
    mu.time.erase(q.var);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      if (range.contains(cuts[k])) points.push_back(cuts[k]);
      if (k + 1 < cuts.size()) points.push_back(Real((cuts[k] + cuts[k + 1]) / 2));
    }
    return points;
  }

  Truth quant(const Formula& node, const Formula::Quant& q, Assignment& mu) {
    const bool exists = q.quantifier == Quantifier::exists;
    AnyOf any;
    AllOf all;
    auto visit = [&](Truth t) {
      any.add(t);
      all.add(t);
      return exists ? t == Truth::true_ : t == Truth::false_;  // short-circuit
    };

    if (q.sort == Sort::value) throw Error(Stage::domain, "outside oracle fragment: real-valued quantifier");

    if (q.sort == Sort::index) {
      Real lo = q.range->lower.value, hi = q.range->upper.value;
      long first = to_long(lo) + (q.range->lower.open ? 1 : 0);
      long last = to_long(hi) - (q.range->upper.open ? 1 : 0);
      for (long j = first; j <= last; ++j) {
        mu.index[q.var] = j;
        if (visit(sat(*q.body, mu))) break;
      }
      mu.index.erase(q.var);
    } else {
      auto range = clip_to_span(*q.range, trace_);
      if (range) {
        for (const Real& c : time_candidates(node, q, *range, mu)) {
          mu.time[q.var] = c;
          if (visit(sat(*q.body, mu))) break;
        }
        mu.time.erase(q.var);
      }
    }
    return exists ? any.result() : all.result();
  }

  const Trace& trace_;
  TimeDomain domain_;
  std::string first_error_;
  std::unordered_map<const Formula*, std::vector<Site>> sites_;
};

}  // namespace

Real eval_term(const Term& term, const Trace& trace, const Assignment& mu) {
  Evaluator ev(trace, TimeDomain::dense);
  auto v = ev.eval(term, mu);
  if (!v) throw Error(Stage::domain, ev.first_error());
  return *v;
}

Truth satisfies(const Trace& trace, const Assignment& mu, const Formula& f, TimeDomain domain) {
  Evaluator ev(trace, domain);
  Assignment local = mu;
  try {
    return ev.sat(f, local);
  } catch (const Error&) {
    return Truth::error;
  }
}

std::optional<std::string> oracle_fragment_violation(const Formula& f) {
  if (uses_real_quantifier(f)) return "real-valued quantifier";

  std::optional<std::string> violation;
  std::vector<std::pair<std::string, Sort>> scope;

  auto depth_of = [&](const std::string& name) -> int {
    for (int k = static_cast<int>(scope.size()) - 1; k >= 0; --k)
      if (scope[static_cast<std::size_t>(k)].first == name) return k;
    return -1;
  };

  auto check_site = [&](const Site& s) {
    std::set<std::string> vars = free_variables(*s.lhs);
    if (s.rhs) vars.merge(free_variables(*s.rhs));
    std::vector<std::string> time_vars;
    for (const auto& v : vars) {
      int d = depth_of(v);
      if (d >= 0 && scope[static_cast<std::size_t>(d)].second == Sort::time) time_vars.push_back(v);
    }
    if (time_vars.empty()) return;
    const std::string where = "'" + format(*s.lhs) + (s.rhs ? " vs " + format(*s.rhs) : std::string()) + "'";
    if (time_vars.size() > 1) {
      violation = "time expression " + where + " mixes several time variables";
      return;
    }
    const std::string& tau = time_vars.front();
    if (!affine_in(*s.lhs, tau) || (s.rhs && !affine_in(*s.rhs, tau))) {
      violation = "time variable '" + tau + "' occurs non-affinely in " + where;
      return;
    }
    const int tau_depth = depth_of(tau);
    for (const auto& v : vars)
      if (depth_of(v) > tau_depth) {
        violation = "time expression " + where + " depends on '" + v + "', bound inside '" + tau + "'";
        return;
      }
  };

  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    if (violation) return;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Formula::Rel>) {
            each_site(g, [&](const Site& s) {
              if (!violation) check_site(s);
            });
          } else if constexpr (std::is_same_v<T, Formula::Not>) {
            visit(*x.arg);
          } else if constexpr (std::is_same_v<T, Formula::Binary>) {
            visit(*x.lhs);
            visit(*x.rhs);
          } else if constexpr (std::is_same_v<T, Formula::Quant>) {
            scope.emplace_back(x.var, x.sort);
            visit(*x.body);
            scope.pop_back();
          }
        },
        g.node);
  };
  visit(f);
  return violation;
}

Verdict check_direct(const Trace& trace, const Formula& f, TimeDomain domain) {
  if (auto free = free_variables(f); !free.empty())
    return Verdict::inconclusive("formula has free variable '" + *free.begin() + "'");
  if (uses_real_quantifier(f)) return Verdict::inconclusive("outside oracle fragment: real-valued quantifier");
  if (domain == TimeDomain::dense)
    if (auto why = oracle_fragment_violation(f)) return Verdict::inconclusive("outside oracle fragment: " + *why);

  Evaluator ev(trace, domain);
  Assignment mu;
  Truth t;
  try {
    t = ev.sat(f, mu);
  } catch (const Error& e) {
    return Verdict::inconclusive(e.what());
  }
  switch (t) {
    case Truth::true_: return Verdict::satisfied();
    case Truth::false_: return Verdict::violated();
    case Truth::error: break;
  }
  return Verdict::inconclusive("evaluation error: " + ev.first_error());
}

}  // namespace hls
