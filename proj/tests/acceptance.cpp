// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "hls/error.hpp"
#include "hls/parser.hpp"
#include "hls/pipeline.hpp"
#include "hls/preprocess.hpp"
#include "hls/semantics.hpp"
#include "hls/smt.hpp"
#include "hls/solver.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace hls {
namespace {

using Kind = SolverOutcome::Kind;
using testing::data_path;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

Real dec(const char* s) { return *parse_decimal(s); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = std::max(2u, std::thread::hardware_concurrency());
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

Outcome iota_point_check() {
  Outcome o;
  Trace t = testing::gyro();
  o.expect(iota_variable(t, dec("2.5")) == 3, "iota_variable(2.5) != 3");
  for (std::size_t j = 0; j < t.size(); ++j) {
    o.expect(iota_variable(t, t.timestamp(j)) == j, "record timestamp " + std::to_string(j));
    if (j + 1 < t.size()) {
      Real mid = (t.timestamp(j) + t.timestamp(j + 1)) / 2;
      o.expect(iota_variable(t, mid) == j, "bracket midpoint " + std::to_string(j));
    }
  }
  return o;
}

CheckOptions solver_options(const std::string& out) {
  CheckOptions c;
  c.solver.cmd = testing::solver_cmd();
  c.solver.timeout_s = 60;
  c.out_dir = testing::scratch_dir() + "/" + out;
  return c;
}

Outcome r1_end_to_end() {
  Outcome o;
  CheckOptions c = solver_options("r1");
  c.oracle = true;
  CheckResult r = run_check("r1", data_path("gyro.csv"), data_path("r1.hls"), c);
  o.expect(r.verdict == Verdict::satisfied(), "solver verdict " + to_string(r.verdict) + " " + r.error);
  o.expect(r.oracle == Verdict::satisfied(), "oracle verdict not satisfied");
  o.expect(r.iota.starts_with("fixed"), "A2 did not select fixed-rate lookup");

  const std::string negated = testing::scratch_dir() + "/r1_negated.hls";
  std::ofstream(negated) << "signal mode : real\nsignal ang-rate : real\nnot (" << format(*testing::r1()) << ")\n";
  CheckResult n = run_check("r1-neg", data_path("gyro.csv"), negated, c);
  o.expect(n.verdict == Verdict::violated(), "negated solver verdict " + to_string(n.verdict) + " " + n.error);
  o.expect(n.oracle == Verdict::violated(), "negated oracle verdict not violated");
  return o;
}

struct Pair {
  Trace trace;
  FormulaPtr formula;
  std::vector<IotaMode> modes;
};

std::vector<Pair> random_corpus() {
  testing::Generator g(20240521);
  std::vector<Pair> corpus;
  for (int k = 0; k < 600; ++k) {
    const bool fixed = k < 500;
    Trace t = g.trace(static_cast<std::size_t>(g.uniform(2, 10)), fixed);
    testing::Generator::Options opt;
    opt.max_depth = 3;
    opt.max_index = static_cast<int>(t.last_index()) + 1;
    opt.t_lo = t.first_time();
    opt.t_hi = t.last_time();
    FormulaPtr f = g.formula(opt);
    std::vector<IotaMode> modes{IotaVariable{}};
    if (fixed) modes.push_back(fixed_mode_for(t));
    corpus.push_back({std::move(t), std::move(f), std::move(modes)});
  }
  return corpus;
}

struct DiffRow {
  Verdict oracle = Verdict::unknown();
  std::vector<Kind> negated, plain;
};

std::vector<DiffRow>& differential_rows(const std::vector<Pair>& corpus) {
  static std::vector<DiffRow> rows = [&] {
    std::vector<DiffRow> out(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) {
      const Pair& p = corpus[i];
      out[i].oracle = check_direct(p.trace, *p.formula);
      for (const auto& mode : p.modes) {
        out[i].negated.push_back(testing::solve(build_check_script(p.trace, *p.formula, mode)).kind);
        out[i].plain.push_back(
            testing::solve(build_check_script(p.trace, *p.formula, mode, {}, Polarity::plain)).kind);
      }
    });
    return out;
  }();
  return rows;
}

Verdict from_kind(Kind k) {
  SolverOutcome s;
  s.kind = k;
  return verdict(s);
}

Outcome differential(const std::vector<Pair>& corpus) {
  Outcome o;
  const auto& rows = differential_rows(corpus);
  std::size_t compared = 0, fixed_compared = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (oracle_fragment_violation(*corpus[i].formula)) {
      o.fail("generated formula outside oracle fragment: " + format(*corpus[i].formula));
      continue;
    }
    if (!rows[i].oracle.definitive()) continue;
    for (std::size_t m = 0; m < corpus[i].modes.size(); ++m) {
      const Verdict v = from_kind(rows[i].negated[m]);
      if (!v.definitive()) continue;
      ++compared;
      fixed_compared += m == 1;
      o.expect(v == rows[i].oracle, "pair " + std::to_string(i) + " (" + to_string(corpus[i].modes[m]) +
                                        "): solver " + to_string(v) + ", oracle " + to_string(rows[i].oracle) +
                                        ": " + format(*corpus[i].formula));
    }
  }
  o.expect(compared >= 500, "only " + std::to_string(compared) + " definitive comparisons");
  o.expect(fixed_compared >= 250, "only " + std::to_string(fixed_compared) + " fixed-rate comparisons");
  if (o.pass)
    o.detail = std::to_string(corpus.size()) + " pairs, " + std::to_string(compared) + " definitive comparisons";
  return o;
}

Outcome exclusivity(const std::vector<Pair>& corpus) {
  Outcome o;
  const auto& rows = differential_rows(corpus);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t m = 0; m < corpus[i].modes.size(); ++m) {
      const Kind neg = rows[i].negated[m], pos = rows[i].plain[m];
      o.expect(!(neg == Kind::unsat && pos == Kind::unsat), "both UNSAT on pair " + std::to_string(i));
      if (rows[i].oracle.definitive())
        o.expect(!(neg == Kind::sat && pos == Kind::sat), "both SAT on pair " + std::to_string(i));
    }
  return o;
}

std::string iota_mismatch_query(const IotaMode& mode, const Trace& trace, const Real& t, std::size_t expected) {
  std::size_t counter = 0;
  IotaTerm it = translate_iota(mode, trace, to_smt_real(t), counter);
  SmtScript s;
  for (const auto& k : it.fresh) s.declarations.push_back("(declare-const " + k + " Int)");
  s.assertions = it.constraints;
  s.assertions.push_back("(not (= " + it.expr + " " + std::to_string(expected) + "))");
  return emit(s);
}

Outcome iota_soundness() {
  Outcome o;
  struct Fixture {
    std::string name;
    Trace trace;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({"gyro", testing::gyro()});
  fixtures.push_back({"gyro-A2", apply_a2(testing::gyro(), {})});
  fixtures.push_back({"a1_six-A1", apply_a1(load_trace_file(data_path("a1_six.csv")),
                                            load_preprocess_config(data_path("a1_six.cfg")))});
  testing::Generator g(7);
  for (const auto& fx : fixtures) {
    const Trace& t = fx.trace;
    std::vector<Real> samples;
    for (std::size_t j = 0; j < t.size() && samples.size() < 100; ++j) samples.push_back(t.timestamp(j));
    const Real span = t.last_time() - t.first_time();
    while (samples.size() < 100) samples.push_back(t.first_time() + span * (Real(g.uniform(0, 100000)) / 100000));

    std::vector<std::pair<IotaMode, std::function<std::size_t(const Real&)>>> modes;
    modes.push_back({IotaVariable{}, [&](const Real& x) { return iota_variable(t, x); }});
    if (std::holds_alternative<FixedRate>(t.rate())) {
      IotaFixed f = fixed_mode_for(t);
      modes.push_back({f, [f](const Real& x) { return iota_fixed(f.sr, x, f.origin); }});
    }
    for (const auto& [mode, concrete] : modes) {
      std::atomic<int> bad{0};
      parallel_for(samples.size(), [&](std::size_t i) {
        if (testing::solve_text(iota_mismatch_query(mode, t, samples[i], concrete(samples[i]))).kind != Kind::unsat)
          ++bad;
      });
      o.expect(bad == 0, fx.name + " " + to_string(mode) + ": " + std::to_string(bad.load()) + " mismatches");
    }
  }
  bool any_fixed = false;
  for (const auto& fx : fixtures) any_fixed |= std::holds_alternative<FixedRate>(fx.trace.rate());
  o.expect(any_fixed, "no fixed-rate fixture");
  return o;
}

Outcome preprocessing() {
  Outcome o;
  Trace fig = testing::gyro();
  Trace a2 = apply_a2(fig, {});
  auto rate = std::get_if<FixedRate>(&a2.rate());
  o.expect(rate && rate->sr == dec("0.2"), "A2 trace not classified Fixed(0.2)");
  o.expect(a2.size() == 29, "A2 grid size " + std::to_string(a2.size()));

  for (const Trace& raw : {fig, load_trace_file(data_path("a1_six.csv"))}) {
    Trace a1 = apply_a1(raw, load_preprocess_config(data_path("a1_six.cfg")));
    o.expect(a1.size() == raw.size(), "A1 changed the record count");
    o.expect(a1.is_total(), "A1 left unassigned cells");
    for (std::size_t j = 0; j < raw.size(); ++j) {
      o.expect(a1.timestamp(j) == raw.timestamp(j), "A1 changed timestamp " + std::to_string(j));
      for (std::size_t s = 0; s < raw.signals().size(); ++s)
        if (raw.records()[j].values[s])
          o.expect(a1.records()[j].values[s] == raw.records()[j].values[s],
                   "A1 changed " + raw.signals()[s] + " at record " + std::to_string(j));
    }
  }
  return o;
}

Outcome parser_round_trip() {
  Outcome o;
  testing::Generator g(1000);
  testing::Generator::Options opt;
  opt.oracle_fragment = false;
  const std::set<SignalName> sig(testing::kSignals.begin(), testing::kSignals.end());
  for (int k = 0; k < 1000 && o.pass; ++k) {
    FormulaPtr f = g.formula(opt);
    const std::string text = format(*f);
    try {
      o.expect(equal(*f, *parse(text, sig)), "round trip changed " + text);
    } catch (const ParseError& e) {
      o.fail(text + ": " + e.what());
    }
  }

  FormulaPtr sigma = parse("exists σ0 in [3,5] such that (ang-rate @i σ0) < 2.5", {"ang-rate"});
  FormulaPtr sigma_expect = make_quant(
      Quantifier::exists, Sort::index, "σ0", closed_interval(Real(3), Real(5)),
      make_rel(RelOp::lt, make_at_index("ang-rate", make_var(Sort::index, "σ0")), make_literal(Sort::value, dec("2.5"))));
  o.expect(equal(*sigma, *sigma_expect), "σ0 example shape: " + format(*sigma));

  auto idx = [](const char* v) { return make_var(Sort::index, v); };
  auto lit = [](Sort s, const char* v) { return make_literal(s, dec(v)); };
  FormulaPtr guard = make_binary(
      BoolOp::and_, make_rel(RelOp::eq, make_at_index("mode", idx("σ0")), lit(Sort::value, "0")),
      make_rel(RelOp::eq, make_at_index("mode", make_arith(ArithOp::add, idx("σ0"), lit(Sort::index, "1"))),
               lit(Sort::value, "3")));
  FormulaPtr drop = make_quant(
      Quantifier::exists, Sort::time, "τ0", closed_interval(Real(0), Real(10)),
      make_rel(RelOp::lt,
               make_at_time("ang-rate", make_arith(ArithOp::add, make_var(Sort::time, "τ0"), make_i2t(idx("σ0")))),
               lit(Sort::value, "1.5")));
  FormulaPtr r1_expect = make_quant(Quantifier::forall, Sort::index, "σ0", closed_interval(Real(0), Real(5)),
                                    make_binary(BoolOp::implies, guard, drop));
  FormulaPtr r1 = testing::r1();
  o.expect(equal(*r1, *r1_expect), "R1 shape: " + format(*r1));
  return o;
}

Outcome verdict_map() {
  Outcome o;
  auto make = [](Kind k, SolverOutcome::Resource r = SolverOutcome::Resource::none) {
    SolverOutcome s;
    s.kind = k;
    s.resource = r;
    return verdict(s);
  };
  o.expect(make(Kind::unsat) == Verdict::satisfied(), "unsat");
  o.expect(make(Kind::sat) == Verdict::violated(), "sat");
  o.expect(make(Kind::unknown) == Verdict::unknown(), "unknown");
  o.expect(make(Kind::timeout).kind == Verdict::Kind::inconclusive, "timeout");
  for (auto r : {SolverOutcome::Resource::max_depth, SolverOutcome::Resource::out_of_memory,
                 SolverOutcome::Resource::other})
    o.expect(make(Kind::resource_error, r).kind == Verdict::Kind::inconclusive, "resource error");
  o.expect(parse_solver_output("unsat\n", "", 0).kind == Kind::unsat, "parse unsat");
  o.expect(parse_solver_output("sat\n", "", 0).kind == Kind::sat, "parse sat");
  o.expect(parse_solver_output("unknown\n", "", 0).kind == Kind::unknown, "parse unknown");
  o.expect(parse_solver_output("timeout\n", "", 0).kind == Kind::timeout, "parse timeout");
  o.expect(parse_solver_output("", "out of memory", 1).kind == Kind::resource_error, "parse resource error");
  return o;
}

std::string write_large_trace(const std::string& name, std::size_t n, bool fixed) {
  const std::string path = testing::scratch_dir() + "/" + name;
  std::ofstream out(path);
  out << "timestamp,x,y\n";
  Real t(0);
  for (std::size_t j = 0; j < n; ++j) {
    out << to_decimal_string(t) << "," << (j % 50) << "," << (j % 7 == 0 ? "1" : "") << "\n";
    t += fixed ? Real(1, 10) : Real(static_cast<long>(1 + j % 3), 10);
  }
  return path;
}

Outcome scale_smoke() {
  Outcome o;
  const std::string prop = testing::scratch_dir() + "/scale.hls";
  std::ofstream(prop) << "signal x : real\n"
                         "forall τ0 in [0, 999] such that exists σ0 in [0, 9999] such that (x @t τ0) <= (x @i σ0)\n";
  CheckOptions c = solver_options("scale");
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = run_check("scale", write_large_trace("fixed10k.csv", 10000, true), prop, c);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(r.preprocessed_records == 10000, "preprocessed " + std::to_string(r.preprocessed_records) + " records");
  o.expect(r.verdict == Verdict::satisfied(), "10k verdict " + to_string(r.verdict) + " " + r.error);
  o.expect(elapsed < 60, "10k check took " + std::to_string(elapsed) + " s");

  CheckOptions v = solver_options("cap");
  v.preprocess.strategy = Strategy::a1;
  CheckResult cap = run_check("cap", write_large_trace("variable60k.csv", 60000, false), prop, v);
  o.expect(cap.failed_stage == Stage::translate, "60k variable-rate trace was not refused at translation");
  o.expect(cap.error.find("expansion cap") != std::string::npos, "refusal message: " + cap.error);
  o.expect(!cap.outcome, "solver ran on the 60k trace");
  o.expect(exit_code(cap) == 7, "exit code " + std::to_string(exit_code(cap)));
  if (o.pass) o.detail = "10k check " + std::to_string(elapsed).substr(0, 5) + " s";
  return o;
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace hls

int main() {
  using namespace hls;
  std::vector<Pair> corpus;
  const std::vector<Criterion> criteria = {
      {"iota point check and bracket sweep", 1, iota_point_check},
      {"R1 end-to-end on the gyro trace with A2", 10, r1_end_to_end},
      {"differential suite (solver vs oracle)", 900,
       [&] {
         corpus = random_corpus();
         return differential(corpus);
       }},
      {"exclusivity of phi and not phi", 900, [&] { return exclusivity(corpus); }},
      {"iota encoding soundness", 120, iota_soundness},
      {"preprocessing A2 rate and A1 preservation", 5, preprocessing},
      {"parser round trip and formula shapes", 10, parser_round_trip},
      {"verdict mapping", 1, verdict_map},
      {"scale smoke test and expansion cap", 120, scale_smoke},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > criteria[i].limit_s) o.fail("took " + std::to_string(s) + " s");
    all &= o.pass;
    std::printf("[%s] %zu %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
