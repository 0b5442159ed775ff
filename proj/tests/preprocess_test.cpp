#include "hls/error.hpp"
#include "hls/preprocess.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <random>

namespace hls {
namespace {

using testing::data_path;
using testing::gyro;
using testing::trace_from_csv;

Real dec(const char* s) { return *parse_decimal(s); }

PreprocessConfig with_kind(Strategy s, InterpolationKind k) {
  PreprocessConfig c;
  c.strategy = s;
  c.default_kind = k;
  return c;
}

TEST(Filter, DropsRowsAssigningOnlyUnusedSignals) {
  Trace t = trace_from_csv("timestamp,a,b\n0,1,\n1,,2\n2,,3\n3,4,\n");
  Trace f = filter_unused(t, {"a"});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.timestamp(1), Real(3));
  EXPECT_EQ(f.signals(), std::vector<SignalName>{"a"});
}

TEST(Filter, AllSignalsIsIdentity) {
  Trace t = gyro();
  Trace f = filter_unused(t, {"mode", "ang-rate"});
  ASSERT_EQ(f.size(), t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    EXPECT_EQ(f.records()[j].index, j);
    EXPECT_EQ(f.timestamp(j), t.timestamp(j));
    EXPECT_EQ(f.records()[j].values, t.records()[j].values);
  }
}

TEST(Filter, FiveRowFixture) {
  Trace f = filter_unused(load_trace_file(data_path("filter_five.csv")), {"ang-rate"});
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f.timestamp(0), Real(0));
  EXPECT_EQ(f.timestamp(1), Real(2));
  EXPECT_EQ(f.timestamp(2), Real(4));
  EXPECT_EQ(f.records()[2].index, 2u);
  EXPECT_EQ(*f.records()[1].values[0], dec("21.5"));
}

TEST(Filter, UnknownSignalIsSignatureError) {
  try {
    filter_unused(gyro(), {"speed"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.stage(), Stage::signature);
  }
}

TEST(Interpolate, Examples) {
  std::vector<Sample> hold = {{Real(0), Real(5)}, {Real(2), Real(7)}};
  EXPECT_EQ(interpolate(InterpolationKind::constant, hold, dec("1.9")), Real(5));
  std::vector<Sample> line = {{Real(0), Real(0)}, {Real(4), Real(8)}};
  EXPECT_EQ(interpolate(InterpolationKind::linear, line, Real(3)), Real(6));
  std::vector<Sample> wave = {{Real(0), Real(0)}, {Real(1), Real(1)}, {Real(2), Real(0)}, {Real(3), Real(1)}};
  EXPECT_EQ(interpolate(InterpolationKind::cubic, wave, Real(1)), Real(1));
}

TEST(Interpolate, ClampsOutsideSamples) {
  std::vector<Sample> s = {{Real(1), Real(2)}, {Real(3), Real(4)}};
  for (auto k : {InterpolationKind::constant, InterpolationKind::linear, InterpolationKind::cubic}) {
    EXPECT_EQ(interpolate(k, s, Real(0)), Real(2));
    EXPECT_EQ(interpolate(k, s, Real(9)), Real(4));
  }
}

TEST(Interpolate, KnotsAndBoundsProperty) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<Sample> s;
    Real t(0);
    int n = std::uniform_int_distribution<int>(1, 7)(rng);
    for (int k = 0; k < n; ++k) {
      t += Real(std::uniform_int_distribution<int>(1, 20)(rng), 10);
      s.push_back({t, Real(std::uniform_int_distribution<int>(-50, 50)(rng), 10)});
    }
    for (auto kind : {InterpolationKind::constant, InterpolationKind::linear, InterpolationKind::cubic}) {
      Interpolant f(kind, s);
      for (const auto& p : s) EXPECT_EQ(f(p.t), p.v);
      for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        Real mid = (s[k].t + s[k + 1].t) / 2;
        Real lo = std::min(s[k].v, s[k + 1].v), hi = std::max(s[k].v, s[k + 1].v);
        // Piecewise-linear and shape-preserving cubic both stay within the bracket.
        EXPECT_LE(lo, f(mid));
        EXPECT_LE(f(mid), hi);
      }
    }
  }
}

TEST(Interpolate, CubicIsMonotoneOnMonotoneData) {
  std::vector<Sample> s = {{Real(0), Real(0)}, {Real(1), dec("0.1")}, {Real(2), Real(5)}, {Real(3), dec("5.2")},
                           {Real(5), Real(9)}};
  Interpolant f(InterpolationKind::cubic, s);
  Real prev = f(Real(0));
  for (int k = 1; k <= 100; ++k) {
    Real cur = f(Real(k) / 20);
    EXPECT_LE(prev, cur) << k;
    prev = cur;
  }
}

TEST(A1, LinearAndConstantFill) {
  Trace t = trace_from_csv("timestamp,s\n0,1.0\n1,\n2,3.0\n");
  EXPECT_EQ(*apply_a1(t, with_kind(Strategy::a1, InterpolationKind::linear)).records()[1].values[0], Real(2));
  EXPECT_EQ(*apply_a1(t, with_kind(Strategy::a1, InterpolationKind::constant)).records()[1].values[0], Real(1));
}

TEST(A1, SixRowFixture) {
  Trace raw = load_trace_file(data_path("a1_six.csv"));
  PreprocessConfig cfg = load_preprocess_config(data_path("a1_six.cfg"));
  ASSERT_EQ(cfg.strategy, Strategy::a1);
  Trace t = preprocess(raw, cfg);
  // a (linear through (1,2), (3,4), (5,8)); b (hold through (0,1), (2,3), (5,5)).
  const char* a[] = {"2", "2", "3", "4", "6", "8"};
  const char* b[] = {"1", "1", "3", "3", "3", "5"};
  ASSERT_EQ(t.size(), 6u);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(*t.records()[j].values[0], dec(a[j])) << "a at row " << j;
    EXPECT_EQ(*t.records()[j].values[1], dec(b[j])) << "b at row " << j;
  }
}

TEST(A1, SignalWithoutSamplesIsError) {
  Trace t = trace_from_csv("timestamp,a,b\n0,1,\n1,2,\n");
  EXPECT_THROW(apply_a1(t, {}), Error);
}

TEST(A1, PreservesRecordsAndValuesProperty) {
  testing::Generator g(11);
  for (int round = 0; round < 100; ++round) {
    Trace full = g.trace(static_cast<std::size_t>(g.uniform(2, 10)), g.coin());
    std::vector<Record> recs = full.records();
    for (auto& r : recs)
      for (auto& v : r.values)
        if (g.coin(0.4)) v.reset();
    for (std::size_t s = 0; s < full.signals().size(); ++s) recs[0].values[s] = full.records()[0].values[s];
    Trace holes(full.signals(), recs);
    for (auto kind : {InterpolationKind::constant, InterpolationKind::linear, InterpolationKind::cubic}) {
      Trace out = apply_a1(holes, with_kind(Strategy::a1, kind));
      ASSERT_EQ(out.size(), holes.size());
      EXPECT_TRUE(out.is_total());
      for (std::size_t j = 0; j < out.size(); ++j) {
        EXPECT_EQ(out.timestamp(j), holes.timestamp(j));
        for (std::size_t s = 0; s < out.signals().size(); ++s)
          if (holes.records()[j].values[s]) {
            EXPECT_EQ(*out.records()[j].values[s], *holes.records()[j].values[s]);
          }
      }
    }
  }
}

TEST(A2, GyroGrid) {
  Trace t = apply_a2(gyro(), {});
  const auto* rate = std::get_if<FixedRate>(&t.rate());
  ASSERT_NE(rate, nullptr);
  EXPECT_EQ(rate->sr, dec("0.2"));
  EXPECT_EQ(t.size(), 29u);  // 0, 0.2, ..., 5.6
  EXPECT_EQ(t.last_time(), dec("5.6"));
  // Constant hold: value at 3.0 is the record at 3.0; value at 5.6 is held from 4.9.
  EXPECT_EQ(value_at(t, "mode", 15), Real(3));
  EXPECT_EQ(value_at(t, "ang-rate", 28), dec("3.2"));
  EXPECT_EQ(value_at(t, "mode", 14), Real(0));
}

TEST(A2, FixedTotalInputIsFixedPoint) {
  Trace t = trace_from_csv("timestamp,a\n0,1\n0.5,2\n1.0,4\n1.5,3\n");
  for (auto kind : {InterpolationKind::constant, InterpolationKind::linear, InterpolationKind::cubic}) {
    Trace out = apply_a2(t, with_kind(Strategy::a2, kind));
    ASSERT_EQ(out.size(), t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      EXPECT_EQ(out.timestamp(j), t.timestamp(j));
      EXPECT_EQ(out.records()[j].values, t.records()[j].values);
    }
  }
}

TEST(A2, TwoRecordEndpoints) {
  Trace out = apply_a2(trace_from_csv("timestamp,s\n0,0\n1,10\n"), with_kind(Strategy::a2, InterpolationKind::linear));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(*out.records()[0].values[0], Real(0));
  EXPECT_EQ(*out.records()[1].values[0], Real(10));
}

TEST(A2, GridProperty) {
  testing::Generator g(12);
  for (int round = 0; round < 100; ++round) {
    Trace in = g.trace(static_cast<std::size_t>(g.uniform(2, 10)), false);
    Trace out = apply_a2(in, {});
    const Real sr = min_gap(in);
    ASSERT_TRUE(std::holds_alternative<FixedRate>(out.rate()));
    EXPECT_EQ(std::get<FixedRate>(out.rate()).sr, sr);
    EXPECT_EQ(out.first_time(), in.first_time());
    EXPECT_LE(out.last_time(), in.last_time());
    EXPECT_GT(out.last_time() + sr, in.last_time());
    for (std::size_t j = 0; j < out.size(); ++j) {
      EXPECT_EQ(out.timestamp(j), in.first_time() + sr * static_cast<long>(j));
      // Constant hold reproduces the most recent original record.
      const auto& src = in.records()[iota_variable(in, out.timestamp(j))];
      EXPECT_EQ(out.records()[j].values, src.values);
    }
  }
}

TEST(A2, DegenerateInputs) {
  EXPECT_THROW(apply_a2(trace_from_csv("timestamp,a\n0,1\n"), {}), Error);
  PreprocessConfig c;
  c.min_sample_rate = Real(1);
  EXPECT_THROW(apply_a2(trace_from_csv("timestamp,a\n0,1\n0.5,1\n"), c), Error);
}

TEST(Config, ParsesKindsAndSkipsSolverKeys) {
  std::istringstream in("# c\nstrategy = A1\ndefault = linear\nang-rate = cubic\nsolver.cmd = z3\n");
  PreprocessConfig c = parse_preprocess_config(in);
  EXPECT_EQ(c.strategy, Strategy::a1);
  EXPECT_EQ(c.kind_for("mode"), InterpolationKind::linear);
  EXPECT_EQ(c.kind_for("ang-rate"), InterpolationKind::cubic);
  std::istringstream bad("a = spline\n");
  EXPECT_THROW(parse_preprocess_config(bad), Error);
}

}  // namespace
}  // namespace hls
