#include "hls/error.hpp"
#include "hls/trace.hpp"

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace hls {
namespace {

using testing::gyro;
using testing::trace_from_csv;

Real dec(const char* s) { return *parse_decimal(s); }

std::string load_error(const std::string& csv) {
  try {
    trace_from_csv(csv);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(Trace, LoadsGyro) {
  Trace t = gyro();
  EXPECT_EQ(t.last_index(), 6u);
  EXPECT_EQ(t.signals(), (std::vector<SignalName>{"mode", "ang-rate"}));
  EXPECT_EQ(t.timestamp(4), dec("3.0"));
  EXPECT_TRUE(t.is_total());
}

TEST(Trace, HeaderOnlyIsEmpty) { EXPECT_EQ(load_error("timestamp,a\n"), "empty trace"); }

TEST(Trace, RejectsRepeatedTimestamp) {
  EXPECT_EQ(load_error("timestamp,a\n0,1\n0.2,1\n0.2,1\n"), "non-monotonic timestamp at row 3");
}

TEST(Trace, RejectsMalformedCell) { EXPECT_NE(load_error("timestamp,a\n0,abc\n").find("row 1"), std::string::npos); }

TEST(Trace, EmptyCellsAreUnassigned) {
  Trace t = trace_from_csv("timestamp,a,b\n0,1,\n1,,2\n");
  EXPECT_FALSE(t.is_total());
  EXPECT_FALSE(t.records()[0].values[1].has_value());
  EXPECT_EQ(*t.records()[1].values[1], Real(2));
}

TEST(Trace, WriteThenLoadRoundTrips) {
  Trace t = gyro();
  std::ostringstream out;
  write_trace(out, t);
  Trace back = trace_from_csv(out.str());
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    EXPECT_EQ(back.timestamp(j), t.timestamp(j));
    EXPECT_EQ(back.records()[j].values, t.records()[j].values);
  }
  EXPECT_EQ(back.digest(), t.digest());
}

TEST(ClassifyRate, GyroIsVariable) { EXPECT_TRUE(std::holds_alternative<VariableRate>(classify_rate(gyro()))); }

TEST(ClassifyRate, ConstantGapsAreFixed) {
  auto r = classify_rate(trace_from_csv("timestamp,a\n0,1\n0.5,1\n1.0,1\n1.5,1\n"));
  ASSERT_TRUE(std::holds_alternative<FixedRate>(r));
  EXPECT_EQ(std::get<FixedRate>(r).sr, dec("0.5"));
}

TEST(ClassifyRate, WithinTolerance) {
  Trace t = trace_from_csv("timestamp,a\n0,1\n0.5,1\n1.0000001,1\n");
  auto r = classify_rate(t, 1e-6);
  ASSERT_TRUE(std::holds_alternative<FixedRate>(r));
  EXPECT_EQ(std::get<FixedRate>(r).sr, dec("0.5"));
  EXPECT_TRUE(std::holds_alternative<VariableRate>(classify_rate(t, 1e-9)));
}

TEST(Iota, VariableExamples) {
  Trace t = gyro();
  EXPECT_EQ(iota_variable(t, dec("2.5")), 3u);
  EXPECT_EQ(iota_variable(t, Real(0)), 0u);
  EXPECT_EQ(iota_variable(t, dec("5.7")), 6u);
  EXPECT_THROW(iota_variable(t, dec("5.71")), Error);
  EXPECT_THROW(iota_variable(t, dec("-0.1")), Error);
}

TEST(Iota, VariableSweep) {
  Trace t = gyro();
  for (std::size_t j = 0; j < t.size(); ++j) {
    EXPECT_EQ(iota_variable(t, t.timestamp(j)), j);
    if (j + 1 < t.size()) {
      Real mid = (t.timestamp(j) + t.timestamp(j + 1)) / 2;
      EXPECT_EQ(iota_variable(t, mid), j) << "bracket " << j;
    }
  }
}

TEST(Iota, FixedExamples) {
  EXPECT_EQ(iota_fixed(dec("0.5"), dec("1.3")), 2u);
  EXPECT_EQ(iota_fixed(dec("0.5"), dec("1.0")), 2u);
  EXPECT_EQ(iota_fixed(Real(2), Real(0)), 0u);
  EXPECT_EQ(iota_fixed(dec("0.2"), dec("0.6")), 3u);
  EXPECT_EQ(iota_fixed(dec("0.2"), dec("1.3"), dec("0.5")), 4u);
  EXPECT_THROW(iota_fixed(Real(0), Real(1)), Error);
}

TEST(Iota, FixedAgreesWithVariableOnGrid) {
  Trace t = trace_from_csv("timestamp,a\n0.5,1\n0.7,1\n0.9,1\n1.1,1\n");
  for (int k = 0; k <= 60; ++k) {
    Real x = dec("0.5") + Real(k) / 100;
    EXPECT_EQ(iota_fixed(dec("0.2"), x, dec("0.5")), iota_variable(t, x)) << to_decimal_string(x);
  }
}

TEST(ValueAt, Examples) {
  Trace t = gyro();
  EXPECT_EQ(value_at(t, "mode", 4), Real(3));
  EXPECT_EQ(value_at(t, "ang-rate", 3), dec("20.4"));
  EXPECT_THROW(value_at(t, "mode", 7), Error);
  EXPECT_THROW(value_at(t, "speed", 0), Error);
}

TEST(Decimal, ExactParsing) {
  EXPECT_EQ(dec("0.1") * 3, dec("0.3"));
  EXPECT_EQ(dec("1e-3"), Real(1, 1000));
  EXPECT_EQ(dec("-2.50"), Real(-5, 2));
  EXPECT_FALSE(parse_decimal("1.2.3"));
  EXPECT_FALSE(parse_decimal(""));
  EXPECT_EQ(to_smt_real(Real(-2)), "(- 2.0)");
  EXPECT_EQ(to_smt_real(Real(1, 3)), "(/ 1.0 3.0)");
  EXPECT_EQ(to_smt_real(dec("1.5")), "1.5");
}

}  // namespace
}  // namespace hls
