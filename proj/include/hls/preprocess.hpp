// Record filtering and the two gap-filling strategies: A1 fills unassigned
// cells in place, A2 resamples onto a fixed grid at the minimum observed gap.

#pragma once

#include "hls/real.hpp"
#include "hls/trace.hpp"

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hls {

enum class InterpolationKind { constant, linear, cubic };
enum class Strategy { a1, a2 };

const char* to_string(InterpolationKind kind);
const char* to_string(Strategy strategy);
InterpolationKind parse_interpolation_kind(const std::string& text);
Strategy parse_strategy(const std::string& text);

struct PreprocessConfig {
  Strategy strategy = Strategy::a2;
  InterpolationKind default_kind = InterpolationKind::constant;
  std::map<SignalName, InterpolationKind> per_signal;
  /// Smallest admissible A2 sample rate, in seconds.
  Real min_sample_rate = Real(1, 1000000000);

  InterpolationKind kind_for(const SignalName& signal) const;
};

/// Reads `strategy = A1|A2`, `default = constant|linear|cubic` and
/// `<signal> = <kind>` lines. `#` starts a comment; `solver.*` keys are skipped.
PreprocessConfig parse_preprocess_config(std::istream& in);
PreprocessConfig load_preprocess_config(const std::string& path);

struct Sample {
  Real t;
  Real v;
};

/// Interpolating function through strictly increasing samples. Outside the
/// sample range it clamps to the nearest sample value.
class Interpolant {
 public:
  Interpolant(InterpolationKind kind, std::vector<Sample> samples);

  Real operator()(const Real& t) const;

 private:
  InterpolationKind kind_;
  std::vector<Sample> samples_;
  std::vector<Real> slopes_;  // Hermite derivatives, cubic only.
};

Real interpolate(InterpolationKind kind, std::span<const Sample> samples, const Real& t);

/// Keeps only the columns in `used` and drops records that assign none of them
/// (with `used` empty every record is kept).
Trace filter_unused(const Trace& trace, const std::set<SignalName>& used);

Trace apply_a1(const Trace& trace, const PreprocessConfig& cfg);
Trace apply_a2(const Trace& trace, const PreprocessConfig& cfg);

/// Dispatches on cfg.strategy.
Trace preprocess(const Trace& trace, const PreprocessConfig& cfg);

/// Smallest gap between consecutive timestamps; requires >= 2 records.
Real min_gap(const Trace& trace);

}  // namespace hls
