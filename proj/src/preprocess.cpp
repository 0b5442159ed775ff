#include "hls/preprocess.hpp"

#include "hls/config.hpp"
#include "hls/error.hpp"

#include <algorithm>
#include <fstream>

namespace hls {

const char* to_string(InterpolationKind kind) {
  switch (kind) {
    case InterpolationKind::constant: return "constant";
    case InterpolationKind::linear: return "linear";
    case InterpolationKind::cubic: return "cubic";
  }
  return "?";
}

const char* to_string(Strategy strategy) { return strategy == Strategy::a1 ? "A1" : "A2"; }

InterpolationKind parse_interpolation_kind(const std::string& text) {
  if (text == "constant") return InterpolationKind::constant;
  if (text == "linear") return InterpolationKind::linear;
  if (text == "cubic") return InterpolationKind::cubic;
  throw Error(Stage::preprocess, "unknown interpolation kind '" + text + "' (expected constant, linear or cubic)");
}

Strategy parse_strategy(const std::string& text) {
  if (text == "A1" || text == "a1") return Strategy::a1;
  if (text == "A2" || text == "a2") return Strategy::a2;
  throw Error(Stage::preprocess, "unknown strategy '" + text + "' (expected A1 or A2)");
}

InterpolationKind PreprocessConfig::kind_for(const SignalName& signal) const {
  auto it = per_signal.find(signal);
  return it == per_signal.end() ? default_kind : it->second;
}

PreprocessConfig parse_preprocess_config(std::istream& in) {
  PreprocessConfig cfg;
  for (const auto& [key, value] : parse_key_values(in)) {
    if (key.rfind("solver.", 0) == 0) continue;
    if (key == "strategy")
      cfg.strategy = parse_strategy(value);
    else if (key == "default")
      cfg.default_kind = parse_interpolation_kind(value);
    else if (key == "min_sample_rate") {
      auto v = parse_decimal(value);
      if (!v || sgn(*v) <= 0) throw Error(Stage::preprocess, "min_sample_rate must be a positive decimal");
      cfg.min_sample_rate = *v;
    } else
      cfg.per_signal[key] = parse_interpolation_kind(value);
  }
  return cfg;
}

PreprocessConfig load_preprocess_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Stage::io, "cannot open config '" + path + "'");
  return parse_preprocess_config(in);
}

namespace {

int sign(const Real& x) { return sgn(x); }

// Fritsch-Carlson end-point slope (three-point, shape preserving).
Real end_slope(const Real& h0, const Real& h1, const Real& d0, const Real& d1) {
  Real d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(d) != sign(d0)) return Real(0);
  if (sign(d0) != sign(d1) && abs(d) > 3 * abs(d0)) return Real(3 * d0);
  return d;
}

}  // namespace

Interpolant::Interpolant(InterpolationKind kind, std::vector<Sample> samples)
    : kind_(kind), samples_(std::move(samples)) {
  if (samples_.empty()) throw Error(Stage::preprocess, "interpolation needs at least one sample");
  for (std::size_t k = 1; k < samples_.size(); ++k)
    if (!(samples_[k - 1].t < samples_[k].t))
      throw Error(Stage::preprocess, "interpolation samples must be strictly increasing in time");
  if (kind_ != InterpolationKind::cubic || samples_.size() < 2) return;

  const std::size_t n = samples_.size();
  std::vector<Real> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = samples_[k + 1].t - samples_[k].t;
    delta[k] = (samples_[k + 1].v - samples_[k].v) / h[k];
  }
  slopes_.assign(n, Real(0));
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (sign(delta[k - 1]) * sign(delta[k]) <= 0) continue;
    Real w1 = 2 * h[k] + h[k - 1];
    Real w2 = h[k] + 2 * h[k - 1];
    slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

Real Interpolant::operator()(const Real& t) const {
  if (t <= samples_.front().t) return samples_.front().v;
  if (t >= samples_.back().t) return samples_.back().v;
  // Greatest k with samples_[k].t <= t; k + 1 exists because t < last time.
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](const Real& x, const Sample& s) { return x < s.t; });
  const std::size_t k = static_cast<std::size_t>(it - samples_.begin()) - 1;
  const Sample& a = samples_[k];
  const Sample& b = samples_[k + 1];
  if (t == a.t || kind_ == InterpolationKind::constant) return a.v;
  const Real h = b.t - a.t;
  const Real s = (t - a.t) / h;
  if (kind_ == InterpolationKind::linear) return a.v + (b.v - a.v) * s;

  const Real s2 = s * s, s3 = s2 * s;
  const Real h00 = 2 * s3 - 3 * s2 + 1;
  const Real h10 = s3 - 2 * s2 + s;
  const Real h01 = -2 * s3 + 3 * s2;
  const Real h11 = s3 - s2;
  return Real(h00 * a.v + h10 * h * slopes_[k] + h01 * b.v + h11 * h * slopes_[k + 1]);
}

Real interpolate(InterpolationKind kind, std::span<const Sample> samples, const Real& t) {
  return Interpolant(kind, std::vector<Sample>(samples.begin(), samples.end()))(t);
}

Trace filter_unused(const Trace& trace, const std::set<SignalName>& used) {
  std::vector<SignalName> signals;
  std::vector<std::size_t> slots;
  for (const auto& name : used)
    if (!trace.has_signal(name)) throw Error(Stage::signature, "signal '" + name + "' not present in trace");
  for (std::size_t k = 0; k < trace.signals().size(); ++k) {
    if (used.count(trace.signals()[k])) {
      signals.push_back(trace.signals()[k]);
      slots.push_back(k);
    }
  }
  std::vector<Record> kept;
  for (const auto& r : trace.records()) {
    Record out;
    out.timestamp = r.timestamp;
    bool relevant = slots.empty();  // signal-free properties still see every timestamp
    for (std::size_t slot : slots) {
      relevant = relevant || r.values[slot].has_value();
      out.values.push_back(r.values[slot]);
    }
    if (relevant) kept.push_back(std::move(out));
  }
  if (kept.empty()) throw Error(Stage::preprocess, "no relevant records");
  return Trace(std::move(signals), std::move(kept));
}

namespace {

std::vector<Interpolant> build_interpolants(const Trace& trace, const PreprocessConfig& cfg) {
  std::vector<Interpolant> out;
  out.reserve(trace.signals().size());
  for (std::size_t k = 0; k < trace.signals().size(); ++k) {
    std::vector<Sample> samples;
    for (const auto& r : trace.records())
      if (r.values[k]) samples.push_back({r.timestamp, *r.values[k]});
    if (samples.empty())
      throw Error(Stage::preprocess, "signal '" + trace.signals()[k] + "' has no assigned samples");
    out.emplace_back(cfg.kind_for(trace.signals()[k]), std::move(samples));
  }
  return out;
}

}  // namespace

Trace apply_a1(const Trace& trace, const PreprocessConfig& cfg) {
  const auto interpolants = build_interpolants(trace, cfg);
  std::vector<Record> records = trace.records();
  for (auto& r : records)
    for (std::size_t k = 0; k < r.values.size(); ++k)
      if (!r.values[k]) r.values[k] = interpolants[k](r.timestamp);
  return Trace(trace.signals(), std::move(records));
}

Real min_gap(const Trace& trace) {
  if (trace.size() < 2) throw Error(Stage::preprocess, "A2 requires at least two records");
  Real best = trace.timestamp(1) - trace.timestamp(0);
  for (std::size_t j = 2; j < trace.size(); ++j) best = std::min<Real>(best, trace.timestamp(j) - trace.timestamp(j - 1));
  return best;
}

Trace apply_a2(const Trace& trace, const PreprocessConfig& cfg) {
  const Real sr = min_gap(trace);
  if (sr < cfg.min_sample_rate)
    throw Error(Stage::preprocess, "degenerate sample rate " + to_decimal_string(sr));
  const auto interpolants = build_interpolants(trace, cfg);
  const Real t0 = trace.first_time();
  const auto steps = floor_div(trace.last_time() - t0, sr).get_num().get_ui();

  std::vector<Record> records;
  records.reserve(steps + 1);
  for (unsigned long k = 0; k <= steps; ++k) {
    Record r;
    r.timestamp = t0 + sr * k;
    r.values.reserve(interpolants.size());
    for (const auto& f : interpolants) r.values.emplace_back(f(r.timestamp));
    records.push_back(std::move(r));
  }
  return Trace(trace.signals(), std::move(records));
}

Trace preprocess(const Trace& trace, const PreprocessConfig& cfg) {
  return cfg.strategy == Strategy::a1 ? apply_a1(trace, cfg) : apply_a2(trace, cfg);
}

}  // namespace hls
