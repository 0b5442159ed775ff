#pragma once

#include <string>

namespace hls {

struct Verdict {
  enum class Kind { satisfied, violated, unknown, inconclusive };

  Kind kind = Kind::inconclusive;
  /// Why a verdict is inconclusive (timeout, max-depth, io-error, ...).
  std::string reason;

  static Verdict satisfied() { return {Kind::satisfied, {}}; }
  static Verdict violated() { return {Kind::violated, {}}; }
  static Verdict unknown() { return {Kind::unknown, {}}; }
  static Verdict inconclusive(std::string reason) { return {Kind::inconclusive, std::move(reason)}; }

  bool definitive() const { return kind == Kind::satisfied || kind == Kind::violated; }
  bool operator==(const Verdict&) const = default;
};

const char* to_string(Verdict::Kind kind);
/// "satisfied", "violated", "unknown" or "inconclusive(<reason>)".
std::string to_string(const Verdict& v);

}  // namespace hls
