#pragma once

#include <stdexcept>
#include <string>

namespace hls {

/// Pipeline stage an error originates from; the CLI maps these to exit codes.
enum class Stage {
  io,
  trace,
  property,
  signature,
  preprocess,
  translate,
  solver,
  domain,
};

const char* to_string(Stage stage);

class Error : public std::runtime_error {
 public:
  Error(Stage stage, const std::string& message)
      : std::runtime_error(message), stage_(stage) {}

  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

}  // namespace hls
