#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hls {

/// `key = value` lines in file order. Blank lines and `#` comments are
/// ignored; a line without '=' is an error naming the line number.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::string& path);

}  // namespace hls
