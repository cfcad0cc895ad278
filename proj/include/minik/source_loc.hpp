#pragma once

#include <compare>
#include <string>

namespace minik {

/// 1-based position in a source file.
struct SourceLoc {
  std::string file;
  int line = 1;
  int column = 1;

  auto operator<=>(const SourceLoc&) const = default;

  [[nodiscard]] std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

}  // namespace minik
