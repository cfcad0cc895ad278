#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "minik/ast.hpp"

namespace minik {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& message)
      : std::runtime_error(loc.str() + ": " + message), loc_(std::move(loc)), message_(message) {}

  [[nodiscard]] const SourceLoc& loc() const { return loc_; }
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  SourceLoc loc_;
  std::string message_;
};

/// Parses a miniK compilation unit. Throws ParseError.
[[nodiscard]] Program parse(std::string_view source, const std::string& file = "<input>");

/// Parses a single type such as `MutableList<A>` or `Any?`. Throws ParseError.
[[nodiscard]] TypeRef parse_type(std::string_view source);

}  // namespace minik
