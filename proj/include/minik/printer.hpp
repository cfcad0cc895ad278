#pragma once

#include <string>

#include "minik/ast.hpp"

namespace minik {

/// Renders a program as miniK source that re-parses to the same AST.
[[nodiscard]] std::string pretty_print(const Program& program);
[[nodiscard]] std::string pretty_print(const Expr& e);

}  // namespace minik
