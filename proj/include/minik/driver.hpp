#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minik/checker.hpp"
#include "minik/runtime.hpp"

namespace minik {

/// Output of a CLI command, kept in-process so the corpus runner and the
/// tests can diff it.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

/// Parse + table + check in one step.
struct Compilation {
  std::shared_ptr<const Program> program;
  std::shared_ptr<const ClassTable> table;  // null when E-TABLE errors occurred
  std::optional<TypedProgram> typed;
  std::vector<Diagnostic> diagnostics;  // sorted; table or checker diagnostics
  std::optional<std::string> parse_error;

  [[nodiscard]] bool ok() const { return typed.has_value() && !has_errors(diagnostics); }
};

[[nodiscard]] Compilation compile(const std::string& source, const std::string& file, bool strict);

[[nodiscard]] CommandResult cmd_check(const std::string& source, const std::string& file, bool strict);
[[nodiscard]] CommandResult cmd_lint(const std::string& source, const std::string& file);
[[nodiscard]] CommandResult cmd_run(const std::string& source, const std::string& file,
                                    EvalOptions options);
[[nodiscard]] CommandResult cmd_sites(const std::string& source, const std::string& file);

}  // namespace minik
