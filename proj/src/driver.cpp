#include "minik/driver.hpp"

#include "minik/parser.hpp"
#include "minik/provenance.hpp"

namespace minik {

Compilation compile(const std::string& source, const std::string& file, bool strict) {
  Compilation c;
  try {
    c.program = std::make_shared<const Program>(parse(source, file));
  } catch (const ParseError& e) {
    c.parse_error = "error: parse " + e.loc().str() + ": " + e.message();
    return c;
  }
  ClassTableResult table = build_class_table(*c.program);
  if (!table.table) {
    c.diagnostics = std::move(table.diagnostics);
    return c;
  }
  c.table = std::make_shared<const ClassTable>(std::move(*table.table));
  CheckResult checked = check_program(c.table, c.program, strict);
  c.typed = std::move(checked.typed);
  c.diagnostics = std::move(checked.diagnostics);
  return c;
}

namespace {

/// Exit code and output for a compilation that cannot go further, if any.
std::optional<CommandResult> rejected(const Compilation& c) {
  if (c.parse_error) return CommandResult{2, *c.parse_error + "\n"};
  if (!c.ok()) return CommandResult{1, render_all(c.diagnostics)};
  return std::nullopt;
}

}  // namespace

CommandResult cmd_check(const std::string& source, const std::string& file, bool strict) {
  Compilation c = compile(source, file, strict);
  if (auto r = rejected(c)) return *r;
  return CommandResult{0, render_all(c.diagnostics)};
}

CommandResult cmd_lint(const std::string& source, const std::string& file) {
  Compilation c = compile(source, file, false);
  if (auto r = rejected(c)) return *r;
  std::vector<Diagnostic> all = c.diagnostics;
  for (auto& d : lint_program(*c.typed)) all.push_back(std::move(d));
  sort_diagnostics(all);
  return CommandResult{0, render_all(all)};
}

CommandResult cmd_run(const std::string& source, const std::string& file, EvalOptions options) {
  Compilation c = compile(source, file, false);
  if (auto r = rejected(c)) return *r;
  RunOutcome out = eval(*c.typed, options);
  return CommandResult{0, out.stdout_text + out.render_outcome() + "\n"};
}

CommandResult cmd_sites(const std::string& source, const std::string& file) {
  Compilation c = compile(source, file, false);
  if (auto r = rejected(c)) return *r;
  std::string out;
  for (const auto& s : checkcast_sites(*c.typed)) out += s.render() + "\n";
  return CommandResult{0, out};
}

}  // namespace minik
