#pragma once

#include <string>
#include <vector>

#include "minik/source_loc.hpp"

namespace minik {

enum class DiagCode {
  UncheckedCast,             // W-UNCHECKED-CAST
  RedundantIs,               // W-REDUNDANT-IS
  VariantInheritance,        // W-VARIANT-INHERITANCE
  ProvenanceUncheckedCast,   // W-PROVENANCE-UNCHECKED-CAST
  VariancePosition,          // E-VARIANCE-POSITION
  GenericIs,                 // E-GENERIC-IS
  Type,                      // E-TYPE
  Table,                     // E-TABLE
};

enum class Severity { Warning, Error };

[[nodiscard]] const char* code_name(DiagCode code);
[[nodiscard]] Severity severity_of(DiagCode code);

struct Diagnostic {
  DiagCode code;
  SourceLoc loc;
  std::string message;

  [[nodiscard]] Severity severity() const { return severity_of(code); }
  [[nodiscard]] bool is_error() const { return severity() == Severity::Error; }
  /// `<severity> <code> <file>:<line>:<col>: <message>`
  [[nodiscard]] std::string render() const;
};

void sort_diagnostics(std::vector<Diagnostic>& diags);
[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diags);
[[nodiscard]] std::string render_all(const std::vector<Diagnostic>& diags);

}  // namespace minik
