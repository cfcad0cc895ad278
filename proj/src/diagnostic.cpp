#include "minik/diagnostic.hpp"

#include <algorithm>

namespace minik {

const char* code_name(DiagCode code) {
  switch (code) {
    case DiagCode::UncheckedCast: return "W-UNCHECKED-CAST";
    case DiagCode::RedundantIs: return "W-REDUNDANT-IS";
    case DiagCode::VariantInheritance: return "W-VARIANT-INHERITANCE";
    case DiagCode::ProvenanceUncheckedCast: return "W-PROVENANCE-UNCHECKED-CAST";
    case DiagCode::VariancePosition: return "E-VARIANCE-POSITION";
    case DiagCode::GenericIs: return "E-GENERIC-IS";
    case DiagCode::Type: return "E-TYPE";
    case DiagCode::Table: return "E-TABLE";
  }
  return "?";
}

Severity severity_of(DiagCode code) {
  return code_name(code)[0] == 'W' ? Severity::Warning : Severity::Error;
}

std::string Diagnostic::render() const {
  return std::string(severity() == Severity::Warning ? "warning" : "error") + " " +
         code_name(code) + " " + loc.str() + ": " + message;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return a.loc < b.loc;
  });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::string render_all(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) out += d.render() + "\n";
  return out;
}

}  // namespace minik
