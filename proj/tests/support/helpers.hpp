#pragma once

// Small conveniences shared by the unit test files.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "minik/driver.hpp"

namespace minik::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& id) { return std::string(MINIK_CORPUS_DIR) + "/" + id + ".mk"; }
inline std::string corpus_source(const std::string& id) { return read_file(corpus_path(id)); }

/// Diagnostics rendered one per line, prelude warnings dropped.
inline std::vector<std::string> user_diags(const Compilation& c) {
  std::vector<std::string> out;
  for (const auto& d : c.diagnostics) {
    if (d.loc.file != kPreludeFile) out.push_back(d.render());
  }
  return out;
}

inline std::vector<std::string> diags_of(const std::string& src, bool strict = false) {
  return user_diags(compile(src, "t.mk", strict));
}

inline bool any_contains(const std::vector<std::string>& lines, const std::string& needle) {
  for (const auto& l : lines) {
    if (l.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace minik::testing
