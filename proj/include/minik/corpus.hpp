#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minik/driver.hpp"

namespace minik {

enum class CorpusColumn { CheckBaseline, CheckStrict, Lint, RunErased, RunReified, Sites };

inline constexpr std::array<CorpusColumn, 6> kCorpusColumns = {
    CorpusColumn::CheckBaseline, CorpusColumn::CheckStrict, CorpusColumn::Lint,
    CorpusColumn::RunErased,     CorpusColumn::RunReified,  CorpusColumn::Sites};

[[nodiscard]] const char* column_name(CorpusColumn c);

/// Exit code and output of `column` on `source`, as stored in goldens.
[[nodiscard]] std::string render_column(CorpusColumn column, const std::string& source,
                                        const std::string& file);

struct CorpusEntry {
  std::string id;
  std::string source;
  std::filesystem::path source_path;
  std::filesystem::path golden_path;
  /// Comment lines at the top of the golden file, kept across --bless.
  std::vector<std::string> header;
  std::map<CorpusColumn, std::string> expected;
};

/// Loads every `<id>.mk` with its `<id>.golden` from `dir`, ordered by id.
[[nodiscard]] std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

[[nodiscard]] std::string serialize_golden(const CorpusEntry& entry);
[[nodiscard]] std::map<CorpusColumn, std::string> parse_golden(const std::string& text,
                                                               std::vector<std::string>* header);

/// Natural order on ids: P2 < P4.2 < P4.10.
[[nodiscard]] bool corpus_id_less(const std::string& a, const std::string& b);

/// `--filter`: an id matches when it equals the filter or extends it at a
/// `.` or `-` boundary (P4 matches P4.1 .. P4.10 but not P45).
[[nodiscard]] bool corpus_filter_matches(const std::string& id, const std::string& filter);

struct CorpusReport {
  std::string text;
  int total = 0;
  int failed = 0;
};

[[nodiscard]] CorpusReport run_corpus(const std::vector<CorpusEntry>& entries,
                                      const std::optional<std::string>& filter);

/// Rewrites every matching golden from current behavior.
void bless_corpus(const std::vector<CorpusEntry>& entries, const std::optional<std::string>& filter);

}  // namespace minik
