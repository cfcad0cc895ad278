#include "minik/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace minik {

namespace fs = std::filesystem;

const char* column_name(CorpusColumn c) {
  switch (c) {
    case CorpusColumn::CheckBaseline: return "check-baseline";
    case CorpusColumn::CheckStrict: return "check-strict";
    case CorpusColumn::Lint: return "lint";
    case CorpusColumn::RunErased: return "run-erased";
    case CorpusColumn::RunReified: return "run-reified";
    case CorpusColumn::Sites: return "sites";
  }
  return "?";
}

std::string render_column(CorpusColumn column, const std::string& source, const std::string& file) {
  CommandResult r;
  switch (column) {
    case CorpusColumn::CheckBaseline: r = cmd_check(source, file, false); break;
    case CorpusColumn::CheckStrict: r = cmd_check(source, file, true); break;
    case CorpusColumn::Lint: r = cmd_lint(source, file); break;
    case CorpusColumn::RunErased: r = cmd_run(source, file, {RuntimeMode::Erased, false}); break;
    case CorpusColumn::RunReified: r = cmd_run(source, file, {RuntimeMode::Reified, false}); break;
    case CorpusColumn::Sites: r = cmd_sites(source, file); break;
  }
  return "exit " + std::to_string(r.exit_code) + "\n" + r.output;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::optional<CorpusColumn> column_from_header(const std::string& line) {
  for (CorpusColumn c : kCorpusColumns) {
    if (line == std::string("== ") + column_name(c) + " ==") return c;
  }
  return std::nullopt;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string first_diff(const std::string& expected, const std::string& actual) {
  const auto e = split_lines(expected);
  const auto a = split_lines(actual);
  for (std::size_t i = 0; i < std::max(e.size(), a.size()); ++i) {
    const std::string want = i < e.size() ? e[i] : "<end of output>";
    const std::string got = i < a.size() ? a[i] : "<end of output>";
    if (want != got) {
      return "line " + std::to_string(i + 1) + ": expected `" + want + "`, got `" + got + "`";
    }
  }
  return "trailing newline differs";
}

std::string file_name(const CorpusEntry& e) { return e.id + ".mk"; }

}  // namespace

std::map<CorpusColumn, std::string> parse_golden(const std::string& text, std::vector<std::string>* header) {
  std::map<CorpusColumn, std::string> out;
  std::optional<CorpusColumn> current;
  for (const auto& line : split_lines(text)) {
    if (auto c = column_from_header(line)) {
      current = c;
      out[*c];
      continue;
    }
    if (!current) {
      if (header && line.rfind('#', 0) == 0) header->push_back(line);
      continue;
    }
    out[*current] += line + "\n";
  }
  return out;
}

std::string serialize_golden(const CorpusEntry& entry) {
  std::string out;
  for (const auto& h : entry.header) out += h + "\n";
  for (CorpusColumn c : kCorpusColumns) {
    out += std::string("== ") + column_name(c) + " ==\n";
    auto it = entry.expected.find(c);
    if (it != entry.expected.end()) out += it->second;
  }
  return out;
}

bool corpus_id_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const unsigned long na = std::stoul(a.substr(i, ie - i));
      const unsigned long nb = std::stoul(b.substr(j, je - j));
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

bool corpus_filter_matches(const std::string& id, const std::string& filter) {
  if (id == filter) return true;
  if (id.size() <= filter.size() || id.compare(0, filter.size(), filter) != 0) return false;
  const char next = id[filter.size()];
  return next == '.' || next == '-';
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir) {
  std::vector<CorpusEntry> out;
  for (const auto& f : fs::directory_iterator(dir)) {
    if (f.path().extension() != ".mk") continue;
    CorpusEntry e;
    e.id = f.path().stem().string();
    e.source_path = f.path();
    e.golden_path = fs::path(f.path()).replace_extension(".golden");
    e.source = read_file(e.source_path);
    if (fs::exists(e.golden_path)) e.expected = parse_golden(read_file(e.golden_path), &e.header);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return corpus_id_less(a.id, b.id); });
  return out;
}

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, const std::optional<std::string>& filter) {
  CorpusReport report;
  std::ostringstream text;
  for (const auto& e : entries) {
    if (filter && !corpus_filter_matches(e.id, *filter)) continue;
    ++report.total;
    std::optional<std::string> diff;
    for (CorpusColumn c : kCorpusColumns) {
      const std::string actual = render_column(c, e.source, file_name(e));
      auto it = e.expected.find(c);
      const bool pass = it != e.expected.end() && it->second == actual;
      text << e.id << " " << column_name(c) << " " << (pass ? "PASS" : "FAIL") << "\n";
      if (!pass && !diff) {
        diff = std::string(column_name(c)) + " " +
               (it == e.expected.end() ? std::string("missing from golden") : first_diff(it->second, actual));
      }
    }
    if (diff) {
      ++report.failed;
      text << "  " << e.id << " first diff: " << *diff << "\n";
    }
  }
  text << "total=" << report.total << " failed=" << report.failed << "\n";
  report.text = text.str();
  return report;
}

void bless_corpus(const std::vector<CorpusEntry>& entries, const std::optional<std::string>& filter) {
  for (auto e : entries) {
    if (filter && !corpus_filter_matches(e.id, *filter)) continue;
    for (CorpusColumn c : kCorpusColumns) e.expected[c] = render_column(c, e.source, file_name(e));
    std::ofstream out(e.golden_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + e.golden_path.string());
    out << serialize_golden(e);
  }
}

}  // namespace minik
