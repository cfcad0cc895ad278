// Command-line driver: check, lint, run, sites, corpus.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "minik/corpus.hpp"
#include "minik/driver.hpp"

#ifndef MINIK_CORPUS_DIR
#define MINIK_CORPUS_DIR "corpus"
#endif

namespace {

bool read_source(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return false;
  }
  std::ostringstream s;
  s << in.rdbuf();
  out = s.str();
  return true;
}

int emit(const minik::CommandResult& r) {
  std::cout << r.output;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"miniK checker, linter and evaluator"};
  app.require_subcommand(1);

  std::string file;
  bool strict = false;
  auto* check = app.add_subcommand("check", "type-check a program and print diagnostics");
  check->add_option("file", file, "source file")->required();
  check->add_flag("--strict", strict, "enable the variant-inheritance and generic smart-cast rules");

  auto* lint = app.add_subcommand("lint", "check plus the provenance cast lint");
  lint->add_option("file", file, "source file")->required();

  std::string mode = "erased";
  bool eager = false;
  auto* run = app.add_subcommand("run", "evaluate a program");
  run->add_option("file", file, "source file")->required();
  run->add_option("--mode", mode, "runtime type information")->check(CLI::IsMember({"erased", "reified"}));
  run->add_flag("--eager-checkcast", eager, "check every value read from a generic container on acquisition");

  auto* sites = app.add_subcommand("sites", "list the inserted checkcasts");
  sites->add_option("file", file, "source file")->required();

  std::string dir = MINIK_CORPUS_DIR;
  std::string filter;
  bool bless = false;
  auto* corpus = app.add_subcommand("corpus", "run the bundled corpus against its goldens");
  corpus->add_option("--dir", dir, "corpus directory");
  corpus->add_option("--filter", filter, "entry id or id prefix");
  corpus->add_flag("--bless", bless, "rewrite goldens from current behavior");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the parse-error exit code; --help still exits 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*corpus) {
    std::optional<std::string> f;
    if (!filter.empty()) f = filter;
    try {
      auto entries = minik::load_corpus(dir);
      if (bless) {
        minik::bless_corpus(entries, f);
        entries = minik::load_corpus(dir);
      }
      auto report = minik::run_corpus(entries, f);
      std::cout << report.text;
      return report.failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }

  std::string source;
  if (!read_source(file, source)) return 1;
  if (*check) return emit(minik::cmd_check(source, file, strict));
  if (*lint) return emit(minik::cmd_lint(source, file));
  if (*sites) return emit(minik::cmd_sites(source, file));
  minik::EvalOptions options;
  options.mode = mode == "reified" ? minik::RuntimeMode::Reified : minik::RuntimeMode::Erased;
  options.eager_checkcast = eager;
  return emit(minik::cmd_run(source, file, options));
}
