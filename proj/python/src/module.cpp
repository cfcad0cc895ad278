#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minik/corpus.hpp"
#include "minik/driver.hpp"
#include "minik/parser.hpp"
#include "minik/printer.hpp"
#include "minik/subtyping.hpp"

namespace py = pybind11;

namespace {

py::tuple as_tuple(const minik::CommandResult& r) { return py::make_tuple(r.exit_code, r.output); }

minik::RuntimeMode parse_mode(const std::string& mode) {
  if (mode == "erased") return minik::RuntimeMode::Erased;
  if (mode == "reified") return minik::RuntimeMode::Reified;
  throw py::value_error("mode must be 'erased' or 'reified', got '" + mode + "'");
}

/// Subtyping over the prelude plus the classes declared in `decls`.
bool is_subtype(const std::string& sub, const std::string& super, const std::string& decls) {
  minik::Program program = minik::parse(decls, "<decls>");
  auto table = minik::build_class_table(program);
  if (!table.table) throw py::value_error(minik::render_all(table.diagnostics));
  std::string err;
  auto s = table.table->resolve(minik::parse_type(sub), {}, err, false);
  auto t = s ? table.table->resolve(minik::parse_type(super), {}, err, false) : std::nullopt;
  if (!s || !t) throw py::value_error(err);
  return minik::subtype(*table.table, *s, *t);
}

}  // namespace

PYBIND11_MODULE(_minik, m) {
  m.doc() = "miniK checker, linter and evaluator";

  py::register_exception<minik::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "check",
      [](const std::string& source, const std::string& file, bool strict) {
        return as_tuple(minik::cmd_check(source, file, strict));
      },
      py::arg("source"), py::arg("file") = "<input>", py::arg("strict") = false,
      "Type-check `source`; returns (exit_code, diagnostics).");
  m.def(
      "lint",
      [](const std::string& source, const std::string& file) { return as_tuple(minik::cmd_lint(source, file)); },
      py::arg("source"), py::arg("file") = "<input>");
  m.def(
      "run",
      [](const std::string& source, const std::string& file, const std::string& mode, bool eager) {
        return as_tuple(minik::cmd_run(source, file, {parse_mode(mode), eager}));
      },
      py::arg("source"), py::arg("file") = "<input>", py::arg("mode") = "erased",
      py::arg("eager_checkcast") = false, "Evaluate; output is stdout followed by the outcome line.");
  m.def(
      "sites",
      [](const std::string& source, const std::string& file) { return as_tuple(minik::cmd_sites(source, file)); },
      py::arg("source"), py::arg("file") = "<input>");
  m.def(
      "pretty_print", [](const std::string& source) { return minik::pretty_print(minik::parse(source)); },
      py::arg("source"));
  m.def("is_subtype", &is_subtype, py::arg("sub"), py::arg("super"), py::arg("decls") = "");
  m.def(
      "run_corpus",
      [](const std::string& dir, std::optional<std::string> filter) {
        auto report = minik::run_corpus(minik::load_corpus(dir), filter);
        return py::make_tuple(report.failed == 0 ? 0 : 1, report.text);
      },
      py::arg("dir"), py::arg("filter") = py::none());
}
