#include <gtest/gtest.h>

#include <filesystem>

#include "helpers.hpp"
#include "minik/corpus.hpp"
#include "minik/parser.hpp"
#include "minik/runtime.hpp"

namespace minik {
namespace {

using testing::corpus_source;

Compilation compiled(const std::string& src) {
  Compilation c = compile(src, "t.mk", false);
  if (!c.ok()) throw std::runtime_error(c.parse_error.value_or(render_all(c.diagnostics)));
  return c;
}

RunOutcome run(const std::string& src, RuntimeMode mode = RuntimeMode::Erased, bool eager = false) {
  const Compilation c = compiled(src);
  return eval(*c.typed, EvalOptions{mode, eager});
}

// Last line of the shared prefix every P4 row starts with.
constexpr int kSmuggleEnd = 18;

struct Row {
  const char* id;
  bool checkcast;
};

// One row per context in which a smuggled reference may surface.
const Row kRows[] = {{"P4.1", false}, {"P4.2", true}, {"P4.3", true}, {"P4.4", false}, {"P4.5", false},
                     {"P4.6", true},  {"P4.7", true}, {"P4.8", true}, {"P4.9", false}, {"P4.10", true}};

TEST(Runtime, CheckcastPlacementMatrix) {
  for (const auto& row : kRows) {
    SCOPED_TRACE(row.id);
    const Compilation c = compiled(corpus_source(row.id));
    std::vector<CheckcastSite> row_sites;
    for (const auto& s : checkcast_sites(*c.typed)) {
      if (s.expected_class == "MyClass" && s.loc.line > kSmuggleEnd) row_sites.push_back(s);
    }
    const RunOutcome out = eval(*c.typed);
    const auto* cce = out.cast_exception();
    EXPECT_EQ(!row_sites.empty(), row.checkcast);
    EXPECT_EQ(cce != nullptr, row.checkcast) << out.render_outcome();
    if (cce && !row_sites.empty()) {
      EXPECT_EQ(cce->loc, row_sites.front().loc);
      EXPECT_EQ(cce->expected, "MyClass");
      EXPECT_EQ(cce->actual, "Other");
    }
    if (!cce) EXPECT_TRUE(out.completed()) << out.render_outcome();
  }
}

TEST(Runtime, SiteReasons) {
  auto reasons = [](const char* id) {
    std::vector<std::string> out;
    for (const auto& s : checkcast_sites(*compiled(corpus_source(id)).typed)) {
      if (s.expected_class == "MyClass" && s.loc.line > kSmuggleEnd) out.push_back(site_reason_name(s.reason));
    }
    return out;
  };
  EXPECT_EQ(reasons("P4.2"), std::vector<std::string>{"explicitly-typed declaration"});
  EXPECT_EQ(reasons("P4.3"), std::vector<std::string>{"implicitly-typed declaration"});
  EXPECT_EQ(reasons("P4.6"), std::vector<std::string>{"call argument"});
  EXPECT_EQ(reasons("P4.7"), std::vector<std::string>{"member access on class"});
  EXPECT_EQ(reasons("P4.8"), std::vector<std::string>{"member access from parent class"});
  EXPECT_EQ(reasons("P4.10"), std::vector<std::string>{"return"});
}

TEST(Runtime, P1CrashesAtTheUseSiteInErasedMode) {
  const RunOutcome out = run(corpus_source("P1"));
  ASSERT_NE(out.cast_exception(), nullptr);
  EXPECT_EQ(out.render_outcome(), "ClassCastException: B cannot be cast to A at t.mk:17:1");
}

TEST(Runtime, ReifiedModeCrashesAtTheCast) {
  const RunOutcome out = run(corpus_source("P1"), RuntimeMode::Reified);
  ASSERT_NE(out.cast_exception(), nullptr);
  EXPECT_EQ(out.cast_exception()->loc, (SourceLoc{"t.mk", 12, 9}));
  EXPECT_LT(out.cast_exception()->loc, run(corpus_source("P1")).cast_exception()->loc);
}

TEST(Runtime, EagerCheckcastCrashesAtTheRead) {
  const RunOutcome out = run(corpus_source("P1"), RuntimeMode::Erased, true);
  ASSERT_NE(out.cast_exception(), nullptr);
  EXPECT_EQ(out.cast_exception()->loc, (SourceLoc{"t.mk", 14, 12}));
}

TEST(Runtime, ListsAlias) {
  const std::string src =
      "open class B\nclass A : B()\nval list = mutableListOf<A>()\nval view: List<B> = list\n"
      "val again = view as MutableList\nagain.add(B())\nprintln(list.size)\nprintln(list)\n";
  const RunOutcome out = run(src);
  EXPECT_TRUE(out.completed());
  EXPECT_EQ(out.stdout_text, "1\n[<B@2>]\n");
}

TEST(Runtime, VirtualDispatch) {
  const std::string src =
      "open class B {\n    fun name(): String {\n        return \"B\"\n    }\n}\n"
      "class A : B() {\n    fun name(): String {\n        return \"A\"\n    }\n}\n"
      "val b: B = A()\nprintln(b.name())\n";
  EXPECT_EQ(run(src).stdout_text, "A\n");
}

TEST(Runtime, Faults) {
  const RunOutcome oob = run("val l = mutableListOf<Int>()\nl.get(3)\n");
  const auto* f = std::get_if<outcome::Fault>(&oob.result);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(oob.render_outcome(), "IndexOutOfBoundsException: Index 3 out of bounds for length 0 at t.mk:2:1");
  const RunOutcome uninit = run("class K {\n    var x: Int\n}\nprintln(K().x)\n");
  ASSERT_NE(std::get_if<outcome::Fault>(&uninit.result), nullptr);
  EXPECT_NE(uninit.render_outcome().find("UninitializedPropertyAccessException"), std::string::npos);
}

TEST(Runtime, AnomalyAndPrintln) {
  EXPECT_EQ(run(corpus_source("P1-anomaly")).stdout_text, "false\n");
  const RunOutcome p = run(corpus_source("P1-println"));
  EXPECT_TRUE(p.completed());
  EXPECT_EQ(p.stdout_text, "<B@2>\n");
}

TEST(Runtime, HeapPollutionSurfacesAsWrongClass) {
  const RunOutcome erased = run(corpus_source("P5"));
  EXPECT_EQ(erased.stdout_text, "string\n");
  ASSERT_NE(erased.cast_exception(), nullptr);
  EXPECT_EQ(erased.cast_exception()->actual, "String");
  EXPECT_EQ(erased.cast_exception()->expected, "Int");
  const RunOutcome reified = run(corpus_source("P5"), RuntimeMode::Reified);
  EXPECT_NE(std::get_if<outcome::Fault>(&reified.result), nullptr) << reified.render_outcome();
}

TEST(Runtime, InstanceChecks) {
  const Compilation c = compiled("open class B\nclass A : B()\n");
  const ClassTable& ct = *c.table;
  auto list = std::make_shared<ListObject>();
  list->id = 1;
  list->rtti = Rtti{"ArrayList", std::vector<TypeRef>{parse_type("A")}};
  const Value v{list};
  EXPECT_TRUE(erased_instance_check(ct, v, parse_type("MutableList<Int>")));
  EXPECT_FALSE(instance_check(ct, v, parse_type("MutableList<Int>"), RuntimeMode::Reified));
  EXPECT_TRUE(instance_check(ct, v, parse_type("List<B>"), RuntimeMode::Reified));
  EXPECT_FALSE(instance_check(ct, v, parse_type("MutableList<B>"), RuntimeMode::Reified));
  EXPECT_FALSE(erased_instance_check(ct, Value{std::int64_t{1}}, parse_type("String")));
  EXPECT_TRUE(erased_instance_check(ct, Value{std::string("s")}, parse_type("Any")));
}

TEST(Runtime, SitesAreDeterministic) {
  const Compilation c = compiled(corpus_source("P1"));
  std::string first, second;
  for (const auto& s : checkcast_sites(*c.typed)) first += s.render() + "\n";
  for (const auto& s : checkcast_sites(*c.typed)) second += s.render() + "\n";
  EXPECT_EQ(first, second);
  EXPECT_NE(first.find("t.mk:17:1: CHECKCAST A (member access on class)"), std::string::npos) << first;
}

// Reified checking is strictly stronger: any program the erased runtime lets
// crash with a ClassCastException never completes normally when reified.
TEST(Runtime, ReifiedNeverCompletesWhereErasedCrashes) {
  int crashing = 0;
  for (const auto& entry : load_corpus(MINIK_CORPUS_DIR)) {
    const Compilation c = compile(entry.source, entry.id + ".mk", false);
    if (!c.ok()) continue;
    const RunOutcome erased = eval(*c.typed, {RuntimeMode::Erased, false});
    if (!erased.cast_exception()) continue;
    ++crashing;
    const RunOutcome reified = eval(*c.typed, {RuntimeMode::Reified, false});
    EXPECT_FALSE(reified.completed()) << entry.id;
    if (const auto* r = reified.cast_exception()) EXPECT_LE(r->loc, erased.cast_exception()->loc) << entry.id;
  }
  EXPECT_GE(crashing, 6);
}

}  // namespace
}  // namespace minik
