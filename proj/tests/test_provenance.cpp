#include <gtest/gtest.h>

#include "helpers.hpp"
#include "minik/parser.hpp"
#include "minik/provenance.hpp"
#include "properties.hpp"

namespace minik {
namespace {

using testing::corpus_source;

struct Analyzed {
  Compilation c;
  ProvenanceMap prov;
};

Analyzed analyze(const std::string& src, const std::string& scope) {
  Analyzed a{compile(src, "t.mk", false), {}};
  if (!a.c.ok()) throw std::runtime_error(render_all(a.c.diagnostics));
  for (const auto& s : a.c.typed->scopes) {
    if (s.name == scope) a.prov = compute_provenance(*a.c.typed, s);
  }
  return a;
}

std::string set_of(const Analyzed& a, const std::string& var) {
  const TypeSet* s = a.prov.for_variable(var);
  return s ? s->str() : "<none>";
}

std::vector<std::string> lint_of(const std::string& src) {
  const Compilation c = compile(src, "t.mk", false);
  std::vector<std::string> out;
  for (const auto& d : lint_program(*c.typed)) out.push_back(d.render());
  return out;
}

TEST(TypeSet, KeepsFirstReachedOrder) {
  TypeSet s(parse_type("MutableList<A>"));
  EXPECT_FALSE(s.insert(parse_type("MutableList<A>")));
  EXPECT_TRUE(s.insert(parse_type("List<A>")));
  TypeSet t(parse_type("List<B>"));
  t.merge(s);
  EXPECT_EQ(t.str(), "{List<B>, MutableList<A>, List<A>}");
  EXPECT_TRUE(t.includes(s));
  EXPECT_FALSE(s.includes(t));
}

TEST(Provenance, UpcastChainAccumulates) {
  const auto a = analyze(corpus_source("P1"), "getA");
  EXPECT_EQ(set_of(a, "list"), "{MutableList<A>}");
  EXPECT_EQ(set_of(a, "upcast"), "{MutableList<A>, List<A>}");
  EXPECT_EQ(set_of(a, "covariance"), "{MutableList<A>, List<A>, List<B>}");
}

TEST(Provenance, FreshValueHasOnlyItsType) {
  const auto a = analyze("open class B\nclass A : B()\nfun f(): Unit {\n    val x = A()\n}\n", "f");
  EXPECT_EQ(set_of(a, "x"), "{A}");
}

TEST(Provenance, JoinTakesUnionOfBranches) {
  const auto a = analyze(corpus_source("P1-join"), "getA");
  EXPECT_EQ(set_of(a, "covariance"), "{MutableList<A>, List<A>, List<B>}");
}

TEST(Provenance, CallResultsStartFromTheDeclaredReturnType) {
  const auto a = analyze(corpus_source("P1-split"), "getA");
  EXPECT_EQ(set_of(a, "downcast"), "{List<B>, MutableList<B>}");
}

TEST(Lint, FlagsTheSilentCastInP1) {
  const auto d = lint_of(corpus_source("P1"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0],
            "warning W-PROVENANCE-UNCHECKED-CAST t.mk:12:9: unchecked cast: List<B> to MutableList<B>; value was "
            "implicitly cast from MutableList<A>, List<A> (origins: {MutableList<A>, List<A>, List<B>})");
}

TEST(Lint, FlagsJoinAndBranchLocalViews) {
  EXPECT_EQ(lint_of(corpus_source("P1-join")).size(), 1u);
}

TEST(Lint, MissesWhenHistoryCrossesAFunctionBoundary) {
  EXPECT_TRUE(lint_of(corpus_source("P1-split")).empty());
}

TEST(Lint, AddsNothingWhereTheBaselineAlreadyWarns) {
  EXPECT_TRUE(lint_of(corpus_source("P2")).empty());
}

TEST(Lint, QuietOnHonestCasts) {
  const std::string src =
      "open class B\nclass A : B()\nfun f(): Unit {\n    val l = mutableListOf<A>()\n"
      "    val v: List<A> = l\n    val m = v as MutableList<A>\n    val n = v as MutableList\n}\n";
  EXPECT_TRUE(lint_of(src).empty());
}

TEST(Lint, DoesNotChangeBaselineDiagnostics) {
  const Compilation c = compile(corpus_source("P1"), "t.mk", false);
  EXPECT_TRUE(c.diagnostics.empty());
  EXPECT_EQ(lint_program(*c.typed).size(), 1u);
}

constexpr int kInstances = 1000;

TEST(ProvenanceProperties, DroppingCoercionsNeverGrowsSets) {
  auto r = testing::prop_provenance_monotone(21, kInstances);
  EXPECT_TRUE(r.ok(kInstances)) << r.instances << " instances; " << r.first_failure;
}

TEST(ProvenanceProperties, SetsHoldOnlyTypesTheValueHad) {
  auto r = testing::prop_provenance_conservative(22, kInstances);
  EXPECT_TRUE(r.ok(kInstances)) << r.instances << " instances; " << r.first_failure;
}

}  // namespace
}  // namespace minik
