#include <gtest/gtest.h>

#include "helpers.hpp"
#include "minik/driver.hpp"

namespace minik {
namespace {

using testing::any_contains;
using testing::corpus_source;
using testing::diags_of;

const std::string kAbc = "open class B\nopen class A : B() {\n    fun secret(): Int {\n        return 1\n    }\n}\n";

TEST(Checker, CorpusBaselines) {
  EXPECT_TRUE(diags_of(corpus_source("P1")).empty());
  const auto p2 = diags_of(corpus_source("P2"));
  ASSERT_EQ(p2.size(), 1u);
  EXPECT_EQ(p2[0], "warning W-UNCHECKED-CAST t.mk:11:9: unchecked cast: List<A> to MutableList<B>");
  EXPECT_TRUE(diags_of(corpus_source("P3b")).empty());
  EXPECT_TRUE(any_contains(diags_of(corpus_source("P3a")), "E-VARIANCE-POSITION"));
}

TEST(Checker, TypeMismatch) {
  const auto d = diags_of("val x: Int = \"s\"\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], "error E-TYPE t.mk:1:14: type mismatch: inferred type is String but Int was expected");
  EXPECT_TRUE(any_contains(diags_of(kAbc + "val l: MutableList<B> = mutableListOf<A>()\n"),
                           "inferred type is MutableList<A> but MutableList<B> was expected"));
  EXPECT_TRUE(diags_of(kAbc + "val l: List<B> = mutableListOf<A>()\n").empty());
}

TEST(Checker, Resolution) {
  EXPECT_TRUE(any_contains(diags_of("println(y)\n"), "unresolved reference: y"));
  EXPECT_TRUE(any_contains(diags_of("nope(1)\n"), "unresolved reference: nope"));
  EXPECT_TRUE(any_contains(diags_of(kAbc + "B().secret()\n"), "unresolved reference: secret on B"));
  EXPECT_TRUE(any_contains(diags_of("val a = 1\nval a = 2\n"), "conflicting declarations: val a"));
  EXPECT_TRUE(any_contains(diags_of("class K {\n    val x: Int = 1\n}\nK().x = 2\n"), "val cannot be reassigned: x"));
  EXPECT_TRUE(any_contains(diags_of("return 1\n"), "'return' is not allowed here"));
}

TEST(Checker, Constructors) {
  const std::string priv = "class A private constructor()\n";
  EXPECT_TRUE(any_contains(diags_of(priv + "val a = A()\n"), "cannot access '<init>': it is private in 'A'"));
  EXPECT_TRUE(any_contains(diags_of("interface I\nval i = I()\n"), "interface I does not have constructors"));
  EXPECT_TRUE(any_contains(diags_of("val l = mutableListOf()\n"), "E-TYPE"));
}

TEST(Checker, Functions) {
  EXPECT_TRUE(any_contains(diags_of("fun f(): Int {\n}\n"), "a 'return' expression required"));
  EXPECT_TRUE(any_contains(diags_of("fun f(x: Int): Int {\n    return x\n}\nf(1, 2)\n"), "expected 1 argument(s)"));
  EXPECT_TRUE(any_contains(diags_of("fun f(x: Int): Int {\n    return x\n}\nf(\"s\")\n"), "inferred type is String"));
}

TEST(Checker, InferenceUsesLub) {
  const std::string src =
      "fun <T> pick(a: T, b: T): T {\n    return a\n}\n"
      "val x: Int = pick(1, \"s\")\n";
  EXPECT_TRUE(any_contains(diags_of(src), "inferred type is Any but Int was expected"));
  const std::string ok =
      "fun <T> pick(a: T, b: T): T {\n    return a\n}\n"
      "val x: Any = pick(1, \"s\")\nval y: Int = pick(1, 2)\n";
  EXPECT_TRUE(diags_of(ok).empty());
}

TEST(Checker, SmartCastNarrowsInsideThenBranch) {
  const std::string ok = kAbc + "fun f(x: B): Int {\n    if (x is A) {\n        return x.secret()\n    }\n    return 0\n}\n";
  EXPECT_TRUE(diags_of(ok).empty());
  const std::string outside = kAbc + "fun f(x: B): Int {\n    if (x is A) {\n    }\n    return x.secret()\n}\n";
  EXPECT_TRUE(any_contains(diags_of(outside), "unresolved reference: secret on B"));
}

TEST(Checker, GenericInstanceChecks) {
  const std::string erased = "fun <E> f(l: List<E>): Unit {\n    if (l is MutableList<Int>) {\n    }\n}\n";
  const auto d = diags_of(erased);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], "error E-GENERIC-IS t.mk:2:9: cannot check for instance of erased type: MutableList<Int>");

  const std::string deducible = "fun <E> f(l: List<E>): Unit {\n    if (l is MutableList<E>) {\n    }\n}\n";
  EXPECT_TRUE(diags_of(deducible).empty());
  const auto strict = diags_of(deducible, true);
  EXPECT_TRUE(any_contains(strict, "generic smart cast from variant 'List' to non-variant 'MutableList' is not allowed"));

  EXPECT_TRUE(any_contains(diags_of(kAbc + "val r = A() is B\n"), "W-REDUNDANT-IS"));
}

TEST(Checker, UncheckedCastWarnings) {
  const std::string warned = kAbc + "val l: List<A> = mutableListOf<A>()\nval m = l as MutableList<B>\n";
  EXPECT_TRUE(any_contains(diags_of(warned), "unchecked cast: List<A> to MutableList<B>"));
  const std::string silent = kAbc + "val l: List<B> = mutableListOf<A>()\nval m = l as MutableList<B>\n";
  EXPECT_TRUE(diags_of(silent).empty());
  // Bare targets are completed from the declared type of the binding.
  const std::string bare = kAbc + "val l: List<A> = mutableListOf<A>()\nval m: MutableList<B> = l as MutableList\n";
  EXPECT_TRUE(any_contains(diags_of(bare), "unchecked cast: List<A> to MutableList<B>"));
}

TEST(Checker, IfExpressions) {
  EXPECT_TRUE(any_contains(diags_of("val x = if (1) {\n    1\n} else {\n    2\n}\n"), "condition must be of type Boolean"));
  EXPECT_TRUE(any_contains(diags_of("val x = if (true) {\n    1\n}\n"), "both main and 'else' branches"));
  EXPECT_TRUE(diags_of("val x: Any = if (true) {\n    1\n} else {\n    \"s\"\n}\n").empty());
}

TEST(Checker, VariancePositions) {
  const auto out_in = diags_of("class Box<out T> {\n    fun put(x: T): Unit {\n    }\n}\n");
  ASSERT_FALSE(out_in.empty());
  EXPECT_TRUE(any_contains(out_in, "E-VARIANCE-POSITION"));
  EXPECT_TRUE(any_contains(diags_of("class Box<in T> {\n    fun get(): T {\n        return get()\n    }\n}\n"),
                           "E-VARIANCE-POSITION"));
  EXPECT_TRUE(any_contains(diags_of("class Box<out T> {\n    var x: T\n}\n"), "E-VARIANCE-POSITION"));
  EXPECT_TRUE(diags_of("class Box<out T> {\n    var x: @UnsafeVariance T\n}\n").empty());
}

TEST(Checker, StrictVariantInheritance) {
  const std::string p3c = corpus_source("P3c");
  EXPECT_FALSE(any_contains(diags_of(p3c), "W-VARIANT-INHERITANCE"));
  EXPECT_TRUE(any_contains(diags_of(p3c, true), "W-VARIANT-INHERITANCE"));
  EXPECT_FALSE(any_contains(diags_of(corpus_source("P3c-annotated"), true), "W-VARIANT-INHERITANCE"));
  // The prelude's MutableList inherits from the covariant List.
  const auto strict = compile("", "t.mk", true);
  ASSERT_EQ(strict.diagnostics.size(), 1u);
  EXPECT_EQ(strict.diagnostics[0].code, DiagCode::VariantInheritance);
  EXPECT_EQ(strict.diagnostics[0].loc.file, kPreludeFile);
}

TEST(Checker, AbstractMembers) {
  const std::string src = "interface I {\n    fun m(): Int\n}\nclass K : I\n";
  EXPECT_TRUE(any_contains(diags_of(src), "does not implement abstract member 'm'"));
}

TEST(Checker, DiagnosticsAreSortedAndStable) {
  const std::string src = "val b: Int = \"s\"\nval a: String = 1\nprintln(zz)\n";
  const auto first = diags_of(src);
  ASSERT_EQ(first.size(), 3u);
  EXPECT_NE(first[0].find("t.mk:1:"), std::string::npos);
  EXPECT_NE(first[2].find("t.mk:3:"), std::string::npos);
  EXPECT_EQ(first, diags_of(src));
}

TEST(Checker, TypesEveryExpression) {
  const auto c = compile(corpus_source("P1"), "P1.mk", false);
  ASSERT_TRUE(c.ok());
  for (const auto& decl : c.program->decls) {
    const auto* sd = std::get_if<StmtDecl>(&decl);
    if (!sd) continue;
    const Expr* root = nullptr;
    if (const auto* v = std::get_if<stmt::Val>(&sd->stmt.node)) root = v->init.get();
    if (const auto* x = std::get_if<stmt::ExprStmt>(&sd->stmt.node)) root = x->expr.get();
    ASSERT_NE(root, nullptr);
    visit_exprs(*root, [&](const Expr& e) { EXPECT_TRUE(c.typed->expr_types.count(e.id)) << e.loc.str(); });
  }
}

}  // namespace
}  // namespace minik
