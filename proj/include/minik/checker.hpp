#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "minik/ast.hpp"
#include "minik/class_table.hpp"
#include "minik/diagnostic.hpp"
#include "minik/type_ref.hpp"

namespace minik {

enum class CastClassification { FullyChecked, UncheckedWarned, UncheckedSilent };

[[nodiscard]] const char* classification_name(CastClassification c);

/// Fills the type arguments of a bare cast/check target (`as MutableList`)
/// from the source's projection at the target class. Unrelated classes get
/// `Any?` arguments. Targets with arguments are returned unchanged.
[[nodiscard]] TypeRef complete_target(const ClassTable& ct, const TypeRef& source,
                                      const TypeRef& target);

/// True when a class-only runtime check, together with the static type of
/// the operand, is enough to guarantee the full target type.
[[nodiscard]] bool rtti_can_verify(const ClassTable& ct, const TypeRef& source,
                                   const TypeRef& target);

/// The compiler's heuristic: the target's type arguments, projected onto the
/// source's class (or the other way round), equal the source's.
[[nodiscard]] bool cast_arguments_equal(const ClassTable& ct, const TypeRef& source,
                                        const TypeRef& target);

/// Replica of kotlinc's unchecked-cast classifier, flaw included. `target`
/// may be bare; it is completed first.
[[nodiscard]] CastClassification classify_cast_baseline(const ClassTable& ct,
                                                        const TypeRef& source_static,
                                                        const TypeRef& target);

[[nodiscard]] std::vector<Diagnostic> check_variance_positions(const ClassTable& ct,
                                                               const ClassInfo& c);
[[nodiscard]] std::vector<Diagnostic> check_inheritance_variance(const ClassTable& ct,
                                                                 const ClassInfo& c, bool strict);

struct InferenceResult {
  std::optional<std::vector<TypeRef>> type_args;  // in FunctionInfo::type_params order
  std::string error;
};

/// Each type parameter becomes the lub of every argument type constraining it.
[[nodiscard]] InferenceResult infer_call_type_args(const ClassTable& ct, const FunctionInfo& f,
                                                   const std::vector<TypeRef>& arg_types);

/// Where an implicit coercion of an S-typed value to a T-typed slot happened.
enum class CoercionKind { ValDecl, Argument, Return, PropertyAssign };

[[nodiscard]] const char* coercion_kind_name(CoercionKind k);

struct Coercion {
  NodeId expr = 0;  // the coerced expression
  TypeRef from;
  TypeRef to;
  CoercionKind kind = CoercionKind::ValDecl;
  std::string scope;  // function the coercion occurs in
  SourceLoc loc;
};

enum class CallKind { Function, Constructor };

struct CallInfo {
  CallKind kind = CallKind::Function;
  std::string target;  // function or class name
  std::vector<TypeRef> type_args;  // caller's view; may mention caller's params
};

/// Resolution of a member access (method call, index, property).
struct MemberInfo {
  std::string declaring_class;
  std::string member;
  bool is_property = false;
  /// Receiver static type's class; differs from declaring_class for members
  /// inherited from a parent.
  std::string receiver_class;
  /// Declared (unsubstituted) result type is a bare type parameter, so the
  /// erased result is an unchecked reference.
  bool erased_result = false;
  /// Declared (unsubstituted) parameter types, for checkcast placement.
  std::vector<TypeRef> declared_params;
  /// Substituted parameter types as seen at the call site.
  std::vector<TypeRef> param_types;
};

struct CastInfo {
  TypeRef completed_target;
  CastClassification classification = CastClassification::FullyChecked;
};

struct Narrowing {
  NodeId is_expr = 0;
  std::string variable;
  TypeRef declared;
  TypeRef narrowed;
};

/// A function body, method body, or the top-level script.
struct FunctionScope {
  std::string name;
  const Block* body = nullptr;
  std::vector<const Stmt*> top_level;  // script statements when body is null
  std::optional<TypeRef> return_type;
  SourceLoc loc;
};

/// The checker's output: a type for every expression plus side tables the
/// provenance lint and the evaluator consume.
struct TypedProgram {
  std::shared_ptr<const Program> program;
  std::shared_ptr<const ClassTable> table;
  std::unordered_map<NodeId, TypeRef> expr_types;
  std::unordered_map<NodeId, TypeRef> val_types;  // Stmt id of a Val -> binding type
  std::unordered_map<NodeId, CallInfo> calls;
  std::unordered_map<NodeId, MemberInfo> members;
  std::unordered_map<NodeId, CastInfo> casts;
  std::unordered_map<NodeId, TypeRef> is_targets;  // completed
  std::vector<Coercion> coercions;
  std::vector<Narrowing> narrowings;
  std::vector<FunctionScope> scopes;

  [[nodiscard]] const TypeRef& type_of(const Expr& e) const;
};

struct CheckResult {
  TypedProgram typed;
  std::vector<Diagnostic> diagnostics;  // sorted
};

/// Types every expression and runs all checker passes. `strict` adds the
/// variant-inheritance rule and rejects generic smart casts from a variant
/// class to a non-variant one.
[[nodiscard]] CheckResult check_program(std::shared_ptr<const ClassTable> ct,
                                        std::shared_ptr<const Program> program, bool strict);

}  // namespace minik
