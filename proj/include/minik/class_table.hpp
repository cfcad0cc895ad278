#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minik/ast.hpp"
#include "minik/diagnostic.hpp"
#include "minik/type_ref.hpp"

namespace minik {

inline constexpr const char* kPreludeFile = "prelude.mk";

struct TypeParamInfo {
  std::string name;
  Variance variance = Variance::Inv;
  SourceLoc loc;
};

struct SupertypeInfo {
  TypeRef type;  // instantiation over the subclass's own parameters
  bool unsafe_variance = false;
  SourceLoc loc;
};

struct MethodInfo {
  std::string name;
  std::vector<ParamDecl> params;  // resolved types
  TypeRef return_type;
  bool is_abstract = false;
  SourceLoc loc;
};

struct PropertyInfo {
  std::string name;
  TypeRef type;
  bool is_mutable = false;
  bool unsafe_variance = false;
  bool has_init = false;
  SourceLoc loc;
};

struct ClassInfo {
  std::string name;
  std::vector<TypeParamInfo> type_params;
  bool is_interface = false;
  bool is_open = false;
  bool ctor_private = false;
  bool is_prelude = false;
  std::vector<SupertypeInfo> supertypes;
  std::vector<MethodInfo> methods;
  std::vector<PropertyInfo> properties;
  SourceLoc loc;

  [[nodiscard]] TypeRef self_type() const;
  [[nodiscard]] const MethodInfo* find_method(const std::string& n) const;
  [[nodiscard]] const PropertyInfo* find_property(const std::string& n) const;
  /// Any parameter declared `out` or `in`.
  [[nodiscard]] bool is_variant() const;
  [[nodiscard]] bool has_invariant_param() const;
};

struct FunctionInfo {
  std::string name;
  std::vector<TypeParamInfo> type_params;
  std::vector<ParamDecl> params;  // resolved types
  TypeRef return_type;
  bool is_builtin = false;
  SourceLoc loc;
};

/// Every class, interface and top-level function visible to a program,
/// prelude included. Immutable once built.
class ClassTable {
 public:
  [[nodiscard]] const ClassInfo* find_class(const std::string& name) const;
  [[nodiscard]] const FunctionInfo* find_function(const std::string& name) const;
  [[nodiscard]] const std::map<std::string, ClassInfo>& classes() const { return classes_; }
  [[nodiscard]] const std::map<std::string, FunctionInfo>& functions() const { return functions_; }

  /// True iff `ancestor` is `name` or reachable through declared supertypes.
  [[nodiscard]] bool is_nominal_subclass(const std::string& name, const std::string& ancestor) const;

  /// Resolves a syntactic type: names bound in `type_params` become Params.
  /// Returns nullopt and fills `error` when a name is unknown or an arity is
  /// wrong. Bare generic class names are allowed only if `allow_bare`.
  [[nodiscard]] std::optional<TypeRef> resolve(const TypeRef& syntactic,
                                               const std::vector<std::string>& type_params,
                                               std::string& error, bool allow_bare = false) const;

 private:
  friend struct ClassTableBuilder;
  std::map<std::string, ClassInfo> classes_;
  std::map<std::string, FunctionInfo> functions_;
};

struct ClassTableResult {
  std::optional<ClassTable> table;
  std::vector<Diagnostic> diagnostics;  // E-TABLE; non-empty iff !table
};

/// Source of the builtin declarations every program sees.
[[nodiscard]] const std::string& prelude_source();
[[nodiscard]] const Program& prelude_program();

/// Builds prelude + user declarations, rejecting duplicates, unknown or
/// ill-formed supertypes, inheritance from final classes, and cycles.
[[nodiscard]] ClassTableResult build_class_table(const Program& program);

}  // namespace minik
