#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace minik {

enum class Variance { Out, In, Inv };

[[nodiscard]] const char* variance_keyword(Variance v);
[[nodiscard]] const char* variance_position_name(Variance v);

/// A static (or, in reified mode, runtime) type.
///
/// Syntactic types coming out of the parser never use Kind::Param: a bare
/// name such as `T` parses as a Class with no arguments and is resolved to a
/// Param once the enclosing type-parameter scope is known.
struct TypeRef {
  enum class Kind { Class, Param, Any, AnyNullable, Int, String, Boolean, Unit };

  Kind kind = Kind::AnyNullable;
  std::string name;  // Class and Param only
  std::vector<TypeRef> args;  // Class only

  static TypeRef make_class(std::string name, std::vector<TypeRef> args = {});
  static TypeRef param(std::string name);
  static TypeRef any() { return TypeRef{Kind::Any, {}, {}}; }
  static TypeRef any_nullable() { return TypeRef{Kind::AnyNullable, {}, {}}; }
  static TypeRef int_() { return TypeRef{Kind::Int, {}, {}}; }
  static TypeRef string() { return TypeRef{Kind::String, {}, {}}; }
  static TypeRef boolean() { return TypeRef{Kind::Boolean, {}, {}}; }
  static TypeRef unit() { return TypeRef{Kind::Unit, {}, {}}; }

  [[nodiscard]] bool is_class() const { return kind == Kind::Class; }
  [[nodiscard]] bool is_param() const { return kind == Kind::Param; }
  [[nodiscard]] bool is_primitive() const {
    return kind == Kind::Int || kind == Kind::String || kind == Kind::Boolean ||
           kind == Kind::Unit;
  }
  /// True for types whose JVM erasure is a concrete class (not a top type
  /// and not a type parameter).
  [[nodiscard]] bool is_specific_class() const {
    return is_class() || kind == Kind::Int || kind == Kind::String || kind == Kind::Boolean;
  }
  /// Name of the runtime class this type erases to; empty for tops/params/Unit.
  [[nodiscard]] std::string erased_class() const;
  [[nodiscard]] bool mentions_param() const;

  [[nodiscard]] std::string str() const;

  bool operator==(const TypeRef&) const = default;
  /// Arbitrary total order, for ordered containers.
  bool operator<(const TypeRef& other) const;
};

using Substitution = std::map<std::string, TypeRef>;

/// Replaces every Param whose name is bound in `subst`.
[[nodiscard]] TypeRef substitute(const TypeRef& t, const Substitution& subst);

[[nodiscard]] std::string join_types(const std::vector<TypeRef>& types, const char* sep = ", ");

}  // namespace minik
