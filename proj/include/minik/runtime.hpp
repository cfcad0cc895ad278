#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minik/checker.hpp"

namespace minik {

enum class RuntimeMode { Erased, Reified };

/// Runtime type information. Erased mode never records type arguments.
struct Rtti {
  std::string class_name;
  std::optional<std::vector<TypeRef>> type_args;

  [[nodiscard]] std::string str() const;
};

struct Value;

struct Object {
  std::uint64_t id = 0;
  Rtti rtti;
  std::map<std::string, Value> fields;
};

struct ListObject {
  std::uint64_t id = 0;
  Rtti rtti;
  std::vector<Value> elements;
};

struct UnitValue {
  bool operator==(const UnitValue&) const = default;
};

/// Objects and lists are shared references; copying a Value aliases.
struct Value {
  std::variant<UnitValue, std::int64_t, bool, std::string, std::shared_ptr<Object>,
               std::shared_ptr<ListObject>>
      data;

  [[nodiscard]] std::string runtime_class() const;
  [[nodiscard]] std::string render() const;
};

namespace outcome {
struct Completed {
  Value value;
};
struct ClassCastException {
  SourceLoc loc;
  std::string expected;
  std::string actual;
};
/// JVM exceptions other than ClassCastException (index out of bounds,
/// uninitialized property).
struct Fault {
  SourceLoc loc;
  std::string exception;
  std::string message;
};
}  // namespace outcome

struct RunOutcome {
  std::variant<outcome::Completed, outcome::ClassCastException, outcome::Fault> result;
  std::string stdout_text;

  [[nodiscard]] bool completed() const {
    return std::holds_alternative<outcome::Completed>(result);
  }
  [[nodiscard]] const outcome::ClassCastException* cast_exception() const {
    return std::get_if<outcome::ClassCastException>(&result);
  }
  /// Last line of `run` output: `completed`, or the exception rendering.
  [[nodiscard]] std::string render_outcome() const;
};

/// Contexts in which erasure inserts a CHECKCAST.
enum class SiteReason {
  ExplicitDeclaration,
  ImplicitDeclaration,
  CallArgument,
  MethodCallOnClass,
  MethodCallFromParent,
  Return,
  ExplicitCast,
};

[[nodiscard]] const char* site_reason_name(SiteReason r);

struct CheckcastSite {
  NodeId expr = 0;  // operand that gets checked
  SourceLoc loc;
  std::string expected_class;
  TypeRef expected_type;  // full static type, used by reified mode
  SiteReason reason = SiteReason::ExplicitDeclaration;

  /// `<file>:<line>:<col>: CHECKCAST <Class> (<reason>)`
  [[nodiscard]] std::string render() const;
};

/// Sorted by location. Pure function of the typed program.
[[nodiscard]] std::vector<CheckcastSite> checkcast_sites(const TypedProgram& typed);

/// `is` semantics: erased compares classes only, reified also compares
/// arguments per variance.
[[nodiscard]] bool instance_check(const ClassTable& ct, const Value& v, const TypeRef& target,
                                  RuntimeMode mode);
[[nodiscard]] inline bool erased_instance_check(const ClassTable& ct, const Value& v,
                                                const TypeRef& target) {
  return instance_check(ct, v, target, RuntimeMode::Erased);
}

struct EvalOptions {
  RuntimeMode mode = RuntimeMode::Erased;
  /// Check every reference read out of a generic container as soon as it
  /// is acquired.
  bool eager_checkcast = false;
};

/// Runs the top-level statements. The program must be free of errors.
[[nodiscard]] RunOutcome eval(const TypedProgram& typed, EvalOptions options = {});

}  // namespace minik
