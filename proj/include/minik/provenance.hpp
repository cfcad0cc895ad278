#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "minik/checker.hpp"
#include "minik/diagnostic.hpp"

namespace minik {

/// Ordered set of types, in the order they were first reached.
class TypeSet {
 public:
  TypeSet() = default;
  explicit TypeSet(TypeRef t) { insert(std::move(t)); }

  bool insert(TypeRef t);
  void merge(const TypeSet& other);
  [[nodiscard]] bool contains(const TypeRef& t) const;
  [[nodiscard]] bool includes(const TypeSet& other) const;
  [[nodiscard]] const std::vector<TypeRef>& types() const { return types_; }
  [[nodiscard]] std::size_t size() const { return types_.size(); }
  /// `{MutableList<A>, List<A>, List<B>}`
  [[nodiscard]] std::string str() const;

  bool operator==(const TypeSet&) const = default;

 private:
  std::vector<TypeRef> types_;
};

/// Implicit-upcast history of every expression and val binding in one scope.
struct ProvenanceMap {
  std::string scope;
  std::unordered_map<NodeId, TypeSet> exprs;
  std::unordered_map<NodeId, TypeSet> bindings;  // Val stmt id
  std::map<std::string, NodeId> binding_by_name;  // last Val per name, for queries

  [[nodiscard]] const TypeSet* for_variable(const std::string& name) const;
};

[[nodiscard]] ProvenanceMap compute_provenance(const TypedProgram& typed, const FunctionScope& scope);

/// Re-classifies each explicit cast against every origin of its operand.
[[nodiscard]] std::vector<Diagnostic> lint_function(const TypedProgram& typed,
                                                    const FunctionScope& scope,
                                                    const ProvenanceMap& prov);

/// Runs compute_provenance + lint_function over every scope.
[[nodiscard]] std::vector<Diagnostic> lint_program(const TypedProgram& typed);

}  // namespace minik
