#pragma once

#include <optional>
#include <string>

#include "minik/class_table.hpp"
#include "minik/type_ref.hpp"

namespace minik {

/// Instantiation of `ancestor` reached from class type `t` by substituting
/// type arguments through declared supertypes; nullopt if `ancestor` is not
/// a supertype class of `t` (or `t` is not a class type).
[[nodiscard]] std::optional<TypeRef> supertype_instantiation(const ClassTable& ct, const TypeRef& t,
                                                             const std::string& ancestor);

/// Variance-aware nominal subtyping. `Any?` is the top, `Any` is above
/// everything except `Any?` and type parameters.
[[nodiscard]] bool subtype(const ClassTable& ct, const TypeRef& s, const TypeRef& t);

/// Least common supertype. Ties between incomparable nominal candidates are
/// broken toward the unique minimal class (not interface), else `Any`.
[[nodiscard]] TypeRef lub(const ClassTable& ct, const TypeRef& s, const TypeRef& t);

}  // namespace minik
