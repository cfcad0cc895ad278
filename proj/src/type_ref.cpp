#include "minik/type_ref.hpp"

#include <algorithm>

namespace minik {

const char* variance_keyword(Variance v) {
  switch (v) {
    case Variance::Out: return "out";
    case Variance::In: return "in";
    case Variance::Inv: return "";
  }
  return "";
}

const char* variance_position_name(Variance v) {
  switch (v) {
    case Variance::Out: return "out";
    case Variance::In: return "in";
    case Variance::Inv: return "invariant";
  }
  return "";
}

TypeRef TypeRef::make_class(std::string name, std::vector<TypeRef> args) {
  return TypeRef{Kind::Class, std::move(name), std::move(args)};
}

TypeRef TypeRef::param(std::string name) { return TypeRef{Kind::Param, std::move(name), {}}; }

std::string TypeRef::erased_class() const {
  switch (kind) {
    case Kind::Class: return name;
    case Kind::Int: return "Int";
    case Kind::String: return "String";
    case Kind::Boolean: return "Boolean";
    default: return {};
  }
}

bool TypeRef::mentions_param() const {
  if (is_param()) return true;
  for (const auto& a : args) {
    if (a.mentions_param()) return true;
  }
  return false;
}

std::string TypeRef::str() const {
  switch (kind) {
    case Kind::Class:
      if (args.empty()) return name;
      return name + "<" + join_types(args) + ">";
    case Kind::Param: return name;
    case Kind::Any: return "Any";
    case Kind::AnyNullable: return "Any?";
    case Kind::Int: return "Int";
    case Kind::String: return "String";
    case Kind::Boolean: return "Boolean";
    case Kind::Unit: return "Unit";
  }
  return "?";
}

TypeRef substitute(const TypeRef& t, const Substitution& subst) {
  if (t.is_param()) {
    auto it = subst.find(t.name);
    return it == subst.end() ? t : it->second;
  }
  if (!t.is_class() || t.args.empty()) return t;
  TypeRef out = t;
  for (auto& a : out.args) a = substitute(a, subst);
  return out;
}

std::string join_types(const std::vector<TypeRef>& types, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += sep;
    out += types[i].str();
  }
  return out;
}

bool TypeRef::operator<(const TypeRef& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (name != other.name) return name < other.name;
  return std::lexicographical_compare(args.begin(), args.end(), other.args.begin(), other.args.end());
}

}  // namespace minik
