#include "minik/checker.hpp"
#include "minik/subtyping.hpp"

namespace minik {
namespace {

constexpr const char* kFreshPrefix = "#";

TypeRef fresh_instance(const ClassInfo& c) {
  TypeRef t = TypeRef::make_class(c.name);
  for (const auto& tp : c.type_params) t.args.push_back(TypeRef::param(kFreshPrefix + tp.name));
  return t;
}

bool is_fresh(const TypeRef& t) { return t.is_param() && t.name.rfind(kFreshPrefix, 0) == 0; }

/// Binds fresh params in `pattern` against `actual`, ignoring variance.
void unify(const TypeRef& pattern, const TypeRef& actual, Substitution& out) {
  if (is_fresh(pattern)) {
    out.emplace(pattern.name, actual);
    return;
  }
  if (pattern.is_class() && actual.is_class() && pattern.name == actual.name &&
      pattern.args.size() == actual.args.size()) {
    for (std::size_t i = 0; i < pattern.args.size(); ++i) unify(pattern.args[i], actual.args[i], out);
  }
}

Variance compose(Variance outer, Variance param) {
  if (outer == Variance::Inv || param == Variance::Inv) return Variance::Inv;
  if (param == Variance::Out) return outer;
  return outer == Variance::Out ? Variance::In : Variance::Out;
}

/// Collects fresh params that the source pins exactly (invariant positions).
/// Returns false when one param would be pinned to two different types.
bool pin(const ClassTable& ct, const TypeRef& pattern, const TypeRef& actual, Variance pos,
         Substitution& pinned) {
  if (is_fresh(pattern)) {
    if (pos != Variance::Inv) return true;
    auto [it, inserted] = pinned.emplace(pattern.name, actual);
    return inserted || it->second == actual;
  }
  if (!pattern.is_class() || !actual.is_class() || pattern.name != actual.name) return true;
  const ClassInfo* c = ct.find_class(pattern.name);
  for (std::size_t i = 0; c && i < pattern.args.size() && i < actual.args.size(); ++i) {
    if (!pin(ct, pattern.args[i], actual.args[i], compose(pos, c->type_params[i].variance), pinned)) {
      return false;
    }
  }
  return true;
}

}  // namespace

const char* classification_name(CastClassification c) {
  switch (c) {
    case CastClassification::FullyChecked: return "FullyChecked";
    case CastClassification::UncheckedWarned: return "UncheckedWarned";
    case CastClassification::UncheckedSilent: return "UncheckedSilent";
  }
  return "?";
}

TypeRef complete_target(const ClassTable& ct, const TypeRef& source, const TypeRef& target) {
  if (!target.is_class() || !target.args.empty()) return target;
  const ClassInfo* c = ct.find_class(target.name);
  if (!c || c->type_params.empty()) return target;

  if (source.is_class()) {
    if (ct.is_nominal_subclass(target.name, source.name)) {
      const TypeRef fresh = fresh_instance(*c);
      Substitution bound;
      if (auto proj = supertype_instantiation(ct, fresh, source.name)) unify(*proj, source, bound);
      TypeRef out = TypeRef::make_class(target.name);
      for (const auto& a : fresh.args) {
        auto it = bound.find(a.name);
        out.args.push_back(it == bound.end() ? TypeRef::any_nullable() : it->second);
      }
      return out;
    }
    if (auto up = supertype_instantiation(ct, source, target.name)) return *up;
  }
  TypeRef out = TypeRef::make_class(target.name);
  out.args.assign(c->type_params.size(), TypeRef::any_nullable());
  return out;
}

bool rtti_can_verify(const ClassTable& ct, const TypeRef& source, const TypeRef& raw_target) {
  const TypeRef target = complete_target(ct, source, raw_target);
  if (!target.is_class() || target.args.empty()) return true;
  if (subtype(ct, source, target)) return true;
  if (!source.is_class() || !ct.is_nominal_subclass(target.name, source.name)) return false;

  const ClassInfo* c = ct.find_class(target.name);
  const TypeRef fresh = fresh_instance(*c);
  auto proj = supertype_instantiation(ct, fresh, source.name);
  if (!proj) return false;
  Substitution pinned;
  if (!pin(ct, *proj, source, Variance::Out, pinned)) return false;
  for (std::size_t i = 0; i < fresh.args.size(); ++i) {
    auto it = pinned.find(fresh.args[i].name);
    if (it == pinned.end() || it->second != target.args[i]) return false;
  }
  return true;
}

bool cast_arguments_equal(const ClassTable& ct, const TypeRef& source, const TypeRef& target) {
  if (source.is_class() && target.is_class()) {
    if (ct.is_nominal_subclass(target.name, source.name)) {
      auto proj = supertype_instantiation(ct, target, source.name);
      return proj && proj->args == source.args;
    }
    if (ct.is_nominal_subclass(source.name, target.name)) {
      auto proj = supertype_instantiation(ct, source, target.name);
      return proj && proj->args == target.args;
    }
  }
  return source.args == target.args;
}

CastClassification classify_cast_baseline(const ClassTable& ct, const TypeRef& source_static,
                                          const TypeRef& raw_target) {
  const TypeRef target = complete_target(ct, source_static, raw_target);
  if (!target.is_class() || target.args.empty()) return CastClassification::FullyChecked;
  if (rtti_can_verify(ct, source_static, target)) return CastClassification::FullyChecked;
  return cast_arguments_equal(ct, source_static, target) ? CastClassification::UncheckedSilent
                                                          : CastClassification::UncheckedWarned;
}

}  // namespace minik
