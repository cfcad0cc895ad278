#include "minik/subtyping.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace minik {
namespace {

Substitution bind_params(const ClassInfo& c, const TypeRef& t) {
  Substitution s;
  for (std::size_t i = 0; i < c.type_params.size() && i < t.args.size(); ++i) {
    s[c.type_params[i].name] = t.args[i];
  }
  return s;
}

/// `t` and every supertype instantiation reachable from it, breadth first.
std::vector<TypeRef> nominal_ancestors(const ClassTable& ct, const TypeRef& t) {
  std::vector<TypeRef> out;
  std::deque<TypeRef> work{t};
  std::set<std::string> seen;
  while (!work.empty()) {
    TypeRef cur = std::move(work.front());
    work.pop_front();
    if (!seen.insert(cur.name).second) continue;
    const ClassInfo* c = ct.find_class(cur.name);
    out.push_back(cur);
    if (!c) continue;
    const Substitution s = bind_params(*c, cur);
    for (const auto& sup : c->supertypes) work.push_back(substitute(sup.type, s));
  }
  return out;
}

bool nullable_like(const TypeRef& t) { return t.kind == TypeRef::Kind::AnyNullable || t.is_param(); }

}  // namespace

std::optional<TypeRef> supertype_instantiation(const ClassTable& ct, const TypeRef& t,
                                               const std::string& ancestor) {
  if (!t.is_class()) return std::nullopt;
  for (auto& a : nominal_ancestors(ct, t)) {
    if (a.name == ancestor) return a;
  }
  return std::nullopt;
}

bool subtype(const ClassTable& ct, const TypeRef& s, const TypeRef& t) {
  using K = TypeRef::Kind;
  if (t.kind == K::AnyNullable) return true;
  if (s == t) return true;
  if (t.kind == K::Any) return !nullable_like(s);
  if (!s.is_class() || !t.is_class()) return false;
  auto inst = supertype_instantiation(ct, s, t.name);
  if (!inst || inst->args.size() != t.args.size()) return false;
  const ClassInfo* c = ct.find_class(t.name);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    const Variance v = c ? c->type_params[i].variance : Variance::Inv;
    const TypeRef& a = inst->args[i];
    const TypeRef& b = t.args[i];
    switch (v) {
      case Variance::Out:
        if (!subtype(ct, a, b)) return false;
        break;
      case Variance::In:
        if (!subtype(ct, b, a)) return false;
        break;
      case Variance::Inv:
        if (a != b) return false;
        break;
    }
  }
  return true;
}

TypeRef lub(const ClassTable& ct, const TypeRef& s, const TypeRef& t) {
  if (subtype(ct, s, t)) return t;
  if (subtype(ct, t, s)) return s;
  if (nullable_like(s) || nullable_like(t)) return TypeRef::any_nullable();
  if (!s.is_class() || !t.is_class()) return TypeRef::any();

  const auto anc_t = nominal_ancestors(ct, t);
  std::vector<TypeRef> candidates;
  for (const auto& a : nominal_ancestors(ct, s)) {
    auto it = std::find_if(anc_t.begin(), anc_t.end(), [&](const TypeRef& b) { return b.name == a.name; });
    if (it == anc_t.end()) continue;
    const ClassInfo* c = ct.find_class(a.name);
    TypeRef joined = TypeRef::make_class(a.name);
    bool ok = true;
    for (std::size_t i = 0; ok && i < a.args.size(); ++i) {
      const TypeRef& x = a.args[i];
      const TypeRef& y = it->args[i];
      switch (c->type_params[i].variance) {
        case Variance::Out:
          joined.args.push_back(lub(ct, x, y));
          break;
        case Variance::In:
          // Needs a greatest lower bound; only comparable arguments have one here.
          if (subtype(ct, x, y)) {
            joined.args.push_back(x);
          } else if (subtype(ct, y, x)) {
            joined.args.push_back(y);
          } else {
            ok = false;
          }
          break;
        case Variance::Inv:
          if (x == y) {
            joined.args.push_back(x);
          } else {
            ok = false;
          }
          break;
      }
    }
    if (ok && std::find(candidates.begin(), candidates.end(), joined) == candidates.end()) {
      candidates.push_back(std::move(joined));
    }
  }

  std::vector<TypeRef> minimal;
  for (const auto& c : candidates) {
    bool has_smaller = std::any_of(candidates.begin(), candidates.end(), [&](const TypeRef& d) {
      return d != c && subtype(ct, d, c);
    });
    if (!has_smaller) minimal.push_back(c);
  }
  if (minimal.size() == 1) return minimal.front();
  std::vector<TypeRef> classes;
  for (const auto& m : minimal) {
    const ClassInfo* c = ct.find_class(m.name);
    if (c && !c->is_interface) classes.push_back(m);
  }
  if (classes.size() == 1) return classes.front();
  return TypeRef::any();
}

}  // namespace minik
