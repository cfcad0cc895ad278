#include "minik/checker.hpp"

namespace minik {
namespace {

Variance compose(Variance outer, Variance param) {
  if (outer == Variance::Inv || param == Variance::Inv) return Variance::Inv;
  if (param == Variance::Out) return outer;
  return outer == Variance::Out ? Variance::In : Variance::Out;
}

const TypeParamInfo* find_param(const ClassInfo& c, const std::string& name) {
  for (const auto& tp : c.type_params) {
    if (tp.name == name) return &tp;
  }
  return nullptr;
}

/// Calls `fn(param, position)` for every occurrence of a type parameter of
/// `owner` in `t`, where `t` itself sits at `pos`.
template <class Fn>
void walk_positions(const ClassTable& ct, const ClassInfo& owner, const TypeRef& t, Variance pos,
                    Fn&& fn) {
  if (t.is_param()) {
    if (const TypeParamInfo* tp = find_param(owner, t.name)) fn(*tp, pos);
    return;
  }
  if (!t.is_class()) return;
  const ClassInfo* c = ct.find_class(t.name);
  if (!c) return;
  for (std::size_t i = 0; i < t.args.size() && i < c->type_params.size(); ++i) {
    walk_positions(ct, owner, t.args[i], compose(pos, c->type_params[i].variance), fn);
  }
}

bool contradicts(Variance declared, Variance pos) {
  return declared != Variance::Inv && declared != pos;
}

const char* declared_name(Variance v) { return v == Variance::Out ? "out" : "in"; }

}  // namespace

std::vector<Diagnostic> check_variance_positions(const ClassTable& ct, const ClassInfo& c) {
  std::vector<Diagnostic> out;
  auto check = [&](const TypeRef& t, Variance pos, const SourceLoc& loc) {
    walk_positions(ct, c, t, pos, [&](const TypeParamInfo& tp, Variance at) {
      if (!contradicts(tp.variance, at)) return;
      out.push_back(Diagnostic{DiagCode::VariancePosition, loc,
                               "type parameter " + tp.name + " is declared as '" +
                                   declared_name(tp.variance) + "' but occurs in '" +
                                   variance_position_name(at) + "' position in type " + t.str()});
    });
  };
  for (const auto& s : c.supertypes) {
    if (!s.unsafe_variance) check(s.type, Variance::Out, s.loc);
  }
  for (const auto& p : c.properties) {
    if (p.unsafe_variance) continue;
    check(p.type, p.is_mutable ? Variance::Inv : Variance::Out, p.loc);
  }
  for (const auto& m : c.methods) {
    for (const auto& p : m.params) check(p.type, Variance::In, p.loc);
    check(m.return_type, Variance::Out, m.loc);
  }
  return out;
}

std::vector<Diagnostic> check_inheritance_variance(const ClassTable& ct, const ClassInfo& c,
                                                   bool strict) {
  std::vector<Diagnostic> out;
  if (!strict) return out;
  for (const auto& s : c.supertypes) {
    if (s.unsafe_variance) continue;
    const ClassInfo* sup = ct.find_class(s.type.name);
    if (!sup) continue;
    bool reported = false;
    for (std::size_t i = 0; i < s.type.args.size() && i < sup->type_params.size() && !reported; ++i) {
      const Variance slot = sup->type_params[i].variance;
      if (slot == Variance::Inv) continue;
      walk_positions(ct, c, s.type.args[i], slot, [&](const TypeParamInfo& tp, Variance at) {
        if (reported || at == Variance::Inv || tp.variance == at) return;
        out.push_back(Diagnostic{
            DiagCode::VariantInheritance, s.loc,
            std::string(tp.variance == Variance::Inv  ? "non-variant"
                        : tp.variance == Variance::In ? "contravariant"
                                                      : "covariant") +
                " '" +
                c.name + "' inherits from variant " + s.type.str() + ": type parameter " + tp.name +
                " fills an '" + variance_position_name(at) + "' parameter of '" + sup->name +
                "'; annotate the supertype with @UnsafeVariance to acknowledge this"});
        reported = true;
      });
    }
  }
  return out;
}

}  // namespace minik
