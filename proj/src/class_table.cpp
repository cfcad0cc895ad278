#include "minik/class_table.hpp"

#include <deque>
#include <set>

#include "minik/parser.hpp"

namespace minik {

namespace {

const char* const kPrelude = R"(interface List<out T> {
    val size: Int
    fun get(index: Int): T
}
interface MutableList<T> : List<T> {
    fun add(element: T): Unit
    fun set(index: Int, element: T): Unit
}
class ArrayList<T> : MutableList<T>
fun <T> mutableListOf(): MutableList<T>
fun println(value: Any?): Unit
)";

std::vector<std::string> param_names(const std::vector<TypeParamInfo>& tps) {
  std::vector<std::string> out;
  out.reserve(tps.size());
  for (const auto& tp : tps) out.push_back(tp.name);
  return out;
}

}  // namespace

TypeRef ClassInfo::self_type() const {
  std::vector<TypeRef> args;
  for (const auto& tp : type_params) args.push_back(TypeRef::param(tp.name));
  return TypeRef::make_class(name, std::move(args));
}

const MethodInfo* ClassInfo::find_method(const std::string& n) const {
  for (const auto& m : methods) {
    if (m.name == n) return &m;
  }
  return nullptr;
}

const PropertyInfo* ClassInfo::find_property(const std::string& n) const {
  for (const auto& p : properties) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

bool ClassInfo::is_variant() const {
  for (const auto& tp : type_params) {
    if (tp.variance != Variance::Inv) return true;
  }
  return false;
}

bool ClassInfo::has_invariant_param() const {
  for (const auto& tp : type_params) {
    if (tp.variance == Variance::Inv) return true;
  }
  return false;
}

const ClassInfo* ClassTable::find_class(const std::string& name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

const FunctionInfo* ClassTable::find_function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

bool ClassTable::is_nominal_subclass(const std::string& name, const std::string& ancestor) const {
  std::deque<std::string> work{name};
  std::set<std::string> seen;
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    if (cur == ancestor) return true;
    if (!seen.insert(cur).second) continue;
    if (const ClassInfo* c = find_class(cur)) {
      for (const auto& s : c->supertypes) work.push_back(s.type.name);
    }
  }
  return false;
}

std::optional<TypeRef> ClassTable::resolve(const TypeRef& syntactic,
                                           const std::vector<std::string>& type_params,
                                           std::string& error, bool allow_bare) const {
  if (!syntactic.is_class()) return syntactic;
  for (const auto& tp : type_params) {
    if (tp == syntactic.name) {
      if (!syntactic.args.empty()) {
        error = "type parameter '" + tp + "' cannot have type arguments";
        return std::nullopt;
      }
      return TypeRef::param(tp);
    }
  }
  const ClassInfo* c = find_class(syntactic.name);
  if (!c) {
    error = "unresolved reference: " + syntactic.name;
    return std::nullopt;
  }
  if (syntactic.args.empty() && allow_bare) return syntactic;
  if (syntactic.args.size() != c->type_params.size()) {
    error = std::to_string(c->type_params.size()) + " type argument(s) expected for " + c->name;
    return std::nullopt;
  }
  TypeRef out = TypeRef::make_class(syntactic.name);
  for (const auto& a : syntactic.args) {
    auto r = resolve(a, type_params, error, false);
    if (!r) return std::nullopt;
    out.args.push_back(std::move(*r));
  }
  return out;
}

const std::string& prelude_source() {
  static const std::string src = kPrelude;
  return src;
}

const Program& prelude_program() {
  static const Program p = parse(prelude_source(), kPreludeFile);
  return p;
}

struct ClassTableBuilder {
  ClassTable table;
  std::vector<Diagnostic> diags;

  void error(const SourceLoc& loc, std::string msg) {
    diags.push_back(Diagnostic{DiagCode::Table, loc, std::move(msg)});
  }

  std::vector<TypeParamInfo> type_params(const std::vector<TypeParamDecl>& decls) {
    std::vector<TypeParamInfo> out;
    std::set<std::string> seen;
    for (const auto& tp : decls) {
      if (!seen.insert(tp.name).second) {
        error(tp.loc, "conflicting type parameter name '" + tp.name + "'");
        continue;
      }
      out.push_back(TypeParamInfo{tp.name, tp.variance, tp.loc});
    }
    return out;
  }

  /// First pass: names and type-parameter arities.
  void declare(const Program& p, bool prelude) {
    for (const auto& d : p.decls) {
      if (const auto* c = std::get_if<ClassDecl>(&d)) {
        if (table.classes_.count(c->name)) {
          error(c->loc, "redeclaration: class '" + c->name + "'" +
                            (table.classes_.at(c->name).is_prelude ? " is already declared in the prelude" : ""));
          continue;
        }
        ClassInfo info;
        info.name = c->name;
        info.is_interface = c->is_interface;
        info.is_open = c->is_open || c->is_interface;
        info.ctor_private = c->ctor_private;
        info.is_prelude = prelude;
        info.loc = c->loc;
        for (const auto& tp : c->type_params) info.type_params.push_back(TypeParamInfo{tp.name, tp.variance, tp.loc});
        table.classes_.emplace(c->name, std::move(info));
      }
    }
  }

  void define_class(const ClassDecl& c) {
    ClassInfo& info = table.classes_.at(c.name);
    info.type_params = type_params(c.type_params);
    const auto scope = param_names(info.type_params);
    std::string err;
    int class_supers = 0;
    for (const auto& s : c.supertypes) {
      auto t = table.resolve(s.type, scope, err);
      if (!t) {
        error(s.loc, err);
        continue;
      }
      if (!t->is_class()) {
        error(s.loc, "'" + t->str() + "' cannot be used as a supertype");
        continue;
      }
      const ClassInfo* sup = table.find_class(t->name);
      if (sup->is_interface) {
        if (s.ctor_call) error(s.loc, "interface " + sup->name + " does not have constructors");
      } else {
        ++class_supers;
        if (c.is_interface) {
          error(s.loc, "an interface cannot inherit from a class");
        } else if (!sup->is_open) {
          error(s.loc, "this type is final, so it cannot be inherited from: " + sup->name);
        } else if (!s.ctor_call) {
          error(s.loc, "this type has a constructor, and thus must be initialized here");
        } else if (sup->ctor_private) {
          error(s.loc, "cannot access '<init>': it is private in '" + sup->name + "'");
        }
      }
      info.supertypes.push_back(SupertypeInfo{*t, s.unsafe_variance, s.loc});
    }
    if (class_supers > 1) error(c.loc, "only one class may appear in a supertype list");

    std::set<std::string> members;
    for (const auto& m : c.members) {
      if (const auto* f = std::get_if<FunDecl>(&m)) {
        if (!members.insert(f->name).second) {
          error(f->loc, "conflicting declarations: " + f->name);
          continue;
        }
        if (!f->type_params.empty()) {
          error(f->loc, "generic member functions are not supported");
          continue;
        }
        MethodInfo mi;
        mi.name = f->name;
        mi.loc = f->loc;
        mi.is_abstract = !f->body.has_value();
        if (mi.is_abstract && !c.is_interface && !info.is_prelude) {
          error(f->loc, "function '" + f->name + "' without a body must be abstract");
        }
        bool ok = true;
        for (const auto& p : f->params) {
          auto t = table.resolve(p.type, scope, err);
          if (!t) {
            error(p.loc, err);
            ok = false;
            continue;
          }
          mi.params.push_back(ParamDecl{p.name, *t, p.loc});
        }
        auto rt = table.resolve(f->return_type, scope, err);
        if (!rt) {
          error(f->loc, err);
          ok = false;
        }
        if (ok) {
          mi.return_type = *rt;
          info.methods.push_back(std::move(mi));
        }
      } else {
        const auto& p = std::get<PropertyDecl>(m);
        if (!members.insert(p.name).second) {
          error(p.loc, "conflicting declarations: " + p.name);
          continue;
        }
        auto t = table.resolve(p.type, scope, err);
        if (!t) {
          error(p.loc, err);
          continue;
        }
        if (c.is_interface && p.init) error(p.loc, "property initializers are not allowed in interfaces");
        info.properties.push_back(
            PropertyInfo{p.name, *t, p.is_mutable, p.unsafe_variance, p.init != nullptr, p.loc});
      }
    }
  }

  void define_function(const FunDecl& f, bool prelude) {
    if (table.functions_.count(f.name)) {
      error(f.loc, "conflicting overloads: fun " + f.name);
      return;
    }
    FunctionInfo fi;
    fi.name = f.name;
    fi.loc = f.loc;
    fi.is_builtin = prelude && !f.body;
    if (!f.body && !prelude) error(f.loc, "function '" + f.name + "' must have a body");
    fi.type_params = type_params(f.type_params);
    const auto scope = param_names(fi.type_params);
    std::string err;
    std::set<std::string> names;
    for (const auto& p : f.params) {
      if (!names.insert(p.name).second) error(p.loc, "conflicting parameter name '" + p.name + "'");
      auto t = table.resolve(p.type, scope, err);
      if (!t) {
        error(p.loc, err);
        return;
      }
      fi.params.push_back(ParamDecl{p.name, *t, p.loc});
    }
    auto rt = table.resolve(f.return_type, scope, err);
    if (!rt) {
      error(f.loc, err);
      return;
    }
    fi.return_type = *rt;
    table.functions_.emplace(f.name, std::move(fi));
  }

  void define(const Program& p, bool prelude) {
    for (const auto& d : p.decls) {
      if (const auto* c = std::get_if<ClassDecl>(&d)) {
        const ClassInfo* existing = table.find_class(c->name);
        // Redeclarations were reported in declare(); only the first wins.
        if (existing && existing->loc == c->loc) define_class(*c);
      } else if (const auto* f = std::get_if<FunDecl>(&d)) {
        define_function(*f, prelude);
      }
    }
  }

  void check_cycles() {
    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> mark;
    std::function<bool(const std::string&)> dfs = [&](const std::string& n) {
      Mark& m = mark[n];
      if (m == Mark::Active) return false;
      if (m == Mark::Done) return true;
      m = Mark::Active;
      for (const auto& s : table.classes_.at(n).supertypes) {
        if (!dfs(s.type.name)) return false;
      }
      mark[n] = Mark::Done;
      return true;
    };
    for (const auto& [name, info] : table.classes_) {
      if (mark[name] == Mark::None && !dfs(name)) {
        error(info.loc, "there's a cycle in the inheritance hierarchy for " + name);
        return;
      }
    }
  }
};

ClassTableResult build_class_table(const Program& program) {
  ClassTableBuilder b;
  b.declare(prelude_program(), true);
  b.declare(program, false);
  b.define(prelude_program(), true);
  b.define(program, false);
  if (b.diags.empty()) b.check_cycles();
  ClassTableResult result;
  if (b.diags.empty()) {
    result.table = std::move(b.table);
  } else {
    sort_diagnostics(b.diags);
    result.diagnostics = std::move(b.diags);
  }
  return result;
}

}  // namespace minik
