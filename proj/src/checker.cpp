#include "minik/checker.hpp"

#include <set>

#include "minik/subtyping.hpp"

namespace minik {

const char* coercion_kind_name(CoercionKind k) {
  switch (k) {
    case CoercionKind::ValDecl: return "val";
    case CoercionKind::Argument: return "argument";
    case CoercionKind::Return: return "return";
    case CoercionKind::PropertyAssign: return "property";
  }
  return "?";
}

const TypeRef& TypedProgram::type_of(const Expr& e) const { return expr_types.at(e.id); }

InferenceResult infer_call_type_args(const ClassTable& ct, const FunctionInfo& f,
                                     const std::vector<TypeRef>& arg_types) {
  InferenceResult r;
  if (arg_types.size() != f.params.size()) {
    r.error = "expected " + std::to_string(f.params.size()) + " argument(s) for " + f.name +
              ", found " + std::to_string(arg_types.size());
    return r;
  }
  std::map<std::string, std::vector<TypeRef>> constraints;
  std::function<void(const TypeRef&, const TypeRef&)> collect = [&](const TypeRef& p, const TypeRef& a) {
    if (p.is_param()) {
      constraints[p.name].push_back(a);
      return;
    }
    if (!p.is_class() || p.args.empty()) return;
    auto proj = supertype_instantiation(ct, a, p.name);
    if (!proj) return;
    for (std::size_t i = 0; i < p.args.size() && i < proj->args.size(); ++i) collect(p.args[i], proj->args[i]);
  };
  for (std::size_t i = 0; i < arg_types.size(); ++i) collect(f.params[i].type, arg_types[i]);

  std::vector<TypeRef> out;
  for (const auto& tp : f.type_params) {
    auto it = constraints.find(tp.name);
    if (it == constraints.end()) {
      r.error = "not enough information to infer type variable " + tp.name;
      return r;
    }
    TypeRef t = it->second.front();
    for (std::size_t i = 1; i < it->second.size(); ++i) t = lub(ct, t, it->second[i]);
    out.push_back(std::move(t));
  }
  r.type_args = std::move(out);
  return r;
}

namespace {

constexpr const char* kTopLevel = "<top-level>";

struct Local {
  std::optional<TypeRef> type;  // nullopt when its initializer failed to check
  bool narrowing = false;
};

struct Context {
  std::string scope;
  std::vector<std::string> type_params;
  std::optional<TypeRef> return_type;  // nullopt at top level
  std::optional<TypeRef> this_type;
  std::string enclosing_class;
  std::vector<std::map<std::string, Local>> frames;

  const Local* lookup(const std::string& name) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }
  /// Declared type, skipping narrowing entries.
  std::optional<TypeRef> declared(const std::string& name) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end() && !f->second.narrowing) return f->second.type;
    }
    if (name == "this") return this_type;
    return std::nullopt;
  }
};

struct MemberLookup {
  const ClassInfo* owner = nullptr;
  const MethodInfo* method = nullptr;
  const PropertyInfo* property = nullptr;
  Substitution subst;
};

class Checker {
 public:
  Checker(const ClassTable& ct, const Program& program, bool strict, TypedProgram& out,
          std::vector<Diagnostic>& diags)
      : ct_(ct), program_(program), strict_(strict), out_(out), diags_(diags) {}

  void run() {
    for (const auto& [name, info] : ct_.classes()) {
      append(check_variance_positions(ct_, info));
      append(check_inheritance_variance(ct_, info, strict_));
      if (!info.is_prelude && !info.is_interface) check_abstract_members(info);
    }

    for (const auto& d : program_.decls) {
      if (const auto* c = std::get_if<ClassDecl>(&d)) {
        check_class_bodies(*c);
      } else if (const auto* f = std::get_if<FunDecl>(&d)) {
        if (const FunctionInfo* fi = ct_.find_function(f->name); fi && f->body && fi->loc == f->loc) {
          Context ctx;
          ctx.scope = f->name;
          for (const auto& tp : fi->type_params) ctx.type_params.push_back(tp.name);
          ctx.return_type = fi->return_type;
          check_function_body(*f, fi->params, ctx);
        }
      }
    }

    Context top;
    top.scope = kTopLevel;
    top.frames.emplace_back();
    FunctionScope script;
    script.name = kTopLevel;
    script.loc = SourceLoc{program_.file, 1, 1};
    for (const auto& d : program_.decls) {
      if (const auto* s = std::get_if<StmtDecl>(&d)) {
        check_stmt(s->stmt, top, false);
        script.top_level.push_back(&s->stmt);
      }
    }
    out_.scopes.push_back(std::move(script));
  }

 private:
  // --- reporting -------------------------------------------------------------

  void report(DiagCode code, const SourceLoc& loc, std::string msg) {
    diags_.push_back(Diagnostic{code, loc, std::move(msg)});
  }
  void type_error(const SourceLoc& loc, std::string msg) { report(DiagCode::Type, loc, std::move(msg)); }
  void append(std::vector<Diagnostic> ds) {
    for (auto& d : ds) diags_.push_back(std::move(d));
  }

  void coercion(const Expr& e, const TypeRef& from, const TypeRef& to, CoercionKind kind,
                const Context& ctx) {
    out_.coercions.push_back(Coercion{e.id, from, to, kind, ctx.scope, e.loc});
  }

  /// `value` must fit `expected`; records the implicit coercion.
  bool expect(const Expr& e, const TypeRef& actual, const TypeRef& expected, CoercionKind kind,
              const Context& ctx) {
    if (!subtype(ct_, actual, expected)) {
      type_error(e.loc, "type mismatch: inferred type is " + actual.str() + " but " + expected.str() +
                            " was expected");
      return false;
    }
    coercion(e, actual, expected, kind, ctx);
    return true;
  }

  std::optional<TypeRef> resolve(const TypeRef& t, const Context& ctx, const SourceLoc& loc,
                                 bool allow_bare = false) {
    std::string err;
    auto r = ct_.resolve(t, ctx.type_params, err, allow_bare);
    if (!r) type_error(loc, err);
    return r;
  }

  // --- declarations ----------------------------------------------------------

  void check_abstract_members(const ClassInfo& c) {
    std::set<std::string> implemented;
    std::vector<std::pair<std::string, const ClassInfo*>> required;
    std::vector<const ClassInfo*> chain;
    std::vector<std::string> work{c.name};
    std::set<std::string> seen;
    while (!work.empty()) {
      std::string n = work.back();
      work.pop_back();
      if (!seen.insert(n).second) continue;
      const ClassInfo* info = ct_.find_class(n);
      if (!info) continue;
      chain.push_back(info);
      for (const auto& s : info->supertypes) work.push_back(s.type.name);
    }
    for (const ClassInfo* info : chain) {
      for (const auto& m : info->methods) {
        if (info->is_interface && m.is_abstract) {
          required.emplace_back(m.name, info);
        } else if (!m.is_abstract) {
          implemented.insert(m.name);
        }
      }
      for (const auto& p : info->properties) {
        if (info->is_interface) {
          required.emplace_back(p.name, info);
        } else {
          implemented.insert(p.name);
        }
      }
    }
    for (const auto& [name, owner] : required) {
      if (!implemented.count(name)) {
        type_error(c.loc, "class '" + c.name + "' is not abstract and does not implement abstract member '" +
                              name + "' of '" + owner->name + "'");
      }
    }
  }

  void check_class_bodies(const ClassDecl& c) {
    const ClassInfo* info = ct_.find_class(c.name);
    if (!info || info->loc != c.loc) return;
    Context base;
    for (const auto& tp : info->type_params) base.type_params.push_back(tp.name);
    base.this_type = info->self_type();
    base.enclosing_class = c.name;
    for (const auto& m : c.members) {
      if (const auto* p = std::get_if<PropertyDecl>(&m)) {
        const PropertyInfo* pi = info->find_property(p->name);
        if (!p->init || !pi) continue;
        Context ctx = base;
        ctx.scope = c.name + ".<init>";
        ctx.frames.emplace_back();
        if (auto t = check_expr(*p->init, ctx, true)) expect(*p->init, *t, pi->type, CoercionKind::PropertyAssign, ctx);
      } else {
        const auto& f = std::get<FunDecl>(m);
        const MethodInfo* mi = info->find_method(f.name);
        if (!f.body || !mi || mi->loc != f.loc) continue;
        Context ctx = base;
        ctx.scope = c.name + "." + f.name;
        ctx.return_type = mi->return_type;
        check_function_body(f, mi->params, ctx);
      }
    }
  }

  void check_function_body(const FunDecl& f, const std::vector<ParamDecl>& params, Context& ctx) {
    ctx.frames.emplace_back();
    for (const auto& p : params) ctx.frames.back()[p.name] = Local{p.type, false};
    check_block(*f.body, ctx, false, false);
    if (ctx.return_type && ctx.return_type->kind != TypeRef::Kind::Unit && !definitely_returns(*f.body)) {
      type_error(f.loc, "a 'return' expression required in a function with a block body");
    }
    out_.scopes.push_back(FunctionScope{ctx.scope, &*f.body, {}, ctx.return_type, f.loc});
  }

  static bool definitely_returns(const Block& b) {
    if (b.stmts.empty()) return false;
    const Stmt& last = b.stmts.back();
    if (std::holds_alternative<stmt::Return>(last.node)) return true;
    if (const auto* es = std::get_if<stmt::ExprStmt>(&last.node)) {
      if (const auto* i = std::get_if<expr::If>(&es->expr->node)) {
        return i->else_block && definitely_returns(i->then_block) && definitely_returns(*i->else_block);
      }
    }
    return false;
  }

  // --- statements ------------------------------------------------------------

  /// Returns the block's value type when `want_value`.
  std::optional<TypeRef> check_block(const Block& b, Context& ctx, bool want_value, bool new_frame = true) {
    if (new_frame) ctx.frames.emplace_back();
    std::optional<TypeRef> value = TypeRef::unit();
    for (std::size_t i = 0; i < b.stmts.size(); ++i) {
      const bool last = i + 1 == b.stmts.size();
      const bool yields = want_value && last && std::holds_alternative<stmt::ExprStmt>(b.stmts[i].node);
      auto t = check_stmt(b.stmts[i], ctx, yields);
      if (yields) value = t;
    }
    if (new_frame) ctx.frames.pop_back();
    return value;
  }

  std::optional<TypeRef> check_stmt(const Stmt& s, Context& ctx, bool value_used) {
    if (const auto* v = std::get_if<stmt::Val>(&s.node)) {
      if (v->declared_type) {
        std::string ignored;
        if (auto t = ct_.resolve(*v->declared_type, ctx.type_params, ignored, false)) hints_[v->init->id] = *t;
      }
      auto init = check_expr(*v->init, ctx, true);
      std::optional<TypeRef> binding;
      if (v->declared_type) {
        binding = resolve(*v->declared_type, ctx, s.loc);
        if (binding && init) expect(*v->init, *init, *binding, CoercionKind::ValDecl, ctx);
      } else {
        binding = init;
      }
      if (binding) out_.val_types[s.id] = *binding;
      auto& frame = ctx.frames.back();
      auto it = frame.find(v->name);
      if (it != frame.end() && !it->second.narrowing) {
        type_error(s.loc, "conflicting declarations: val " + v->name);
      }
      frame[v->name] = Local{binding, false};
      return TypeRef::unit();
    }
    if (const auto* r = std::get_if<stmt::Return>(&s.node)) {
      if (ctx.return_type) hints_[r->value->id] = *ctx.return_type;
      auto t = check_expr(*r->value, ctx, true);
      if (!ctx.return_type) {
        type_error(s.loc, "'return' is not allowed here");
      } else if (t) {
        expect(*r->value, *t, *ctx.return_type, CoercionKind::Return, ctx);
      }
      return TypeRef::unit();
    }
    return check_expr(*std::get<stmt::ExprStmt>(s.node).expr, ctx, value_used);
  }

  // --- expressions -----------------------------------------------------------

  std::optional<TypeRef> check_expr(const Expr& e, Context& ctx, bool value_used) {
    auto t = std::visit([&](const auto& n) { return check_node(e, n, ctx, value_used); }, e.node);
    if (t) out_.expr_types[e.id] = *t;
    return t;
  }

  std::optional<std::vector<TypeRef>> check_args(const std::vector<ExprPtr>& args, Context& ctx) {
    std::vector<TypeRef> out;
    bool ok = true;
    for (const auto& a : args) {
      auto t = check_expr(*a, ctx, true);
      if (t) {
        out.push_back(*t);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<TypeRef> check_node(const Expr&, const expr::IntLit&, Context&, bool) { return TypeRef::int_(); }
  std::optional<TypeRef> check_node(const Expr&, const expr::StringLit&, Context&, bool) {
    return TypeRef::string();
  }
  std::optional<TypeRef> check_node(const Expr&, const expr::BoolLit&, Context&, bool) {
    return TypeRef::boolean();
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::VarRef& n, Context& ctx, bool) {
    if (n.name == "this") {
      if (!ctx.this_type) {
        type_error(e.loc, "'this' is not defined in this context");
        return std::nullopt;
      }
      if (const Local* l = ctx.lookup("this")) return l->type;
      return ctx.this_type;
    }
    const Local* l = ctx.lookup(n.name);
    if (!l) {
      type_error(e.loc, "unresolved reference: " + n.name);
      return std::nullopt;
    }
    return l->type;
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::Call& n, Context& ctx, bool) {
    if (const ClassInfo* c = ct_.find_class(n.callee)) return check_constructor(e, n, *c, ctx);
    const FunctionInfo* f = ct_.find_function(n.callee);
    if (!f) {
      type_error(e.loc, "unresolved reference: " + n.callee);
      check_args(n.args, ctx);
      return std::nullopt;
    }
    auto args = check_args(n.args, ctx);
    if (!args) return std::nullopt;
    if (args->size() != f->params.size()) {
      type_error(e.loc, "expected " + std::to_string(f->params.size()) + " argument(s) for " + f->name +
                            ", found " + std::to_string(args->size()));
      return std::nullopt;
    }
    std::vector<TypeRef> targs;
    if (!n.type_args.empty()) {
      if (n.type_args.size() != f->type_params.size()) {
        type_error(e.loc, std::to_string(f->type_params.size()) + " type argument(s) expected for " + f->name);
        return std::nullopt;
      }
      for (const auto& ta : n.type_args) {
        auto r = resolve(ta, ctx, e.loc);
        if (!r) return std::nullopt;
        targs.push_back(*r);
      }
    } else if (!f->type_params.empty()) {
      auto inferred = infer_call_type_args(ct_, *f, *args);
      if (!inferred.type_args) {
        type_error(e.loc, inferred.error);
        return std::nullopt;
      }
      targs = *inferred.type_args;
    }
    Substitution subst;
    for (std::size_t i = 0; i < targs.size(); ++i) subst[f->type_params[i].name] = targs[i];
    bool ok = true;
    for (std::size_t i = 0; i < args->size(); ++i) {
      ok &= expect(*n.args[i], (*args)[i], substitute(f->params[i].type, subst), CoercionKind::Argument, ctx);
    }
    if (!ok) return std::nullopt;
    out_.calls[e.id] = CallInfo{CallKind::Function, f->name, targs};
    return substitute(f->return_type, subst);
  }

  std::optional<TypeRef> check_constructor(const Expr& e, const expr::Call& n, const ClassInfo& c,
                                           Context& ctx) {
    check_args(n.args, ctx);
    if (c.is_interface) {
      type_error(e.loc, "interface " + c.name + " does not have constructors");
      return std::nullopt;
    }
    if (c.ctor_private && ctx.enclosing_class != c.name) {
      type_error(e.loc, "cannot access '<init>': it is private in '" + c.name + "'");
      return std::nullopt;
    }
    if (!n.args.empty()) {
      type_error(e.loc, "too many arguments for constructor of " + c.name);
      return std::nullopt;
    }
    if (n.type_args.size() != c.type_params.size()) {
      type_error(e.loc, n.type_args.empty() && !c.type_params.empty()
                            ? "not enough information to infer type variable " + c.type_params[0].name
                            : std::to_string(c.type_params.size()) + " type argument(s) expected for " + c.name);
      return std::nullopt;
    }
    TypeRef t = TypeRef::make_class(c.name);
    for (const auto& ta : n.type_args) {
      auto r = resolve(ta, ctx, e.loc);
      if (!r) return std::nullopt;
      t.args.push_back(*r);
    }
    out_.calls[e.id] = CallInfo{CallKind::Constructor, c.name, t.args};
    return t;
  }

  std::optional<MemberLookup> find_member(const TypeRef& recv, const std::string& name, bool method) {
    if (!recv.is_class()) return std::nullopt;
    std::vector<std::string> work{recv.name};
    std::set<std::string> seen;
    // Breadth-first so a subclass member shadows its parent's.
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (!seen.insert(work[i]).second) continue;
      const ClassInfo* c = ct_.find_class(work[i]);
      if (!c) continue;
      const MethodInfo* m = method ? c->find_method(name) : nullptr;
      const PropertyInfo* p = method ? nullptr : c->find_property(name);
      if (m || p) {
        MemberLookup r{c, m, p, {}};
        auto inst = supertype_instantiation(ct_, recv, c->name);
        for (std::size_t k = 0; inst && k < c->type_params.size(); ++k) r.subst[c->type_params[k].name] = inst->args[k];
        return r;
      }
      for (const auto& s : c->supertypes) work.push_back(s.type.name);
    }
    return std::nullopt;
  }

  std::optional<TypeRef> check_method(const Expr& e, const TypeRef& recv, const std::string& name,
                                      const std::vector<const Expr*>& arg_exprs, Context& ctx) {
    std::vector<TypeRef> args;
    bool ok = true;
    for (const Expr* a : arg_exprs) {
      if (auto t = check_expr(*a, ctx, true)) {
        args.push_back(*t);
      } else {
        ok = false;
      }
    }
    auto m = find_member(recv, name, true);
    if (!m) {
      type_error(e.loc, "unresolved reference: " + name + " on " + recv.str());
      return std::nullopt;
    }
    if (!ok) return std::nullopt;
    if (args.size() != m->method->params.size()) {
      type_error(e.loc, "expected " + std::to_string(m->method->params.size()) + " argument(s) for " + name +
                            ", found " + std::to_string(args.size()));
      return std::nullopt;
    }
    MemberInfo info;
    info.declaring_class = m->owner->name;
    info.member = name;
    info.receiver_class = recv.name;
    info.erased_result = m->method->return_type.is_param();
    for (std::size_t i = 0; i < args.size(); ++i) {
      const TypeRef& declared = m->method->params[i].type;
      info.declared_params.push_back(declared);
      info.param_types.push_back(substitute(declared, m->subst));
      ok &= expect(*arg_exprs[i], args[i], info.param_types.back(), CoercionKind::Argument, ctx);
    }
    if (!ok) return std::nullopt;
    out_.members[e.id] = std::move(info);
    return substitute(m->method->return_type, m->subst);
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::MethodCall& n, Context& ctx, bool) {
    auto recv = check_expr(*n.receiver, ctx, true);
    std::vector<const Expr*> args;
    for (const auto& a : n.args) args.push_back(a.get());
    if (!recv) {
      for (const Expr* a : args) check_expr(*a, ctx, true);
      return std::nullopt;
    }
    return check_method(e, *recv, n.name, args, ctx);
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::Index& n, Context& ctx, bool) {
    auto recv = check_expr(*n.receiver, ctx, true);
    if (!recv) {
      check_expr(*n.index, ctx, true);
      return std::nullopt;
    }
    return check_method(e, *recv, "get", {n.index.get()}, ctx);
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::IndexSet& n, Context& ctx, bool) {
    auto recv = check_expr(*n.receiver, ctx, true);
    if (!recv) {
      check_expr(*n.index, ctx, true);
      check_expr(*n.value, ctx, true);
      return std::nullopt;
    }
    return check_method(e, *recv, "set", {n.index.get(), n.value.get()}, ctx);
  }

  std::optional<MemberLookup> property(const Expr& e, const TypeRef& recv, const std::string& name) {
    auto m = find_member(recv, name, false);
    if (!m) {
      type_error(e.loc, "unresolved reference: " + name + " on " + recv.str());
      return std::nullopt;
    }
    MemberInfo info;
    info.declaring_class = m->owner->name;
    info.member = name;
    info.is_property = true;
    info.receiver_class = recv.name;
    info.erased_result = m->property->type.is_param();
    out_.members[e.id] = std::move(info);
    return m;
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::PropertyGet& n, Context& ctx, bool) {
    auto recv = check_expr(*n.receiver, ctx, true);
    if (!recv) return std::nullopt;
    auto m = property(e, *recv, n.name);
    if (!m) return std::nullopt;
    return substitute(m->property->type, m->subst);
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::PropertySet& n, Context& ctx, bool) {
    auto recv = check_expr(*n.receiver, ctx, true);
    auto value = check_expr(*n.value, ctx, true);
    if (!recv) return std::nullopt;
    auto m = property(e, *recv, n.name);
    if (!m) return std::nullopt;
    if (!m->property->is_mutable) {
      type_error(e.loc, "val cannot be reassigned: " + n.name);
      return std::nullopt;
    }
    if (value) expect(*n.value, *value, substitute(m->property->type, m->subst), CoercionKind::PropertyAssign, ctx);
    return TypeRef::unit();
  }

  /// A bare cast target takes its arguments from the expected type when the
  /// expected class is the target or one of its supertypes.
  TypeRef complete_against_expected(const Expr& e, const TypeRef& source, const TypeRef& target) {
    auto hint = hints_.find(e.id);
    if (hint != hints_.end() && target.is_class() && target.args.empty() && hint->second.is_class() &&
        ct_.is_nominal_subclass(target.name, hint->second.name)) {
      return complete_target(ct_, hint->second, target);
    }
    return complete_target(ct_, source, target);
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::As& n, Context& ctx, bool) {
    auto source = check_expr(*n.operand, ctx, true);
    auto target = resolve(n.target, ctx, e.loc, true);
    if (!source || !target) return std::nullopt;
    CastInfo info;
    info.completed_target = complete_against_expected(e, *source, *target);
    info.classification = classify_cast_baseline(ct_, *source, info.completed_target);
    if (info.classification == CastClassification::UncheckedWarned) {
      report(DiagCode::UncheckedCast, e.loc,
             "unchecked cast: " + source->str() + " to " + info.completed_target.str());
    }
    TypeRef result = info.completed_target;
    out_.casts[e.id] = std::move(info);
    return result;
  }

  /// Runs the instance-check rules; returns the narrowed type if the check
  /// may drive a smart cast.
  std::optional<TypeRef> instance_check(const Expr& e, const expr::Is& n, Context& ctx, bool& legal) {
    legal = false;
    auto source = check_expr(*n.operand, ctx, true);
    auto target = resolve(n.target, ctx, e.loc, true);
    out_.expr_types[e.id] = TypeRef::boolean();
    if (!source || !target) return std::nullopt;
    const TypeRef completed = complete_target(ct_, *source, *target);
    out_.is_targets[e.id] = completed;
    legal = true;
    if (target->is_class() && !target->args.empty()) {
      TypeRef bare = TypeRef::make_class(target->name);
      if (complete_target(ct_, *source, bare) != *target) {
        report(DiagCode::GenericIs, e.loc, "cannot check for instance of erased type: " + target->str());
        legal = false;
      }
    }
    if (legal && strict_ && completed.is_class() && !completed.args.empty() && source->is_class()) {
      const ClassInfo* from = ct_.find_class(source->name);
      const ClassInfo* to = ct_.find_class(completed.name);
      if (from && to && from->is_variant() && to->has_invariant_param() && from->name != to->name) {
        report(DiagCode::GenericIs, e.loc,
               "generic smart cast from variant '" + from->name + "' to non-variant '" + to->name +
                   "' is not allowed: " + source->str() + " is " + completed.str());
        legal = false;
      }
    }
    if (subtype(ct_, *source, completed)) {
      report(DiagCode::RedundantIs, e.loc, "check for instance is always 'true'");
    }
    return completed;
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::Is& n, Context& ctx, bool) {
    bool legal = false;
    instance_check(e, n, ctx, legal);
    return TypeRef::boolean();
  }

  std::optional<TypeRef> check_node(const Expr& e, const expr::If& n, Context& ctx, bool value_used) {
    std::optional<std::pair<std::string, TypeRef>> narrowing;
    std::optional<TypeRef> cond;
    if (const auto* is = std::get_if<expr::Is>(&n.cond->node)) {
      bool legal = false;
      auto narrowed = instance_check(*n.cond, *is, ctx, legal);
      cond = TypeRef::boolean();
      const auto* var = std::get_if<expr::VarRef>(&is->operand->node);
      if (legal && narrowed && var) {
        auto declared = ctx.declared(var->name);
        if (declared && *narrowed != *declared && subtype(ct_, *narrowed, *declared)) {
          narrowing.emplace(var->name, *narrowed);
          out_.narrowings.push_back(Narrowing{n.cond->id, var->name, *declared, *narrowed});
        }
      }
    } else {
      cond = check_expr(*n.cond, ctx, true);
    }
    if (cond && !subtype(ct_, *cond, TypeRef::boolean())) {
      type_error(n.cond->loc, "condition must be of type Boolean, found " + cond->str());
    }

    ctx.frames.emplace_back();
    if (narrowing) ctx.frames.back()[narrowing->first] = Local{narrowing->second, true};
    auto then_t = check_block(n.then_block, ctx, value_used);
    ctx.frames.pop_back();
    std::optional<TypeRef> else_t = TypeRef::unit();
    if (n.else_block) else_t = check_block(*n.else_block, ctx, value_used);

    if (!value_used) return TypeRef::unit();
    if (!n.else_block) {
      type_error(e.loc, "'if' must have both main and 'else' branches if used as an expression");
      return std::nullopt;
    }
    if (!then_t || !else_t) return std::nullopt;
    return lub(ct_, *then_t, *else_t);
  }

  const ClassTable& ct_;
  const Program& program_;
  bool strict_;
  TypedProgram& out_;
  std::vector<Diagnostic>& diags_;
  std::map<NodeId, TypeRef> hints_;  // expected type of an expression, from its context
};

}  // namespace

CheckResult check_program(std::shared_ptr<const ClassTable> ct, std::shared_ptr<const Program> program,
                          bool strict) {
  CheckResult result;
  result.typed.program = program;
  result.typed.table = ct;
  Checker(*ct, *program, strict, result.typed, result.diagnostics).run();
  sort_diagnostics(result.diagnostics);
  return result;
}

}  // namespace minik
