#include <set>
#include <sstream>

#include "minik/runtime.hpp"
#include "minik/subtyping.hpp"

namespace minik {

std::string Rtti::str() const {
  if (!type_args || type_args->empty()) return class_name;
  return class_name + "<" + join_types(*type_args) + ">";
}

std::string Value::runtime_class() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, UnitValue>) {
          return "Unit";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return "Int";
        } else if constexpr (std::is_same_v<V, bool>) {
          return "Boolean";
        } else if constexpr (std::is_same_v<V, std::string>) {
          return "String";
        } else {
          return v->rtti.class_name;
        }
      },
      data);
}

std::string Value::render() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, UnitValue>) {
          return "kotlin.Unit";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<V, std::shared_ptr<Object>>) {
          return "<" + v->rtti.class_name + "@" + std::to_string(v->id) + ">";
        } else {
          std::string out = "[";
          for (std::size_t i = 0; i < v->elements.size(); ++i) {
            if (i) out += ", ";
            out += v->elements[i].render();
          }
          return out + "]";
        }
      },
      data);
}

std::string RunOutcome::render_outcome() const {
  if (completed()) return "completed";
  if (const auto* e = cast_exception()) {
    return "ClassCastException: " + e->actual + " cannot be cast to " + e->expected + " at " + e->loc.str();
  }
  const auto& f = std::get<outcome::Fault>(result);
  return f.exception + ": " + f.message + " at " + f.loc.str();
}

namespace {

/// Full runtime type of a value; class-only when no arguments were recorded.
TypeRef runtime_type(const Value& v) {
  return std::visit(
      [](const auto& x) -> TypeRef {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, UnitValue>) {
          return TypeRef::unit();
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return TypeRef::int_();
        } else if constexpr (std::is_same_v<V, bool>) {
          return TypeRef::boolean();
        } else if constexpr (std::is_same_v<V, std::string>) {
          return TypeRef::string();
        } else {
          return TypeRef::make_class(x->rtti.class_name, x->rtti.type_args.value_or(std::vector<TypeRef>{}));
        }
      },
      v.data);
}

bool class_conforms(const ClassTable& ct, const std::string& actual, const std::string& expected) {
  return actual == expected || ct.is_nominal_subclass(actual, expected);
}

bool has_reified_args(const Value& v) {
  if (const auto* o = std::get_if<std::shared_ptr<Object>>(&v.data)) return (*o)->rtti.type_args.has_value();
  if (const auto* l = std::get_if<std::shared_ptr<ListObject>>(&v.data)) return (*l)->rtti.type_args.has_value();
  return true;
}

}  // namespace

bool instance_check(const ClassTable& ct, const Value& v, const TypeRef& target, RuntimeMode mode) {
  if (!target.is_specific_class()) return true;
  if (!class_conforms(ct, v.runtime_class(), target.erased_class())) return false;
  if (mode == RuntimeMode::Erased || target.args.empty() || !has_reified_args(v)) return true;
  return subtype(ct, runtime_type(v), target);
}

namespace {

struct Throw {
  decltype(RunOutcome::result) result;
};

struct ReturnSignal {
  Value value;
};

struct Frame {
  std::vector<std::map<std::string, Value>> scopes;
  std::optional<Value> self;
  Substitution type_env;
};

class Evaluator {
 public:
  Evaluator(const TypedProgram& typed, EvalOptions options)
      : typed_(typed), ct_(*typed.table), options_(options) {
    for (const auto& s : checkcast_sites(typed)) {
      if (s.reason != SiteReason::ExplicitCast) sites_[s.expr].push_back(s);
    }
    for (const auto& c : typed.coercions) coercions_[c.expr].push_back(c.to);
    for (const auto& d : typed.program->decls) {
      if (const auto* c = std::get_if<ClassDecl>(&d)) {
        if (!classes_.count(c->name)) classes_[c->name] = c;
      } else if (const auto* f = std::get_if<FunDecl>(&d)) {
        if (!functions_.count(f->name)) functions_[f->name] = f;
      }
    }
  }

  RunOutcome run() {
    RunOutcome out;
    Frame top;
    top.scopes.emplace_back();
    try {
      for (const auto& d : typed_.program->decls) {
        if (const auto* s = std::get_if<StmtDecl>(&d)) exec(s->stmt, top);
      }
      out.result = outcome::Completed{Value{UnitValue{}}};
    } catch (const Throw& t) {
      out.result = t.result;
    }
    out.stdout_text = stdout_.str();
    return out;
  }

 private:
  bool reified() const { return options_.mode == RuntimeMode::Reified; }

  [[noreturn]] void cast_failure(const SourceLoc& loc, const Value& v, const TypeRef& expected) {
    std::string actual = v.runtime_class();
    std::string exp = expected.erased_class();
    if (reified()) {
      actual = runtime_type(v).str();
      exp = expected.str();
    }
    throw Throw{outcome::ClassCastException{loc, exp, actual}};
  }

  [[noreturn]] void fault(const SourceLoc& loc, std::string exception, std::string message) {
    throw Throw{outcome::Fault{loc, std::move(exception), std::move(message)}};
  }

  /// Replaces type parameters by their runtime bindings; anything unbound
  /// is unknown and becomes Any?.
  TypeRef close(const TypeRef& t, const Frame& f) const {
    if (t.is_param()) {
      auto it = f.type_env.find(t.name);
      return it == f.type_env.end() ? TypeRef::any_nullable() : it->second;
    }
    TypeRef out = t;
    for (auto& a : out.args) a = close(a, f);
    return out;
  }

  void check(const Expr& e, const Value& v, const TypeRef& expected, const Frame& f) {
    const TypeRef closed = close(expected, f);
    if (!instance_check(ct_, v, closed, options_.mode)) cast_failure(e.loc, v, closed);
  }

  /// Checks the runtime inserts after `e` produced `v`.
  void after(const Expr& e, const Value& v, const Frame& f) {
    if (reified()) {
      if (auto it = coercions_.find(e.id); it != coercions_.end()) {
        for (const auto& to : it->second) check(e, v, to, f);
      }
    }
    if (auto it = sites_.find(e.id); it != sites_.end()) {
      for (const auto& s : it->second) check(e, v, reified() ? s.expected_type : TypeRef::make_class(s.expected_class), f);
    }
    if (options_.eager_checkcast) {
      auto m = typed_.members.find(e.id);
      auto t = typed_.expr_types.find(e.id);
      if (m != typed_.members.end() && m->second.erased_result && t != typed_.expr_types.end() &&
          t->second.is_specific_class()) {
        check(e, v, t->second, f);
      }
    }
  }

  // --- statements ------------------------------------------------------------

  Value exec_block(const Block& b, Frame& f) {
    f.scopes.emplace_back();
    Value last{UnitValue{}};
    for (const auto& s : b.stmts) last = exec(s, f);
    f.scopes.pop_back();
    return last;
  }

  Value exec(const Stmt& s, Frame& f) {
    if (const auto* v = std::get_if<stmt::Val>(&s.node)) {
      Value init = eval(*v->init, f);
      f.scopes.back()[v->name] = std::move(init);
      return Value{UnitValue{}};
    }
    if (const auto* r = std::get_if<stmt::Return>(&s.node)) throw ReturnSignal{eval(*r->value, f)};
    return eval(*std::get<stmt::ExprStmt>(s.node).expr, f);
  }

  // --- expressions -----------------------------------------------------------

  Value eval(const Expr& e, Frame& f) {
    Value v = std::visit([&](const auto& n) { return node(e, n, f); }, e.node);
    after(e, v, f);
    return v;
  }

  Value node(const Expr&, const expr::IntLit& n, Frame&) { return Value{n.value}; }
  Value node(const Expr&, const expr::StringLit& n, Frame&) { return Value{n.value}; }
  Value node(const Expr&, const expr::BoolLit& n, Frame&) { return Value{n.value}; }

  Value node(const Expr& e, const expr::VarRef& n, Frame& f) {
    if (n.name == "this") return *f.self;
    for (auto it = f.scopes.rbegin(); it != f.scopes.rend(); ++it) {
      auto v = it->find(n.name);
      if (v != it->end()) return v->second;
    }
    fault(e.loc, "IllegalStateException", "unbound variable " + n.name);
  }

  std::uint64_t next_id() { return ++allocated_; }

  std::optional<std::vector<TypeRef>> reified_args(const std::vector<TypeRef>& args, const Frame& f) const {
    if (!reified()) return std::nullopt;
    std::vector<TypeRef> out;
    for (const auto& a : args) out.push_back(close(a, f));
    return out;
  }

  Value new_list(const std::vector<TypeRef>& type_args, const Frame& f) {
    auto list = std::make_shared<ListObject>();
    list->id = next_id();
    list->rtti = Rtti{"ArrayList", reified_args(type_args, f)};
    return Value{list};
  }

  Value construct(const ClassInfo& c, const std::vector<TypeRef>& type_args, const Frame& caller) {
    if (c.name == "ArrayList") return new_list(type_args, caller);
    auto obj = std::make_shared<Object>();
    obj->id = next_id();
    obj->rtti = Rtti{c.name, reified_args(type_args, caller)};
    Value self{obj};

    // Superclass initializers run first.
    std::vector<const ClassInfo*> chain;
    for (const ClassInfo* cur = &c; cur;) {
      chain.push_back(cur);
      const ClassInfo* next = nullptr;
      for (const auto& s : cur->supertypes) {
        const ClassInfo* sup = ct_.find_class(s.type.name);
        if (sup && !sup->is_interface) next = sup;
      }
      cur = next;
    }
    Frame self_frame;
    self_frame.self = self;
    Substitution own;
    for (std::size_t i = 0; i < c.type_params.size() && i < type_args.size(); ++i) {
      own[c.type_params[i].name] = close(type_args[i], caller);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      auto decl = classes_.find((*it)->name);
      if (decl == classes_.end()) continue;
      Frame f;
      f.self = self;
      f.scopes.emplace_back();
      f.type_env = env_for(**it, runtime_type(self));
      for (const auto& m : decl->second->members) {
        const auto* p = std::get_if<PropertyDecl>(&m);
        if (p && p->init) obj->fields[p->name] = eval(*p->init, f);
      }
    }
    return self;
  }

  /// Bindings of `c`'s type parameters for a receiver of runtime type `recv`.
  Substitution env_for(const ClassInfo& c, const TypeRef& recv) const {
    Substitution env;
    if (!reified() || c.type_params.empty()) return env;
    auto inst = supertype_instantiation(ct_, recv, c.name);
    for (std::size_t i = 0; inst && i < c.type_params.size() && i < inst->args.size(); ++i) {
      env[c.type_params[i].name] = inst->args[i];
    }
    return env;
  }

  Value node(const Expr& e, const expr::Call& n, Frame& f) {
    std::vector<Value> args;
    for (const auto& a : n.args) args.push_back(eval(*a, f));
    const CallInfo& call = typed_.calls.at(e.id);
    if (call.kind == CallKind::Constructor) return construct(*ct_.find_class(call.target), call.type_args, f);

    if (call.target == "println") {
      stdout_ << args[0].render() << "\n";
      return Value{UnitValue{}};
    }
    if (call.target == "mutableListOf") return new_list(call.type_args, f);

    const FunctionInfo* fi = ct_.find_function(call.target);
    const FunDecl* decl = functions_.at(call.target);
    Frame callee;
    callee.scopes.emplace_back();
    for (std::size_t i = 0; i < fi->type_params.size() && i < call.type_args.size(); ++i) {
      callee.type_env[fi->type_params[i].name] = close(call.type_args[i], f);
    }
    for (std::size_t i = 0; i < decl->params.size(); ++i) callee.scopes.back()[decl->params[i].name] = args[i];
    return invoke(*decl->body, callee);
  }

  Value invoke(const Block& body, Frame& f) {
    try {
      exec_block(body, f);
    } catch (ReturnSignal& r) {
      return std::move(r.value);
    }
    return Value{UnitValue{}};
  }

  /// Virtual dispatch: the most derived body for `name` on the receiver's class.
  std::pair<const ClassDecl*, const FunDecl*> dispatch(const std::string& cls, const std::string& name) const {
    std::vector<std::string> work{cls};
    std::set<std::string> seen;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (!seen.insert(work[i]).second) continue;
      if (auto it = classes_.find(work[i]); it != classes_.end()) {
        for (const auto& m : it->second->members) {
          const auto* fn = std::get_if<FunDecl>(&m);
          if (fn && fn->name == name && fn->body) return {it->second, fn};
        }
      }
      if (const ClassInfo* c = ct_.find_class(work[i])) {
        for (const auto& s : c->supertypes) work.push_back(s.type.name);
      }
    }
    return {nullptr, nullptr};
  }

  Value list_method(const Expr& e, ListObject& list, const std::string& name, std::vector<Value>& args) {
    auto index = [&](const Value& v, std::size_t limit) {
      const std::int64_t i = std::get<std::int64_t>(v.data);
      if (i < 0 || static_cast<std::size_t>(i) >= limit) {
        fault(e.loc, "IndexOutOfBoundsException",
              "Index " + std::to_string(i) + " out of bounds for length " + std::to_string(list.elements.size()));
      }
      return static_cast<std::size_t>(i);
    };
    if (name == "get") return list.elements[index(args[0], list.elements.size())];
    if (name == "set") {
      list.elements[index(args[0], list.elements.size())] = args[1];
      return Value{UnitValue{}};
    }
    if (name == "add") {
      list.elements.push_back(args[0]);
      return Value{UnitValue{}};
    }
    fault(e.loc, "AbstractMethodError", "List." + name);
  }

  Value call_method(const Expr& e, const Value& recv, const std::string& name, std::vector<Value> args) {
    if (const auto* l = std::get_if<std::shared_ptr<ListObject>>(&recv.data)) {
      return list_method(e, **l, name, args);
    }
    const auto* obj = std::get_if<std::shared_ptr<Object>>(&recv.data);
    if (!obj) fault(e.loc, "NullPointerException", "method " + name + " on " + recv.runtime_class());
    auto [cls, fn] = dispatch((*obj)->rtti.class_name, name);
    if (!fn) fault(e.loc, "AbstractMethodError", (*obj)->rtti.class_name + "." + name);
    Frame callee;
    callee.self = recv;
    callee.scopes.emplace_back();
    callee.type_env = env_for(*ct_.find_class(cls->name), runtime_type(recv));
    for (std::size_t i = 0; i < fn->params.size(); ++i) callee.scopes.back()[fn->params[i].name] = args[i];
    return invoke(*fn->body, callee);
  }

  Value node(const Expr& e, const expr::MethodCall& n, Frame& f) {
    Value recv = eval(*n.receiver, f);
    std::vector<Value> args;
    for (const auto& a : n.args) args.push_back(eval(*a, f));
    return call_method(e, recv, n.name, std::move(args));
  }

  Value node(const Expr& e, const expr::Index& n, Frame& f) {
    Value recv = eval(*n.receiver, f);
    std::vector<Value> args{eval(*n.index, f)};
    return call_method(e, recv, "get", std::move(args));
  }

  Value node(const Expr& e, const expr::IndexSet& n, Frame& f) {
    Value recv = eval(*n.receiver, f);
    std::vector<Value> args{eval(*n.index, f)};
    args.push_back(eval(*n.value, f));
    return call_method(e, recv, "set", std::move(args));
  }

  Value node(const Expr& e, const expr::PropertyGet& n, Frame& f) {
    Value recv = eval(*n.receiver, f);
    if (const auto* l = std::get_if<std::shared_ptr<ListObject>>(&recv.data)) {
      if (n.name == "size") return Value{static_cast<std::int64_t>((*l)->elements.size())};
    }
    const auto* obj = std::get_if<std::shared_ptr<Object>>(&recv.data);
    if (!obj) fault(e.loc, "NullPointerException", "property " + n.name + " on " + recv.runtime_class());
    auto it = (*obj)->fields.find(n.name);
    if (it == (*obj)->fields.end()) {
      fault(e.loc, "UninitializedPropertyAccessException", "property " + n.name + " has not been initialized");
    }
    return it->second;
  }

  Value node(const Expr& e, const expr::PropertySet& n, Frame& f) {
    Value recv = eval(*n.receiver, f);
    Value value = eval(*n.value, f);
    const auto* obj = std::get_if<std::shared_ptr<Object>>(&recv.data);
    if (!obj) fault(e.loc, "NullPointerException", "property " + n.name + " on " + recv.runtime_class());
    (*obj)->fields[n.name] = std::move(value);
    return Value{UnitValue{}};
  }

  Value node(const Expr& e, const expr::As& n, Frame& f) {
    Value v = eval(*n.operand, f);
    const TypeRef target = close(typed_.casts.at(e.id).completed_target, f);
    if (!instance_check(ct_, v, target, options_.mode)) cast_failure(e.loc, v, target);
    return v;
  }

  Value node(const Expr& e, const expr::Is& n, Frame& f) {
    Value v = eval(*n.operand, f);
    return Value{instance_check(ct_, v, close(typed_.is_targets.at(e.id), f), options_.mode)};
  }

  Value node(const Expr&, const expr::If& n, Frame& f) {
    Value cond = eval(*n.cond, f);
    if (std::get<bool>(cond.data)) return exec_block(n.then_block, f);
    if (n.else_block) return exec_block(*n.else_block, f);
    return Value{UnitValue{}};
  }

  const TypedProgram& typed_;
  const ClassTable& ct_;
  EvalOptions options_;
  std::map<NodeId, std::vector<CheckcastSite>> sites_;
  std::map<NodeId, std::vector<TypeRef>> coercions_;
  std::map<std::string, const ClassDecl*> classes_;
  std::map<std::string, const FunDecl*> functions_;
  std::ostringstream stdout_;
  std::uint64_t allocated_ = 0;
};

}  // namespace

RunOutcome eval(const TypedProgram& typed, EvalOptions options) { return Evaluator(typed, options).run(); }

}  // namespace minik
