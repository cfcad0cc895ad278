#include <algorithm>

#include "minik/runtime.hpp"

namespace minik {

const char* site_reason_name(SiteReason r) {
  switch (r) {
    case SiteReason::ExplicitDeclaration: return "explicitly-typed declaration";
    case SiteReason::ImplicitDeclaration: return "implicitly-typed declaration";
    case SiteReason::CallArgument: return "call argument";
    case SiteReason::MethodCallOnClass: return "member access on class";
    case SiteReason::MethodCallFromParent: return "member access from parent class";
    case SiteReason::Return: return "return";
    case SiteReason::ExplicitCast: return "explicit cast";
  }
  return "?";
}

std::string CheckcastSite::render() const {
  return loc.str() + ": CHECKCAST " + expected_class + " (" + site_reason_name(reason) + ")";
}

namespace {

class SiteCollector {
 public:
  SiteCollector(const TypedProgram& typed, std::vector<CheckcastSite>& out) : typed_(typed), out_(out) {}

  void program() {
    const ClassTable& ct = *typed_.table;
    for (const auto& d : typed_.program->decls) {
      if (const auto* c = std::get_if<ClassDecl>(&d)) {
        const ClassInfo* info = ct.find_class(c->name);
        if (!info) continue;
        for (const auto& m : c->members) {
          if (const auto* p = std::get_if<PropertyDecl>(&m)) {
            const PropertyInfo* pi = info->find_property(p->name);
            if (p->init && pi) {
              operand(*p->init, pi->type, SiteReason::ExplicitDeclaration);
              expr(*p->init);
            }
          } else {
            const auto& f = std::get<FunDecl>(m);
            const MethodInfo* mi = info->find_method(f.name);
            if (f.body && mi) function(*f.body, mi->return_type);
          }
        }
      } else if (const auto* f = std::get_if<FunDecl>(&d)) {
        const FunctionInfo* fi = ct.find_function(f->name);
        if (f->body && fi) function(*f->body, fi->return_type);
      } else {
        return_type_.reset();
        stmt(std::get<StmtDecl>(d).stmt);
      }
    }
  }

 private:
  void function(const Block& body, const TypeRef& return_type) {
    return_type_ = return_type;
    block(body);
    return_type_.reset();
  }

  void block(const Block& b) {
    for (const auto& s : b.stmts) stmt(s);
  }

  void stmt(const Stmt& s) {
    if (const auto* v = std::get_if<stmt::Val>(&s.node)) {
      auto t = typed_.val_types.find(s.id);
      if (t != typed_.val_types.end()) {
        operand(*v->init, t->second,
                v->declared_type ? SiteReason::ExplicitDeclaration : SiteReason::ImplicitDeclaration);
      }
      expr(*v->init);
    } else if (const auto* r = std::get_if<stmt::Return>(&s.node)) {
      auto m = typed_.members.find(r->value->id);
      const bool erased_read = m != typed_.members.end() && m->second.erased_result;
      // An element read out of a generic container is forwarded unchecked.
      if (return_type_ && !erased_read) operand(*r->value, *return_type_, SiteReason::Return);
      expr(*r->value);
    } else {
      expr(*std::get<stmt::ExprStmt>(s.node).expr);
    }
  }

  /// `e` flows into a slot expecting `expected`.
  void operand(const Expr& e, const TypeRef& expected, SiteReason reason) {
    if (!expected.is_specific_class() || exact_by_construction(e)) return;
    out_.push_back(CheckcastSite{e.id, e.loc, expected.erased_class(), expected, reason});
  }

  bool exact_by_construction(const Expr& e) const {
    if (std::holds_alternative<expr::IntLit>(e.node) || std::holds_alternative<expr::StringLit>(e.node) ||
        std::holds_alternative<expr::BoolLit>(e.node) || std::holds_alternative<expr::As>(e.node)) {
      return true;
    }
    if (const auto* v = std::get_if<expr::VarRef>(&e.node)) return v->name == "this";
    auto c = typed_.calls.find(e.id);
    return c != typed_.calls.end() && c->second.kind == CallKind::Constructor;
  }

  void receiver(const Expr& member, const Expr& recv) {
    auto m = typed_.members.find(member.id);
    auto t = typed_.expr_types.find(recv.id);
    if (m == typed_.members.end() || t == typed_.expr_types.end()) return;
    operand(recv, t->second,
            m->second.declaring_class == m->second.receiver_class ? SiteReason::MethodCallOnClass
                                                                  : SiteReason::MethodCallFromParent);
  }

  void member_args(const Expr& member, const std::vector<const Expr*>& args) {
    auto m = typed_.members.find(member.id);
    if (m == typed_.members.end()) return;
    for (std::size_t i = 0; i < args.size() && i < m->second.declared_params.size(); ++i) {
      if (m->second.declared_params[i].is_specific_class()) {
        operand(*args[i], m->second.param_types[i], SiteReason::CallArgument);
      }
    }
  }

  void expr(const Expr& e) {
    std::visit([&](const auto& n) { node(e, n); }, e.node);
  }

  template <class Leaf>
  void node(const Expr&, const Leaf&) {}

  void node(const Expr& e, const expr::Call& n) {
    auto c = typed_.calls.find(e.id);
    const FunctionInfo* f = nullptr;
    if (c != typed_.calls.end() && c->second.kind == CallKind::Function) f = typed_.table->find_function(c->second.target);
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (f && i < f->params.size() && f->params[i].type.is_specific_class()) {
        Substitution subst;
        for (std::size_t k = 0; k < f->type_params.size() && k < c->second.type_args.size(); ++k) {
          subst[f->type_params[k].name] = c->second.type_args[k];
        }
        operand(*n.args[i], substitute(f->params[i].type, subst), SiteReason::CallArgument);
      }
      expr(*n.args[i]);
    }
  }

  void node(const Expr& e, const expr::MethodCall& n) {
    receiver(e, *n.receiver);
    expr(*n.receiver);
    std::vector<const Expr*> args;
    for (const auto& a : n.args) args.push_back(a.get());
    member_args(e, args);
    for (const Expr* a : args) expr(*a);
  }

  void node(const Expr& e, const expr::Index& n) {
    receiver(e, *n.receiver);
    expr(*n.receiver);
    member_args(e, {n.index.get()});
    expr(*n.index);
  }

  void node(const Expr& e, const expr::IndexSet& n) {
    receiver(e, *n.receiver);
    expr(*n.receiver);
    member_args(e, {n.index.get(), n.value.get()});
    expr(*n.index);
    expr(*n.value);
  }

  void node(const Expr& e, const expr::PropertyGet& n) {
    receiver(e, *n.receiver);
    expr(*n.receiver);
  }

  void node(const Expr& e, const expr::PropertySet& n) {
    receiver(e, *n.receiver);
    expr(*n.receiver);
    expr(*n.value);
  }

  void node(const Expr& e, const expr::As& n) {
    expr(*n.operand);
    auto c = typed_.casts.find(e.id);
    if (c != typed_.casts.end() && c->second.completed_target.is_specific_class()) {
      const TypeRef& t = c->second.completed_target;
      out_.push_back(CheckcastSite{e.id, e.loc, t.erased_class(), t, SiteReason::ExplicitCast});
    }
  }

  void node(const Expr&, const expr::Is& n) { expr(*n.operand); }

  void node(const Expr&, const expr::If& n) {
    expr(*n.cond);
    block(n.then_block);
    if (n.else_block) block(*n.else_block);
  }

  const TypedProgram& typed_;
  std::vector<CheckcastSite>& out_;
  std::optional<TypeRef> return_type_;
};

}  // namespace

std::vector<CheckcastSite> checkcast_sites(const TypedProgram& typed) {
  std::vector<CheckcastSite> out;
  SiteCollector(typed, out).program();
  std::stable_sort(out.begin(), out.end(), [](const CheckcastSite& a, const CheckcastSite& b) {
    return a.loc < b.loc;
  });
  return out;
}

}  // namespace minik
