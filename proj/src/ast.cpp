#include "minik/ast.hpp"

namespace minik {
namespace {

bool eq(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool eq(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

bool eq(const Stmt& a, const Stmt& b);

bool eq(const Block& a, const Block& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    if (!eq(a.stmts[i], b.stmts[i])) return false;
  }
  return true;
}

bool eq(const std::optional<Block>& a, const std::optional<Block>& b) {
  if (!a || !b) return !a && !b;
  return eq(*a, *b);
}

bool node_eq(const expr::IntLit& a, const expr::IntLit& b) { return a.value == b.value; }
bool node_eq(const expr::StringLit& a, const expr::StringLit& b) { return a.value == b.value; }
bool node_eq(const expr::BoolLit& a, const expr::BoolLit& b) { return a.value == b.value; }
bool node_eq(const expr::VarRef& a, const expr::VarRef& b) { return a.name == b.name; }
bool node_eq(const expr::Call& a, const expr::Call& b) {
  return a.callee == b.callee && a.type_args == b.type_args && eq(a.args, b.args);
}
bool node_eq(const expr::MethodCall& a, const expr::MethodCall& b) {
  return a.name == b.name && eq(a.receiver, b.receiver) && eq(a.args, b.args);
}
bool node_eq(const expr::Index& a, const expr::Index& b) {
  return eq(a.receiver, b.receiver) && eq(a.index, b.index);
}
bool node_eq(const expr::IndexSet& a, const expr::IndexSet& b) {
  return eq(a.receiver, b.receiver) && eq(a.index, b.index) && eq(a.value, b.value);
}
bool node_eq(const expr::PropertyGet& a, const expr::PropertyGet& b) {
  return a.name == b.name && eq(a.receiver, b.receiver);
}
bool node_eq(const expr::PropertySet& a, const expr::PropertySet& b) {
  return a.name == b.name && eq(a.receiver, b.receiver) && eq(a.value, b.value);
}
bool node_eq(const expr::As& a, const expr::As& b) {
  return a.target == b.target && eq(a.operand, b.operand);
}
bool node_eq(const expr::Is& a, const expr::Is& b) {
  return a.target == b.target && eq(a.operand, b.operand);
}
bool node_eq(const expr::If& a, const expr::If& b) {
  return eq(a.cond, b.cond) && eq(a.then_block, b.then_block) && eq(a.else_block, b.else_block);
}

bool eq(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* va = std::get_if<stmt::Val>(&a.node)) {
    const auto& vb = std::get<stmt::Val>(b.node);
    return va->name == vb.name && va->declared_type == vb.declared_type && eq(va->init, vb.init);
  }
  if (auto* ea = std::get_if<stmt::ExprStmt>(&a.node)) {
    return eq(ea->expr, std::get<stmt::ExprStmt>(b.node).expr);
  }
  return eq(std::get<stmt::Return>(a.node).value, std::get<stmt::Return>(b.node).value);
}

bool eq(const std::vector<TypeParamDecl>& a, const std::vector<TypeParamDecl>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].variance != b[i].variance) return false;
  }
  return true;
}

bool eq(const FunDecl& a, const FunDecl& b) {
  if (a.name != b.name || !eq(a.type_params, b.type_params) || a.return_type != b.return_type ||
      a.params.size() != b.params.size() || !eq(a.body, b.body)) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type) return false;
  }
  return true;
}

bool eq(const PropertyDecl& a, const PropertyDecl& b) {
  return a.name == b.name && a.type == b.type && a.is_mutable == b.is_mutable &&
         a.unsafe_variance == b.unsafe_variance && eq(a.init, b.init);
}

bool eq(const ClassDecl& a, const ClassDecl& b) {
  if (a.name != b.name || !eq(a.type_params, b.type_params) || a.is_interface != b.is_interface ||
      a.is_open != b.is_open || a.ctor_private != b.ctor_private ||
      a.supertypes.size() != b.supertypes.size() || a.members.size() != b.members.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.supertypes.size(); ++i) {
    const auto& x = a.supertypes[i];
    const auto& y = b.supertypes[i];
    if (x.type != y.type || x.unsafe_variance != y.unsafe_variance || x.ctor_call != y.ctor_call) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    if (a.members[i].index() != b.members[i].index()) return false;
    bool same = std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          return eq(m, std::get<M>(b.members[i]));
        },
        a.members[i]);
    if (!same) return false;
  }
  return true;
}

void visit_block(const Block& b, const std::function<void(const Expr&)>& fn) {
  for (const auto& s : b.stmts) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, stmt::Val>) {
            visit_exprs(*n.init, fn);
          } else if constexpr (std::is_same_v<N, stmt::ExprStmt>) {
            visit_exprs(*n.expr, fn);
          } else {
            visit_exprs(*n.value, fn);
          }
        },
        s.node);
  }
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& na) {
        using N = std::decay_t<decltype(na)>;
        return node_eq(na, std::get<N>(b.node));
      },
      a.node);
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    if (a.decls[i].index() != b.decls[i].index()) return false;
    bool same = std::visit(
        [&](const auto& d) {
          using D = std::decay_t<decltype(d)>;
          const auto& other = std::get<D>(b.decls[i]);
          if constexpr (std::is_same_v<D, StmtDecl>) {
            return eq(d.stmt, other.stmt);
          } else {
            return eq(d, other);
          }
        },
        a.decls[i]);
    if (!same) return false;
  }
  return true;
}

void visit_exprs(const Expr& e, const std::function<void(const Expr&)>& fn) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, expr::Call>) {
          for (const auto& a : n.args) visit_exprs(*a, fn);
        } else if constexpr (std::is_same_v<N, expr::MethodCall>) {
          visit_exprs(*n.receiver, fn);
          for (const auto& a : n.args) visit_exprs(*a, fn);
        } else if constexpr (std::is_same_v<N, expr::Index>) {
          visit_exprs(*n.receiver, fn);
          visit_exprs(*n.index, fn);
        } else if constexpr (std::is_same_v<N, expr::IndexSet>) {
          visit_exprs(*n.receiver, fn);
          visit_exprs(*n.index, fn);
          visit_exprs(*n.value, fn);
        } else if constexpr (std::is_same_v<N, expr::PropertyGet>) {
          visit_exprs(*n.receiver, fn);
        } else if constexpr (std::is_same_v<N, expr::PropertySet>) {
          visit_exprs(*n.receiver, fn);
          visit_exprs(*n.value, fn);
        } else if constexpr (std::is_same_v<N, expr::As> || std::is_same_v<N, expr::Is>) {
          visit_exprs(*n.operand, fn);
        } else if constexpr (std::is_same_v<N, expr::If>) {
          visit_exprs(*n.cond, fn);
          visit_block(n.then_block, fn);
          if (n.else_block) visit_block(*n.else_block, fn);
        }
      },
      e.node);
  fn(e);
}

}  // namespace minik
