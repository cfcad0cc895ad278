#include "minik/printer.hpp"

#include <sstream>

namespace minik {
namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

class Printer {
 public:
  std::string take() { return out_.str(); }

  void program(const Program& p) {
    for (const auto& d : p.decls) {
      std::visit([&](const auto& node) { decl(node); }, d);
    }
  }

  void expr(const Expr& e) {
    std::visit([&](const auto& n) { expr_node(n); }, e.node);
  }

 private:
  void indent() {
    for (int i = 0; i < depth_; ++i) out_ << "    ";
  }

  void type_params(const std::vector<TypeParamDecl>& tps) {
    if (tps.empty()) return;
    out_ << "<";
    for (std::size_t i = 0; i < tps.size(); ++i) {
      if (i) out_ << ", ";
      if (tps[i].variance != Variance::Inv) out_ << variance_keyword(tps[i].variance) << " ";
      out_ << tps[i].name;
    }
    out_ << ">";
  }

  void decl(const ClassDecl& c) {
    indent();
    if (c.is_open) out_ << "open ";
    out_ << (c.is_interface ? "interface " : "class ") << c.name;
    type_params(c.type_params);
    if (c.ctor_private) out_ << " private constructor()";
    for (std::size_t i = 0; i < c.supertypes.size(); ++i) {
      const auto& s = c.supertypes[i];
      out_ << (i ? ", " : " : ");
      if (s.unsafe_variance) out_ << "@UnsafeVariance ";
      out_ << s.type.str();
      if (s.ctor_call) out_ << "()";
    }
    if (!c.members.empty()) {
      out_ << " {\n";
      ++depth_;
      for (const auto& m : c.members) {
        std::visit([&](const auto& node) { member(node); }, m);
      }
      --depth_;
      indent();
      out_ << "}";
    }
    out_ << "\n";
  }

  void member(const FunDecl& f) { decl(f); }

  void member(const PropertyDecl& p) {
    indent();
    out_ << (p.is_mutable ? "var " : "val ") << p.name << ": ";
    if (p.unsafe_variance) out_ << "@UnsafeVariance ";
    out_ << p.type.str();
    if (p.init) {
      out_ << " = ";
      expr(*p.init);
    }
    out_ << "\n";
  }

  void decl(const FunDecl& f) {
    indent();
    out_ << "fun ";
    if (!f.type_params.empty()) {
      type_params(f.type_params);
      out_ << " ";
    }
    out_ << f.name << "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) out_ << ", ";
      out_ << f.params[i].name << ": " << f.params[i].type.str();
    }
    out_ << "): " << f.return_type.str();
    if (f.body) {
      out_ << " ";
      block(*f.body);
    }
    out_ << "\n";
  }

  void decl(const StmtDecl& s) {
    indent();
    stmt(s.stmt);
    out_ << "\n";
  }

  void block(const Block& b) {
    out_ << "{\n";
    ++depth_;
    for (const auto& s : b.stmts) {
      indent();
      stmt(s);
      out_ << "\n";
    }
    --depth_;
    indent();
    out_ << "}";
  }

  void stmt(const Stmt& s) {
    std::visit([&](const auto& n) { stmt_node(n); }, s.node);
  }

  void stmt_node(const stmt::Val& v) {
    out_ << "val " << v.name;
    if (v.declared_type) out_ << ": " << v.declared_type->str();
    out_ << " = ";
    expr(*v.init);
  }
  void stmt_node(const stmt::ExprStmt& s) { expr(*s.expr); }
  void stmt_node(const stmt::Return& r) {
    out_ << "return ";
    expr(*r.value);
  }

  /// Receivers and cast operands that would not re-parse bare.
  void operand(const Expr& e) {
    bool wrap = std::holds_alternative<expr::As>(e.node) || std::holds_alternative<expr::Is>(e.node) ||
                std::holds_alternative<expr::If>(e.node);
    if (wrap) out_ << "(";
    expr(e);
    if (wrap) out_ << ")";
  }

  void args(const std::vector<ExprPtr>& as) {
    out_ << "(";
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) out_ << ", ";
      expr(*as[i]);
    }
    out_ << ")";
  }

  void expr_node(const expr::IntLit& n) { out_ << n.value; }
  void expr_node(const expr::StringLit& n) { out_ << quote(n.value); }
  void expr_node(const expr::BoolLit& n) { out_ << (n.value ? "true" : "false"); }
  void expr_node(const expr::VarRef& n) { out_ << n.name; }
  void expr_node(const expr::Call& n) {
    out_ << n.callee;
    if (!n.type_args.empty()) out_ << "<" << join_types(n.type_args) << ">";
    args(n.args);
  }
  void expr_node(const expr::MethodCall& n) {
    operand(*n.receiver);
    out_ << "." << n.name;
    args(n.args);
  }
  void expr_node(const expr::Index& n) {
    operand(*n.receiver);
    out_ << "[";
    expr(*n.index);
    out_ << "]";
  }
  void expr_node(const expr::IndexSet& n) {
    operand(*n.receiver);
    out_ << "[";
    expr(*n.index);
    out_ << "] = ";
    expr(*n.value);
  }
  void expr_node(const expr::PropertyGet& n) {
    operand(*n.receiver);
    out_ << "." << n.name;
  }
  void expr_node(const expr::PropertySet& n) {
    operand(*n.receiver);
    out_ << "." << n.name << " = ";
    expr(*n.value);
  }
  void expr_node(const expr::As& n) {
    bool wrap = std::holds_alternative<expr::Is>(n.operand->node) ||
                std::holds_alternative<expr::If>(n.operand->node);
    if (wrap) out_ << "(";
    expr(*n.operand);
    if (wrap) out_ << ")";
    out_ << " as " << n.target.str();
  }
  void expr_node(const expr::Is& n) {
    bool wrap = std::holds_alternative<expr::If>(n.operand->node);
    if (wrap) out_ << "(";
    expr(*n.operand);
    if (wrap) out_ << ")";
    out_ << " is " << n.target.str();
  }
  void expr_node(const expr::If& n) {
    out_ << "if (";
    expr(*n.cond);
    out_ << ") ";
    block(n.then_block);
    if (n.else_block) {
      out_ << " else ";
      block(*n.else_block);
    }
  }

  std::ostringstream out_;
  int depth_ = 0;
};

}  // namespace

std::string pretty_print(const Program& program) {
  Printer p;
  p.program(program);
  return p.take();
}

std::string pretty_print(const Expr& e) {
  Printer p;
  p.expr(e);
  return p.take();
}

}  // namespace minik
