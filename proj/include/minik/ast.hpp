#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minik/source_loc.hpp"
#include "minik/type_ref.hpp"

namespace minik {

/// Identifies an expression or statement within one parsed Program.
using NodeId = std::uint32_t;

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;

struct Block {
  std::vector<Stmt> stmts;
  SourceLoc loc;
};

namespace expr {

struct IntLit {
  std::int64_t value = 0;
};
struct StringLit {
  std::string value;
};
struct BoolLit {
  bool value = false;
};
/// A local, a parameter, or `this`.
struct VarRef {
  std::string name;
};
/// `name<targs>(args)`: a function call or a constructor call; the checker
/// decides which.
struct Call {
  std::string callee;
  std::vector<TypeRef> type_args;
  std::vector<ExprPtr> args;
};
struct MethodCall {
  ExprPtr receiver;
  std::string name;
  std::vector<ExprPtr> args;
};
/// `receiver[index]`, checked as `receiver.get(index)`.
struct Index {
  ExprPtr receiver;
  ExprPtr index;
};
/// `receiver[index] = value`, checked as `receiver.set(index, value)`.
struct IndexSet {
  ExprPtr receiver;
  ExprPtr index;
  ExprPtr value;
};
struct PropertyGet {
  ExprPtr receiver;
  std::string name;
};
struct PropertySet {
  ExprPtr receiver;
  std::string name;
  ExprPtr value;
};
struct As {
  ExprPtr operand;
  TypeRef target;
};
struct Is {
  ExprPtr operand;
  TypeRef target;
};
struct If {
  ExprPtr cond;
  Block then_block;
  std::optional<Block> else_block;
};

}  // namespace expr

struct Expr {
  using Node = std::variant<expr::IntLit, expr::StringLit, expr::BoolLit, expr::VarRef,
                            expr::Call, expr::MethodCall, expr::Index, expr::IndexSet,
                            expr::PropertyGet, expr::PropertySet, expr::As, expr::Is, expr::If>;
  NodeId id = 0;
  SourceLoc loc;
  Node node;
};

namespace stmt {

struct Val {
  std::string name;
  std::optional<TypeRef> declared_type;
  ExprPtr init;
};
struct ExprStmt {
  ExprPtr expr;
};
struct Return {
  ExprPtr value;
};

}  // namespace stmt

struct Stmt {
  using Node = std::variant<stmt::Val, stmt::ExprStmt, stmt::Return>;
  NodeId id = 0;
  SourceLoc loc;
  Node node;
};

struct TypeParamDecl {
  std::string name;
  Variance variance = Variance::Inv;
  SourceLoc loc;
};

struct SupertypeDecl {
  TypeRef type;
  bool unsafe_variance = false;
  /// Written with `()`, i.e. a superclass constructor call.
  bool ctor_call = false;
  SourceLoc loc;
};

struct ParamDecl {
  std::string name;
  TypeRef type;
  SourceLoc loc;
};

struct FunDecl {
  std::string name;
  std::vector<TypeParamDecl> type_params;
  std::vector<ParamDecl> params;
  TypeRef return_type = TypeRef::unit();
  std::optional<Block> body;  // absent for abstract members and builtins
  SourceLoc loc;
};

struct PropertyDecl {
  std::string name;
  TypeRef type;
  bool is_mutable = false;
  bool unsafe_variance = false;
  ExprPtr init;  // optional
  SourceLoc loc;
};

using Member = std::variant<FunDecl, PropertyDecl>;

struct ClassDecl {
  std::string name;
  std::vector<TypeParamDecl> type_params;
  bool is_interface = false;
  bool is_open = false;
  bool ctor_private = false;
  std::vector<SupertypeDecl> supertypes;
  std::vector<Member> members;
  SourceLoc loc;
};

struct StmtDecl {
  Stmt stmt;
};

using Decl = std::variant<ClassDecl, FunDecl, StmtDecl>;

struct Program {
  std::string file;
  std::vector<Decl> decls;
  /// One past the largest NodeId handed out by the parser.
  NodeId next_id = 1;
};

/// Structural equality ignoring source locations and node ids.
[[nodiscard]] bool structurally_equal(const Program& a, const Program& b);
[[nodiscard]] bool structurally_equal(const Expr& a, const Expr& b);

/// Calls `fn` on every expression of `e` in evaluation order, `e` last.
void visit_exprs(const Expr& e, const std::function<void(const Expr&)>& fn);

}  // namespace minik
