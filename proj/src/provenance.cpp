#include "minik/provenance.hpp"

#include <algorithm>

namespace minik {

bool TypeSet::insert(TypeRef t) {
  if (contains(t)) return false;
  types_.push_back(std::move(t));
  return true;
}

void TypeSet::merge(const TypeSet& other) {
  for (const auto& t : other.types_) insert(t);
}

bool TypeSet::contains(const TypeRef& t) const {
  return std::find(types_.begin(), types_.end(), t) != types_.end();
}

bool TypeSet::includes(const TypeSet& other) const {
  return std::all_of(other.types_.begin(), other.types_.end(), [&](const TypeRef& t) { return contains(t); });
}

std::string TypeSet::str() const { return "{" + join_types(types_) + "}"; }

const TypeSet* ProvenanceMap::for_variable(const std::string& name) const {
  auto it = binding_by_name.find(name);
  if (it == binding_by_name.end()) return nullptr;
  auto b = bindings.find(it->second);
  return b == bindings.end() ? nullptr : &b->second;
}

namespace {

class Analysis {
 public:
  Analysis(const TypedProgram& typed, ProvenanceMap& out) : typed_(typed), out_(out) {}

  void block(const Block& b) {
    env_.emplace_back();
    for (const auto& s : b.stmts) stmt(s);
    env_.pop_back();
  }

  void script(const std::vector<const Stmt*>& stmts) {
    env_.emplace_back();
    for (const Stmt* s : stmts) stmt(*s);
    env_.pop_back();
  }

 private:
  /// Value of the block: the set of its trailing expression statement.
  TypeSet block_value(const Block& b) {
    env_.emplace_back();
    TypeSet value;
    for (std::size_t i = 0; i < b.stmts.size(); ++i) {
      TypeSet s = stmt(b.stmts[i]);
      if (i + 1 == b.stmts.size() && std::holds_alternative<stmt::ExprStmt>(b.stmts[i].node)) value = s;
    }
    env_.pop_back();
    return value;
  }

  TypeSet stmt(const Stmt& s) {
    if (const auto* v = std::get_if<stmt::Val>(&s.node)) {
      TypeSet set = expr(*v->init);
      if (auto it = typed_.val_types.find(s.id); it != typed_.val_types.end()) set.insert(it->second);
      out_.bindings[s.id] = set;
      out_.binding_by_name[v->name] = s.id;
      env_.back()[v->name] = std::move(set);
      return {};
    }
    if (const auto* r = std::get_if<stmt::Return>(&s.node)) {
      expr(*r->value);
      return {};
    }
    return expr(*std::get<stmt::ExprStmt>(s.node).expr);
  }

  const TypeSet* lookup(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  TypeSet fresh(const Expr& e) const {
    auto it = typed_.expr_types.find(e.id);
    return it == typed_.expr_types.end() ? TypeSet{} : TypeSet{it->second};
  }

  TypeSet expr(const Expr& e) {
    TypeSet set = std::visit([&](const auto& n) { return node(e, n); }, e.node);
    // The current static type belongs to the set, narrowed references included.
    if (auto it = typed_.expr_types.find(e.id); it != typed_.expr_types.end()) set.insert(it->second);
    out_.exprs[e.id] = set;
    return set;
  }

  template <class Lit>
  TypeSet node(const Expr& e, const Lit&) {
    return fresh(e);
  }

  TypeSet node(const Expr& e, const expr::VarRef& n) {
    if (const TypeSet* s = lookup(n.name)) return *s;
    return fresh(e);
  }

  TypeSet node(const Expr& e, const expr::Call& n) {
    for (const auto& a : n.args) expr(*a);
    return fresh(e);
  }
  TypeSet node(const Expr& e, const expr::MethodCall& n) {
    expr(*n.receiver);
    for (const auto& a : n.args) expr(*a);
    return fresh(e);
  }
  TypeSet node(const Expr& e, const expr::Index& n) {
    expr(*n.receiver);
    expr(*n.index);
    return fresh(e);
  }
  TypeSet node(const Expr& e, const expr::IndexSet& n) {
    expr(*n.receiver);
    expr(*n.index);
    expr(*n.value);
    return fresh(e);
  }
  TypeSet node(const Expr& e, const expr::PropertyGet& n) {
    expr(*n.receiver);
    return fresh(e);
  }
  TypeSet node(const Expr& e, const expr::PropertySet& n) {
    expr(*n.receiver);
    expr(*n.value);
    return fresh(e);
  }
  TypeSet node(const Expr&, const expr::As& n) { return expr(*n.operand); }
  TypeSet node(const Expr& e, const expr::Is& n) {
    expr(*n.operand);
    return fresh(e);
  }
  TypeSet node(const Expr&, const expr::If& n) {
    expr(*n.cond);
    TypeSet out = block_value(n.then_block);
    if (n.else_block) out.merge(block_value(*n.else_block));
    return out;
  }

  const TypedProgram& typed_;
  ProvenanceMap& out_;
  std::vector<std::map<std::string, TypeSet>> env_;
};

void collect_casts(const Block& b, std::vector<const Expr*>& out);

void collect_casts(const Stmt& s, std::vector<const Expr*>& out) {
  const Expr* root = nullptr;
  if (const auto* v = std::get_if<stmt::Val>(&s.node)) root = v->init.get();
  if (const auto* r = std::get_if<stmt::Return>(&s.node)) root = r->value.get();
  if (const auto* x = std::get_if<stmt::ExprStmt>(&s.node)) root = x->expr.get();
  visit_exprs(*root, [&](const Expr& e) {
    if (std::holds_alternative<expr::As>(e.node)) out.push_back(&e);
    if (const auto* i = std::get_if<expr::If>(&e.node)) {
      collect_casts(i->then_block, out);
      if (i->else_block) collect_casts(*i->else_block, out);
    }
  });
}

void collect_casts(const Block& b, std::vector<const Expr*>& out) {
  for (const auto& s : b.stmts) collect_casts(s, out);
}

}  // namespace

ProvenanceMap compute_provenance(const TypedProgram& typed, const FunctionScope& scope) {
  ProvenanceMap map;
  map.scope = scope.name;
  Analysis a(typed, map);
  if (scope.body) {
    a.block(*scope.body);
  } else {
    a.script(scope.top_level);
  }
  return map;
}

std::vector<Diagnostic> lint_function(const TypedProgram& typed, const FunctionScope& scope,
                                      const ProvenanceMap& prov) {
  std::vector<const Expr*> casts;
  if (scope.body) {
    collect_casts(*scope.body, casts);
  } else {
    for (const Stmt* s : scope.top_level) collect_casts(*s, casts);
  }

  std::vector<Diagnostic> out;
  for (const Expr* e : casts) {
    auto info = typed.casts.find(e->id);
    if (info == typed.casts.end()) continue;
    const TypeRef& target = info->second.completed_target;
    const bool silent = info->second.classification == CastClassification::UncheckedSilent;
    const bool checked_generic =
        info->second.classification == CastClassification::FullyChecked && !target.args.empty();
    if (!silent && !checked_generic) continue;

    const Expr& operand = *std::get<expr::As>(e->node).operand;
    auto origins = prov.exprs.find(operand.id);
    if (origins == prov.exprs.end()) continue;
    std::vector<TypeRef> culprits;
    for (const auto& origin : origins->second.types()) {
      if (classify_cast_baseline(*typed.table, origin, target) == CastClassification::UncheckedWarned) {
        culprits.push_back(origin);
      }
    }
    if (culprits.empty()) continue;
    out.push_back(Diagnostic{DiagCode::ProvenanceUncheckedCast, e->loc,
                             "unchecked cast: " + typed.type_of(operand).str() + " to " + target.str() +
                                 "; value was implicitly cast from " + join_types(culprits) +
                                 " (origins: " + origins->second.str() + ")"});
  }
  return out;
}

std::vector<Diagnostic> lint_program(const TypedProgram& typed) {
  std::vector<Diagnostic> out;
  for (const auto& scope : typed.scopes) {
    auto ds = lint_function(typed, scope, compute_provenance(typed, scope));
    out.insert(out.end(), ds.begin(), ds.end());
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace minik
