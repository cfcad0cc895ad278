#include "properties.hpp"

#include <functional>
#include <set>

#include "generators.hpp"
#include "minik/parser.hpp"
#include "minik/printer.hpp"
#include "minik/provenance.hpp"
#include "minik/subtyping.hpp"

namespace minik::testing {

namespace {

void fail(PropertyResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

/// Hierarchies are costly to generate, so consecutive instances share one.
class HierarchyPool {
 public:
  HierarchyPool(Rng& rng, bool single) : rng_(rng), single_(single) {}
  const Hierarchy& next() {
    if (uses_++ % 20 == 0) current_ = random_hierarchy(rng_, single_);
    return current_;
  }

 private:
  Rng& rng_;
  bool single_;
  int uses_ = 0;
  Hierarchy current_;
};

TypeRef widen_n(Rng& rng, const Hierarchy& h, TypeRef t, int n) {
  for (int i = 0; i < n; ++i) t = widen(rng, h, t);
  return t;
}

TypeRef related_or_random(Rng& rng, const Hierarchy& h, const TypeRef& from) {
  if (std::bernoulli_distribution(0.7)(rng)) return widen_n(rng, h, from, std::uniform_int_distribution<int>(1, 3)(rng));
  return random_type(rng, h, 4);
}

std::string context(const Hierarchy& h, const std::string& what) { return what + "\nin hierarchy:\n" + h.source; }

const FunctionScope& scope_named(const TypedProgram& typed, const std::string& name) {
  for (const auto& s : typed.scopes) {
    if (s.name == name) return s;
  }
  throw std::runtime_error("no scope " + name);
}

}  // namespace

PropertyResult prop_subtype_reflexive(std::uint64_t seed, int n) {
  PropertyResult r{"subtyping reflexivity"};
  Rng rng(seed);
  HierarchyPool pool(rng, false);
  for (int i = 0; i < n; ++i) {
    const Hierarchy& h = pool.next();
    const TypeRef t = random_type(rng, h, 4);
    ++r.instances;
    if (!subtype(*h.table, t, t)) fail(r, context(h, t.str() + " is not a subtype of itself"));
  }
  return r;
}

PropertyResult prop_subtype_transitive(std::uint64_t seed, int n) {
  PropertyResult r{"subtyping transitivity"};
  Rng rng(seed);
  HierarchyPool pool(rng, false);
  for (int attempt = 0; r.instances < n && attempt < 50 * n; ++attempt) {
    const Hierarchy& h = pool.next();
    const TypeRef a = random_type(rng, h, 4);
    const TypeRef b = related_or_random(rng, h, a);
    const TypeRef c = related_or_random(rng, h, b);
    const ClassTable& ct = *h.table;
    if (!subtype(ct, a, b) || !subtype(ct, b, c)) continue;
    ++r.instances;
    if (!subtype(ct, a, c)) {
      fail(r, context(h, a.str() + " <: " + b.str() + " <: " + c.str() + " but not " + a.str() + " <: " + c.str()));
    }
  }
  return r;
}

PropertyResult prop_variance_lifting(std::uint64_t seed, int n) {
  PropertyResult r{"variance lifting"};
  Rng rng(seed);
  HierarchyPool pool(rng, false);
  for (int attempt = 0; r.instances < n && attempt < 50 * n; ++attempt) {
    const Hierarchy& h = pool.next();
    const ClassTable& ct = *h.table;
    std::vector<const ClassInfo*> generic;
    for (const auto& name : h.classes) {
      if (!ct.find_class(name)->type_params.empty()) generic.push_back(ct.find_class(name));
    }
    if (generic.empty()) continue;
    const ClassInfo* c = generic[std::uniform_int_distribution<std::size_t>(0, generic.size() - 1)(rng)];
    const std::size_t slot = std::uniform_int_distribution<std::size_t>(0, c->type_params.size() - 1)(rng);
    const TypeRef x = random_type(rng, h, 3);
    const TypeRef y = widen_n(rng, h, x, 1 + static_cast<int>(rng() % 2));
    if (x == y || !subtype(ct, x, y)) continue;

    TypeRef cx = TypeRef::make_class(c->name);
    for (std::size_t i = 0; i < c->type_params.size(); ++i) cx.args.push_back(random_type(rng, h, 2));
    TypeRef cy = cx;
    cx.args[slot] = x;
    cy.args[slot] = y;
    ++r.instances;
    const bool up = subtype(ct, cx, cy);
    const bool down = subtype(ct, cy, cx);
    const std::string pair = cx.str() + " vs " + cy.str();
    switch (c->type_params[slot].variance) {
      case Variance::Out:
        if (!up) fail(r, context(h, "covariant lifting failed: " + pair));
        break;
      case Variance::In:
        if (!down) fail(r, context(h, "contravariant lifting failed: " + pair));
        break;
      case Variance::Inv:
        if (up || down) fail(r, context(h, "invariant slot related unequal arguments: " + pair));
        break;
    }
    // Reverse direction: a strict widening of a covariant argument never narrows.
    if (c->type_params[slot].variance == Variance::Out && !subtype(ct, y, x) && down) {
      fail(r, context(h, "covariant slot lifted the wrong way: " + pair));
    }
  }
  return r;
}

PropertyResult prop_lub_minimal(std::uint64_t seed, int n) {
  PropertyResult r{"lub minimality"};
  Rng rng(seed);
  HierarchyPool pool(rng, true);
  for (int i = 0; i < n; ++i) {
    const Hierarchy& h = pool.next();
    const ClassTable& ct = *h.table;
    const TypeRef a = random_type(rng, h, 3);
    const TypeRef b = std::bernoulli_distribution(0.5)(rng) ? random_type(rng, h, 3) : related_or_random(rng, h, random_type(rng, h, 2));
    const TypeRef l = lub(ct, a, b);
    ++r.instances;
    if (!subtype(ct, a, l) || !subtype(ct, b, l)) {
      fail(r, context(h, "lub(" + a.str() + ", " + b.str() + ") = " + l.str() + " is not an upper bound"));
      continue;
    }
    std::vector<TypeRef> bounds;
    for (int k = 0; k < 8; ++k) {
      bounds.push_back(widen_n(rng, h, a, k));
      bounds.push_back(widen_n(rng, h, b, k));
    }
    for (int k = 0; k < 30; ++k) bounds.push_back(random_type(rng, h, 3));
    for (const auto& u : bounds) {
      if (subtype(ct, a, u) && subtype(ct, b, u) && subtype(ct, u, l) && !subtype(ct, l, u)) {
        fail(r, context(h, "lub(" + a.str() + ", " + b.str() + ") = " + l.str() + " but " + u.str() +
                               " is a smaller upper bound"));
        break;
      }
    }
  }
  return r;
}

PropertyResult prop_provenance_monotone(std::uint64_t seed, int n) {
  PropertyResult r{"provenance monotonicity"};
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const CoercionChain chain = random_chain(rng);
    std::vector<bool> all(chain.steps.size(), true);
    std::vector<bool> some(chain.steps.size(), true);
    for (std::size_t k = 1; k + 1 < some.size(); ++k) some[k] = std::bernoulli_distribution(0.5)(rng);
    const std::string full_src = chain_program(chain, all);
    const std::string sub_src = chain_program(chain, some);
    const TypedProgram full = typed_or_throw(full_src);
    const TypedProgram sub = typed_or_throw(sub_src);
    const ProvenanceMap pf = compute_provenance(full, scope_named(full, "chain"));
    const ProvenanceMap ps = compute_provenance(sub, scope_named(sub, "chain"));
    ++r.instances;
    for (const auto& [name, id] : ps.binding_by_name) {
      const TypeSet* s = ps.for_variable(name);
      const TypeSet* f = pf.for_variable(name);
      if (!f || !f->includes(*s)) {
        fail(r, "dropping coercions grew the set of " + name + ": " + s->str() + " vs " + (f ? f->str() : "none") +
                    "\n" + sub_src + "\n" + full_src);
        break;
      }
    }
  }
  return r;
}

PropertyResult prop_provenance_conservative(std::uint64_t seed, int n) {
  PropertyResult r{"provenance conservativeness"};
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const CoercionChain chain = random_chain(rng);
    const std::string src = chain_program(chain, std::vector<bool>(chain.steps.size(), true));
    const TypedProgram typed = typed_or_throw(src);
    const FunctionScope& scope = scope_named(typed, "chain");
    const ProvenanceMap prov = compute_provenance(typed, scope);

    // Static types the checker observed in this scope.
    std::set<TypeRef> observed;
    std::function<void(const Block&)> collect = [&](const Block& b) {
      for (const auto& s : b.stmts) {
        if (auto it = typed.val_types.find(s.id); it != typed.val_types.end()) observed.insert(it->second);
        const Expr* root = nullptr;
        if (const auto* v = std::get_if<stmt::Val>(&s.node)) root = v->init.get();
        if (const auto* x = std::get_if<stmt::ExprStmt>(&s.node)) root = x->expr.get();
        if (const auto* ret = std::get_if<stmt::Return>(&s.node)) root = ret->value.get();
        visit_exprs(*root, [&](const Expr& e) {
          if (auto it = typed.expr_types.find(e.id); it != typed.expr_types.end()) observed.insert(it->second);
          if (const auto* iff = std::get_if<expr::If>(&e.node)) {
            collect(iff->then_block);
            if (iff->else_block) collect(*iff->else_block);
          }
        });
      }
    };
    collect(*scope.body);
    for (const auto& c : typed.coercions) {
      if (c.scope == "chain") {
        observed.insert(c.from);
        observed.insert(c.to);
      }
    }

    ++r.instances;
    bool bad = false;
    for (const auto& [id, set] : prov.exprs) {
      if (auto it = typed.expr_types.find(id); it != typed.expr_types.end() && !set.contains(it->second)) {
        fail(r, "set " + set.str() + " misses the current type " + it->second.str() + "\n" + src);
        bad = true;
        break;
      }
      for (const auto& t : set.types()) {
        if (!observed.count(t)) {
          fail(r, "set " + set.str() + " holds " + t.str() + ", which the value never had\n" + src);
          bad = true;
          break;
        }
      }
      if (bad) break;
    }
  }
  return r;
}

PropertyResult prop_parser_round_trip(std::uint64_t seed, int n) {
  PropertyResult r{"parser round trip"};
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const std::string text = random_program_text(rng);
    ++r.instances;
    try {
      const Program first = parse(text, "gen.mk");
      const std::string printed = pretty_print(first);
      const Program second = parse(printed, "gen.mk");
      if (!structurally_equal(first, second)) {
        fail(r, "reparse differs:\n" + text + "\nprinted:\n" + printed);
      } else if (pretty_print(second) != printed) {
        fail(r, "printing is not a fixed point:\n" + printed);
      }
    } catch (const ParseError& e) {
      fail(r, std::string("parse error ") + e.what() + " in:\n" + text);
    }
  }
  return r;
}

}  // namespace minik::testing
