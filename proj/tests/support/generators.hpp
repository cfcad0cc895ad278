#pragma once

// Random program and type generators shared by the property tests and the
// acceptance binary. Everything is driven by an explicit seed.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "minik/checker.hpp"
#include "minik/class_table.hpp"
#include "minik/type_ref.hpp"

namespace minik::testing {

using Rng = std::mt19937_64;

/// A well-formed random hierarchy: declarations respect variance positions
/// and every ancestor is reached with a single instantiation.
struct Hierarchy {
  std::string source;
  std::shared_ptr<const ClassTable> table;
  std::vector<std::string> classes;  // user classes plus the prelude lists
};

/// Up to six user classes; with `single_inheritance` every class has at
/// most one supertype, otherwise interfaces may have several.
Hierarchy random_hierarchy(Rng& rng, bool single_inheritance);

/// A closed type of nesting depth at most `depth` over `h`.
TypeRef random_type(Rng& rng, const Hierarchy& h, int depth);

/// One random widening step; the result is meant to be a supertype of `t`.
TypeRef widen(Rng& rng, const Hierarchy& h, const TypeRef& t);

/// Random parseable program text exercising every syntactic form.
std::string random_program_text(Rng& rng);

/// A function body that pushes a list through a chain of implicit upcasts
/// and ends in a bare downcast. `keep[i]` selects which intermediate steps
/// are written; dropping steps keeps the program well typed.
struct CoercionChain {
  std::vector<TypeRef> steps;  // steps[0] is the fresh list's type
  bool with_join = false;      // route one step through both arms of an if/else
  std::size_t join_at = 0;
};

CoercionChain random_chain(Rng& rng);
std::string chain_program(const CoercionChain& chain, const std::vector<bool>& keep);

/// Compiles a program that must be free of errors; throws otherwise.
TypedProgram typed_or_throw(const std::string& source, const std::string& file = "gen.mk");

}  // namespace minik::testing
