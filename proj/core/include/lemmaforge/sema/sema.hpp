#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lemmaforge/frontend/ast.hpp"

namespace lemmaforge {

// Syntactic write/allocation summary of a function.
struct Effects {
  std::set<std::string> globals;  // global variables written
  bool heap = false;              // stores through a pointer
  bool allocates = false;         // never set: the language has no allocator

  bool empty() const { return globals.empty() && !heap && !allocates; }
  bool operator==(const Effects&) const = default;
  void merge(const Effects& other);
};

struct FunctionInfo {
  std::string name;
  std::vector<DeclPtr> decls;  // every declaration, in source order
  DeclPtr definition;          // the one with a body, if any
  DeclPtr contract_decl;       // the one carrying a non-empty contract, if any
  std::vector<std::string> callees;  // direct calls, sorted
  Effects direct;                    // from the body (or the contract when bodiless)
  Effects effects;                   // closed over callees

  DeclPtr primary() const { return definition ? definition : decls.front(); }
  const Contract& contract() const;
  bool is_lemma() const { return primary()->is_lemma_function(); }
  bool is_ghost() const { return primary()->is_ghost(); }
};

// A logic function, predicate, lemma or axiom together with its owning
// top-level declaration (an axiomatic block or the declaration itself).
struct LogicSymbol {
  DeclPtr decl;
  DeclPtr block;
  bool builtin = false;
};

struct TypedUnit {
  SourceUnit prelude;
  SourceUnit unit;
  std::vector<std::string> function_order;  // by first declaration
  std::map<std::string, FunctionInfo> functions;
  std::map<std::string, LogicSymbol> logic;
  std::map<std::string, DeclPtr> globals;

  // Prelude declarations followed by the user's; indices are the ordinals
  // used for positional reasoning.
  std::vector<DeclPtr> all_decls() const;
  const FunctionInfo* function(const std::string& name) const;
};

struct CheckOptions {
  // Accept generated `__lf_` names (used when re-checking elaborated output).
  bool allow_reserved = false;
};

// Resolves names, types every expression and enforces the code/logic and
// ghost/real separation rules. The input is not modified.
TypedUnit check(const SourceUnit& unit, const CheckOptions& options = {});

Effects effects(const TypedUnit& unit, const std::string& function);

// The built-in logic library (valid_str, strlen, strchr, ...).
std::string_view prelude_source();

inline constexpr std::string_view kReservedPrefix = "__lf_";

}  // namespace lemmaforge
