#pragma once

#include <map>
#include <string>
#include <vector>

#include "lemmaforge/sema/sema.hpp"

namespace lemmaforge {

struct GeneratedNames {
  std::string hash;       // 8 hex chars
  std::string block;      // __lf_<fn>_<h>
  std::string predicate;  // __lf_ok_<fn>_<h>
  std::string axiom;      // __lf_ax_<fn>_<h>
};

// Stable names derived from the lexically normalized file path and the
// function name.
GeneratedNames generated_names(const std::string& file, const std::string& function);

struct GeneratedAxiom {
  std::string name;
  ExprPtr statement;  // \forall params, globals; [\exists result;] R ==> E
  std::string origin;
};

// Throws ImpureLemma when the lemma function has effects.
GeneratedAxiom generate_lemma_axiom(const TypedUnit& unit, const FunctionInfo& fn);

struct ImportBlock {
  DeclPtr block;  // axiomatic { predicate <dummy> = \true; axiom <ax>: ...; }
  std::string predicate;
};

ImportBlock synthesize_import_block(const std::string& file, const FunctionInfo& fn,
                                    const GeneratedAxiom& axiom);

// Returns a copy of the contract with assigns/allocates \nothing and
// terminates \true added. Throws ConflictingClause on contradicting clauses.
Contract enforce_lemma_clauses(const FunctionInfo& fn);

struct LemmaComponent {
  std::vector<std::string> members;  // sorted by definition position
  size_t anchor = 0;                 // ordinal of the first-defined member's definition
  SourcePos anchor_pos;
};

struct OrderingGraph {
  std::vector<LemmaComponent> components;  // in anchor order (a topological order)
  std::map<std::string, size_t> component_of;
  std::vector<std::pair<std::string, std::string>> edges;  // lemma -> lemma calls
};

// Groups lemma functions into call-graph SCCs and checks that no function
// calls a lemma function whose component is anchored later (ForwardLemmaUse).
OrderingGraph order_lemma_components(const TypedUnit& unit);

// Ordinal (in TypedUnit::all_decls) of the declaration positioning a function:
// its definition, or its first declaration when it has no body.
size_t function_anchor(const TypedUnit& unit, const FunctionInfo& fn);

struct Elaboration {
  SourceUnit unit;    // the elaborated user unit
  TypedUnit typed;    // `unit` re-checked
  OrderingGraph order;  // anchors are ordinals of the input unit
  std::map<std::string, GeneratedNames> names;  // per lemma function
};

// Full transformation. Throws AlreadyElaborated when the unit already
// contains generated declarations.
Elaboration elaborate(const TypedUnit& unit);

// Top-level logic declarations (axiomatic blocks and stand-alone logic
// functions/predicates) whose definitions a function's proof needs, by
// on-demand import from the symbols it mentions. Ordered by position.
std::vector<DeclPtr> compute_import_closure(const TypedUnit& unit, const std::string& function);

// Same, seeded with an explicit symbol set.
std::vector<DeclPtr> import_closure_of(const TypedUnit& unit, std::set<std::string> symbols);

// Logic symbols referenced by an expression.
void collect_logic_symbols(const ExprPtr& e, std::set<std::string>& out);

bool is_import_predicate(const std::string& name);

}  // namespace lemmaforge
