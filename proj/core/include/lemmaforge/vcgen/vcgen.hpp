#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lemmaforge/sema/sema.hpp"
#include "lemmaforge/vcgen/ir.hpp"

namespace lemmaforge {

// Reserved symbol names of the memory model.
inline constexpr const char* kHeap = "mem.heap";
inline constexpr const char* kAlloc = "mem.alloc";
inline constexpr const char* kResult = "result.v";
inline constexpr const char* kPreSuffix = ".pre";

ir::Sort sort_of(const Type& t);

// Signature of a logic function or predicate as seen by the encoding.
// Symbols reading memory take the heap and the allocation table as their
// first two arguments.
struct LogicSig {
  std::vector<ir::Sort> params;
  ir::Sort result = ir::Sort::Bool;
  bool memory = false;
};

std::map<std::string, LogicSig> logic_signatures(const TypedUnit& unit);

// How surface names are mapped to IR terms while lowering an annotation.
struct LowerEnv {
  std::map<std::string, ir::TermPtr> vars;      // overrides; others map to sym(name)
  std::map<std::string, ir::TermPtr> old_vars;  // overrides for \old / \at(_, Pre)
  bool old_is_pre = true;                       // default \old(x) is x.pre (else x)
  bool pre_names = false;                       // default x is x.pre (inside \old)
  ir::TermPtr heap, old_heap, alloc;
  ir::TermPtr result;
};

LowerEnv default_env();

class Lowerer {
 public:
  explicit Lowerer(const TypedUnit& unit);

  ir::TermPtr term(const ExprPtr& e, const LowerEnv& env);
  ir::TermPtr formula(const ExprPtr& e, const LowerEnv& env);

  // Fresh, unique symbol name derived from `base`.
  std::string fresh(const std::string& base);

  const std::map<std::string, LogicSig>& signatures() const { return sigs_; }

 private:
  const TypedUnit& unit_;
  std::map<std::string, LogicSig> sigs_;
  std::map<std::string, ir::TermPtr> binders_;
  int counter_ = 0;
};

struct VcOptions {
  bool overflow = true;  // arithmetic overflow and conversion checks
};

struct VC {
  std::string function;
  std::string name;  // function.Kind.index
  ir::VcKind kind = ir::VcKind::Post;
  SourcePos pos;
  std::string description;
  std::vector<ir::TermPtr> hypotheses;  // local facts, in path order
  ir::TermPtr goal;
  std::vector<DeclPtr> imports;  // import closure (axiomatic blocks, logic definitions, lemmas)
};

// Whole obligation of a function before splitting (labels mark goals).
ir::TermPtr function_obligation(const TypedUnit& unit, const std::string& function, const VcOptions& options = {});

// Splits a labelled obligation into named VCs in canonical order.
std::vector<VC> split_obligation(const std::string& function, const ir::TermPtr& obligation);

std::vector<VC> vcs_for_function(const TypedUnit& unit, const std::string& function, const VcOptions& options = {});

// A top-level `lemma` declaration becomes one Post VC.
std::vector<VC> vcs_for_logic_lemma(const TypedUnit& unit, const DeclPtr& lemma);

struct UnitVcs {
  std::string name;  // function or logic lemma
  std::vector<VC> vcs;
};

// Every defined function and top-level lemma of the user unit, in source
// order.
std::vector<UnitVcs> generate_vcs(const TypedUnit& unit, const VcOptions& options = {});

// Human-readable rendering used by --emit-vcs.
std::string render_vc(const VC& vc);

}  // namespace lemmaforge
