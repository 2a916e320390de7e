#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lemmaforge/bigint.hpp"
#include "lemmaforge/diagnostics.hpp"
#include "lemmaforge/frontend/ast.hpp"

namespace lemmaforge::ir {

// Formula language shared by vcgen, the SMT encoder and the IR evaluator.
enum class Sort { Int, Bool, Ptr, Heap, Alloc };

const char* to_string(Sort s);

enum class Op {
  Int,        // value
  Bool,       // value != 0
  Sym,        // free or bound symbol `name`
  Not,
  And,        // n-ary
  Or,         // n-ary
  Implies,
  Iff,
  Ite,
  Eq,
  Lt,
  Le,
  Add,
  Sub,
  Mul,
  Div,        // C semantics: truncation toward zero
  Mod,
  Neg,
  App,        // logic function/predicate `name`
  Forall,
  Exists,
  MkPtr,      // (block, offset)
  Blk,
  Off,
  Select,     // (heap, ptr) or (alloc, block)
  Store,      // (heap, ptr, value)
  Label,      // proof obligation marker around args[0]
};

enum class VcKind {
  Post,
  LoopInvInit,
  LoopInvPreserve,
  VariantDecrease,
  VariantNonneg,
  CallPre,
  RecDecrease,
  Assigns,
  Safety,
  Terminates,
};

const char* to_string(VcKind k);

struct LabelInfo {
  VcKind kind = VcKind::Post;
  SourcePos pos;
  std::string description;
};

struct Binder {
  std::string name;
  Sort sort = Sort::Int;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Op op = Op::Int;
  Sort sort = Sort::Int;
  BigInt value = 0;
  std::string name;
  std::vector<TermPtr> args;
  std::vector<Binder> binders;
  std::shared_ptr<const LabelInfo> label;
  TypeKind ctype = TypeKind::Integer;  // Sym: machine type giving a range hypothesis
};

// Constructors. They fold trivial cases (true/false units, double negation)
// and nothing else.
TermPtr int_const(BigInt v);
TermPtr bool_const(bool v);
TermPtr sym(const std::string& name, Sort sort, TypeKind ctype = TypeKind::Integer);
TermPtr mk_not(TermPtr a);
TermPtr mk_and(std::vector<TermPtr> parts);
TermPtr mk_and(TermPtr a, TermPtr b);
TermPtr mk_or(std::vector<TermPtr> parts);
TermPtr mk_or(TermPtr a, TermPtr b);
TermPtr mk_implies(TermPtr a, TermPtr b);
TermPtr mk_iff(TermPtr a, TermPtr b);
TermPtr mk_ite(TermPtr c, TermPtr a, TermPtr b);
TermPtr mk_eq(TermPtr a, TermPtr b);
TermPtr mk_lt(TermPtr a, TermPtr b);
TermPtr mk_le(TermPtr a, TermPtr b);
TermPtr mk_arith(Op op, TermPtr a, TermPtr b);
TermPtr mk_neg(TermPtr a);
TermPtr mk_app(const std::string& name, Sort result, std::vector<TermPtr> args);
TermPtr mk_quant(Op q, std::vector<Binder> binders, TermPtr body);
TermPtr mk_ptr(TermPtr block, TermPtr offset);
TermPtr mk_blk(TermPtr p);
TermPtr mk_off(TermPtr p);
TermPtr mk_select(TermPtr array, TermPtr index);
TermPtr mk_store(TermPtr heap, TermPtr p, TermPtr v);
TermPtr mk_label(VcKind kind, SourcePos pos, std::string description, TermPtr goal);

TermPtr null_ptr();
TermPtr shift(TermPtr p, TermPtr i);
TermPtr valid(TermPtr alloc, TermPtr p);
// Inclusive range of a machine type as a formula over `t`.
TermPtr in_range(TermPtr t, TypeKind k);
// Conversion of a code value to a formula (C truthiness).
TermPtr truthy(TermPtr t);
// Conversion of a formula to a C int (0/1).
TermPtr as_int(TermPtr t);

// Simultaneous substitution of free symbols by name.
TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& s);

// Free symbols (not bound by an enclosing quantifier), by name.
void free_symbols(const TermPtr& t, std::map<std::string, TermPtr>& out);
// Names of applied logic functions.
void applied_functions(const TermPtr& t, std::set<std::string>& out);

bool contains_label(const TermPtr& t);
TermPtr strip_labels(const TermPtr& t);

// SMT-LIB rendering; `rename(name, is_function)` maps symbol and function names.
std::string render(const TermPtr& t, const std::function<std::string(const std::string&, bool)>& rename);
// Same with names left unchanged.
std::string to_string(const TermPtr& t);

}  // namespace lemmaforge::ir
