#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lemmaforge/bigint.hpp"
#include "lemmaforge/diagnostics.hpp"

namespace lemmaforge {

// Machine types (Char..SizeT, Pointer) may appear anywhere; Integer and
// Boolean are logic-only. Pointers always point to (possibly const) char.
enum class TypeKind { Void, Char, Int, Long, SizeT, Pointer, Integer, Boolean };

struct Type {
  TypeKind kind = TypeKind::Void;
  bool is_const = false;  // on Pointer: the pointee is const

  static Type void_type() { return {TypeKind::Void, false}; }
  static Type char_type() { return {TypeKind::Char, false}; }
  static Type int_type() { return {TypeKind::Int, false}; }
  static Type long_type() { return {TypeKind::Long, false}; }
  static Type size_type() { return {TypeKind::SizeT, false}; }
  static Type pointer(bool to_const = false) { return {TypeKind::Pointer, to_const}; }
  static Type integer() { return {TypeKind::Integer, false}; }
  static Type boolean() { return {TypeKind::Boolean, false}; }

  bool is_void() const { return kind == TypeKind::Void; }
  bool is_pointer() const { return kind == TypeKind::Pointer; }
  bool is_boolean() const { return kind == TypeKind::Boolean; }
  bool is_machine_int() const {
    return kind == TypeKind::Char || kind == TypeKind::Int || kind == TypeKind::Long ||
           kind == TypeKind::SizeT;
  }
  bool is_arith() const { return is_machine_int() || kind == TypeKind::Integer; }
  bool is_logic_only() const { return kind == TypeKind::Integer || kind == TypeKind::Boolean; }

  // Same type up to const qualification.
  bool same_as(const Type& other) const { return kind == other.kind; }
  bool operator==(const Type&) const = default;
};

// "const char *", "size_t", "integer", ...
std::string to_string(const Type& type);
// Inclusive value range of a machine integer type.
BigInt type_min(TypeKind kind);
BigInt type_max(TypeKind kind);

enum class ExprKind {
  IntLit,
  CharLit,
  BoolLit,      // \true / \false
  Null,         // NULL in code, \null in logic
  Var,
  Result,       // \result
  Unary,
  Binary,
  Chain,        // a <= b < c
  Cond,         // c ? a : b
  Call,         // code call or logic application
  Index,        // p[i]
  Quant,        // \forall / \exists
  Old,          // \old(e)
  AtPre,        // \at(e, Pre)
  Valid,        // \valid(p)
  BaseAddr,     // \base_addr(p)
  Offset,       // \offset(p)
  BlockLength,  // \block_length(p)
};

enum class UnOp { Neg, Not, Deref };
enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies, Iff };
enum class Quantifier { Forall, Exists };

const char* to_string(UnOp op);
const char* to_string(BinOp op);
bool is_relation(BinOp op);

struct Param {
  Type type;
  std::string name;
};

// What a name resolved to; filled in by sema.
enum class RefKind { Unresolved, Local, Param, Global, Binder, LogicFunction, Predicate, CodeFunction };

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  SourcePos pos;

  BigInt int_value = 0;   // IntLit, CharLit (character code)
  bool bool_value = false;
  bool logic_spelling = false;  // Null: `\null` rather than `NULL`
  std::string name;       // Var, Call
  UnOp unop = UnOp::Neg;
  BinOp binop = BinOp::Add;
  std::vector<BinOp> chain_ops;  // Chain: ops[i] relates args[i], args[i+1]
  Quantifier quant = Quantifier::Forall;
  std::vector<Param> binders;
  std::vector<ExprPtr> args;

  // Sema annotations.
  Type type;
  RefKind ref = RefKind::Unresolved;
  bool ref_ghost = false;  // the referenced variable is ghost
};

ExprPtr make_int(BigInt value, SourcePos pos = {});
ExprPtr make_char(int code, SourcePos pos = {});
ExprPtr make_bool(bool value, SourcePos pos = {});
ExprPtr make_var(std::string name, SourcePos pos = {});
ExprPtr make_unary(UnOp op, ExprPtr operand, SourcePos pos = {});
ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos = {});
ExprPtr make_quant(Quantifier q, std::vector<Param> binders, ExprPtr body, SourcePos pos = {});

enum class StmtKind { Empty, ExprStmt, Assign, Decl, If, While, For, Return, Break, Block, Ghost };
enum class AssignOp { Set, AddSet, SubSet, PreInc, PostInc, PreDec, PostDec };

struct LoopAnnot {
  std::vector<ExprPtr> invariants;
  ExprPtr variant;
  bool present() const { return !invariants.empty() || variant != nullptr; }
};

struct Declarator {
  std::string name;
  bool pointer = false;  // `*name`: pointer to the base type
  ExprPtr init;
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  SourcePos pos;

  ExprPtr expr;  // ExprStmt call, Return value (may be null), If/While/For condition
  ExprPtr lhs;   // Assign
  ExprPtr rhs;   // Assign (null for ++/--)
  AssignOp assign_op = AssignOp::Set;

  Type decl_base;  // Decl: base type of every declarator
  std::vector<Declarator> declarators;

  std::vector<StmtPtr> stmts;  // Block, Ghost
  StmtPtr then_branch;
  StmtPtr else_branch;
  StmtPtr loop_body;  // While, For
  StmtPtr for_init;   // may be null
  StmtPtr for_step;   // may be null
  LoopAnnot loop;

  bool ghost = false;  // sits inside ghost code (set by the parser)
};

Type declarator_type(const Type& base, const Declarator& d);

enum class ClauseSet { Unspecified, Nothing, Everything, Locations };

struct Contract {
  std::vector<ExprPtr> requires_;
  std::vector<ExprPtr> ensures;
  ClauseSet assigns = ClauseSet::Unspecified;
  std::vector<ExprPtr> assigns_locs;
  ClauseSet allocates = ClauseSet::Unspecified;
  std::vector<ExprPtr> allocates_locs;
  ExprPtr decreases;
  ExprPtr terminates;

  bool empty() const {
    return requires_.empty() && ensures.empty() && assigns == ClauseSet::Unspecified &&
           allocates == ClauseSet::Unspecified && !decreases && !terminates;
  }
};

enum class DeclKind {
  CodeFunction,
  GhostFunction,
  LemmaFunction,
  AxiomaticBlock,
  LogicFunction,
  Predicate,
  Lemma,
  Axiom,  // only as a member of an axiomatic block
  GlobalVar,
};

const char* to_string(DeclKind kind);

struct Decl;
using DeclPtr = std::shared_ptr<Decl>;

struct Decl {
  DeclKind kind = DeclKind::CodeFunction;
  SourcePos pos;
  std::string name;

  Type type;  // return type, variable type, logic function result type
  std::vector<Param> params;

  // Functions.
  Contract contract;
  bool has_contract = false;  // an annotation was attached
  StmtPtr body;               // Block; null for a declaration

  // Logic definition / predicate body / lemma or axiom statement / global initializer.
  ExprPtr definition;

  // Axiomatic members.
  std::vector<DeclPtr> members;

  // Global variables declared inside `ghost`.
  bool ghost_var = false;

  bool is_function() const {
    return kind == DeclKind::CodeFunction || kind == DeclKind::GhostFunction ||
           kind == DeclKind::LemmaFunction;
  }
  bool is_ghost() const {
    return kind == DeclKind::GhostFunction || kind == DeclKind::LemmaFunction || ghost_var;
  }
  bool is_lemma_function() const { return kind == DeclKind::LemmaFunction; }
};

struct SourceUnit {
  std::string file;
  std::vector<DeclPtr> decls;
};

// Pre-order walks. Statement walks reach every expression, including loop
// annotations and for-loop headers.
void visit(const ExprPtr& e, const std::function<void(const ExprPtr&)>& f);
void visit_exprs(const StmtPtr& s, const std::function<void(const ExprPtr&)>& f);
void visit_stmts(const StmtPtr& s, const std::function<void(const StmtPtr&)>& f);

// Copies `e`, replacing every subterm for which `f` returns non-null (the
// replacement is not revisited).
ExprPtr rewrite(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& f);

// Deep copies, so that transformations never alias the input unit.
ExprPtr clone(const ExprPtr& e);
StmtPtr clone(const StmtPtr& s);
DeclPtr clone(const DeclPtr& d);
SourceUnit clone(const SourceUnit& unit);

// Position-free structural rendering; two units are structurally equal iff
// their dumps are equal.
std::string structural_dump(const SourceUnit& unit);
std::string structural_dump(const ExprPtr& e);
bool structurally_equal(const SourceUnit& a, const SourceUnit& b);

}  // namespace lemmaforge
