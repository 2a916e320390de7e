#include "lemmaforge/frontend/ast.hpp"

#include <sstream>

namespace lemmaforge {

std::string to_string(const Type& type) {
  switch (type.kind) {
    case TypeKind::Void: return "void";
    case TypeKind::Char: return "char";
    case TypeKind::Int: return "int";
    case TypeKind::Long: return "long";
    case TypeKind::SizeT: return "size_t";
    case TypeKind::Pointer: return type.is_const ? "const char *" : "char *";
    case TypeKind::Integer: return "integer";
    case TypeKind::Boolean: return "boolean";
  }
  return "?";
}

BigInt type_min(TypeKind kind) {
  switch (kind) {
    case TypeKind::Char: return -128;
    case TypeKind::Int: return -(static_cast<BigInt>(1) << 31);
    case TypeKind::Long: return -(static_cast<BigInt>(1) << 63);
    case TypeKind::SizeT: return 0;
    default: return 0;
  }
}

BigInt type_max(TypeKind kind) {
  switch (kind) {
    case TypeKind::Char: return 127;
    case TypeKind::Int: return (static_cast<BigInt>(1) << 31) - 1;
    case TypeKind::Long: return (static_cast<BigInt>(1) << 63) - 1;
    case TypeKind::SizeT: return (static_cast<BigInt>(1) << 64) - 1;
    default: return 0;
  }
}

const char* to_string(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "-";
    case UnOp::Not: return "!";
    case UnOp::Deref: return "*";
  }
  return "?";
}

const char* to_string(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::Implies: return "==>";
    case BinOp::Iff: return "<==>";
  }
  return "?";
}

bool is_relation(BinOp op) {
  return op == BinOp::Eq || op == BinOp::Ne || op == BinOp::Lt || op == BinOp::Le ||
         op == BinOp::Gt || op == BinOp::Ge;
}

const char* to_string(DeclKind kind) {
  switch (kind) {
    case DeclKind::CodeFunction: return "CodeFunction";
    case DeclKind::GhostFunction: return "GhostFunction";
    case DeclKind::LemmaFunction: return "LemmaFunction";
    case DeclKind::AxiomaticBlock: return "AxiomaticBlock";
    case DeclKind::LogicFunction: return "LogicFunction";
    case DeclKind::Predicate: return "Predicate";
    case DeclKind::Lemma: return "Lemma";
    case DeclKind::Axiom: return "Axiom";
    case DeclKind::GlobalVar: return "GlobalVar";
  }
  return "?";
}

ExprPtr make_int(BigInt value, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::IntLit;
  e->int_value = value;
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_char(int code, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::CharLit;
  e->int_value = code;
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_bool(bool value, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolLit;
  e->bool_value = value;
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_var(std::string name, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_unary(UnOp op, ExprPtr operand, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->unop = op;
  e->args = {std::move(operand)};
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->binop = op;
  e->args = {std::move(lhs), std::move(rhs)};
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->name = std::move(name);
  e->args = std::move(args);
  e->pos = std::move(pos);
  return e;
}

ExprPtr make_quant(Quantifier q, std::vector<Param> binders, ExprPtr body, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Quant;
  e->quant = q;
  e->binders = std::move(binders);
  e->args = {std::move(body)};
  e->pos = std::move(pos);
  return e;
}

Type declarator_type(const Type& base, const Declarator& d) {
  if (d.pointer) return Type::pointer(base.is_const);
  return base;
}

void visit(const ExprPtr& e, const std::function<void(const ExprPtr&)>& f) {
  if (!e) return;
  f(e);
  for (auto& a : e->args) visit(a, f);
}

void visit_stmts(const StmtPtr& s, const std::function<void(const StmtPtr&)>& f) {
  if (!s) return;
  f(s);
  for (auto& c : s->stmts) visit_stmts(c, f);
  visit_stmts(s->then_branch, f);
  visit_stmts(s->else_branch, f);
  visit_stmts(s->for_init, f);
  visit_stmts(s->loop_body, f);
  visit_stmts(s->for_step, f);
}

void visit_exprs(const StmtPtr& s, const std::function<void(const ExprPtr&)>& f) {
  visit_stmts(s, [&](const StmtPtr& st) {
    visit(st->expr, f);
    visit(st->lhs, f);
    visit(st->rhs, f);
    for (auto& d : st->declarators) visit(d.init, f);
    for (auto& inv : st->loop.invariants) visit(inv, f);
    visit(st->loop.variant, f);
  });
}

ExprPtr rewrite(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& f) {
  if (!e) return nullptr;
  if (ExprPtr r = f(e)) return r;
  auto copy = std::make_shared<Expr>(*e);
  for (auto& a : copy->args) a = rewrite(a, f);
  return copy;
}

ExprPtr clone(const ExprPtr& e) {
  if (!e) return nullptr;
  auto copy = std::make_shared<Expr>(*e);
  for (auto& a : copy->args) a = clone(a);
  return copy;
}

StmtPtr clone(const StmtPtr& s) {
  if (!s) return nullptr;
  auto copy = std::make_shared<Stmt>(*s);
  copy->expr = clone(s->expr);
  copy->lhs = clone(s->lhs);
  copy->rhs = clone(s->rhs);
  for (auto& d : copy->declarators) d.init = clone(d.init);
  for (auto& st : copy->stmts) st = clone(st);
  copy->then_branch = clone(s->then_branch);
  copy->else_branch = clone(s->else_branch);
  copy->loop_body = clone(s->loop_body);
  copy->for_init = clone(s->for_init);
  copy->for_step = clone(s->for_step);
  for (auto& inv : copy->loop.invariants) inv = clone(inv);
  copy->loop.variant = clone(s->loop.variant);
  return copy;
}

namespace {
Contract clone(const Contract& c) {
  Contract out = c;
  for (auto& e : out.requires_) e = clone(e);
  for (auto& e : out.ensures) e = clone(e);
  for (auto& e : out.assigns_locs) e = clone(e);
  for (auto& e : out.allocates_locs) e = clone(e);
  out.decreases = clone(c.decreases);
  out.terminates = clone(c.terminates);
  return out;
}
}  // namespace

DeclPtr clone(const DeclPtr& d) {
  if (!d) return nullptr;
  auto copy = std::make_shared<Decl>(*d);
  copy->contract = clone(d->contract);
  copy->body = clone(d->body);
  copy->definition = clone(d->definition);
  for (auto& m : copy->members) m = clone(m);
  return copy;
}

SourceUnit clone(const SourceUnit& unit) {
  SourceUnit out;
  out.file = unit.file;
  for (const auto& d : unit.decls) out.decls.push_back(clone(d));
  return out;
}

namespace {

class Dumper {
 public:
  std::ostringstream out;

  void type(const Type& t) { out << "<" << to_string(t) << ">"; }

  void params(const std::vector<Param>& ps) {
    out << "(params";
    for (const auto& p : ps) {
      out << " ";
      type(p.type);
      out << p.name;
    }
    out << ")";
  }

  void expr(const ExprPtr& e) {
    if (!e) {
      out << "nil";
      return;
    }
    out << "(";
    switch (e->kind) {
      case ExprKind::IntLit: out << "int " << to_string(e->int_value); break;
      case ExprKind::CharLit: out << "char " << to_string(e->int_value); break;
      case ExprKind::BoolLit: out << (e->bool_value ? "true" : "false"); break;
      case ExprKind::Null: out << (e->logic_spelling ? "\\null" : "NULL"); break;
      case ExprKind::Var: out << "var " << e->name; break;
      case ExprKind::Result: out << "result"; break;
      case ExprKind::Unary: out << "un " << to_string(e->unop); break;
      case ExprKind::Binary: out << "bin " << to_string(e->binop); break;
      case ExprKind::Chain:
        out << "chain";
        for (auto op : e->chain_ops) out << " " << to_string(op);
        break;
      case ExprKind::Cond: out << "cond"; break;
      case ExprKind::Call: out << "call " << e->name; break;
      case ExprKind::Index: out << "index"; break;
      case ExprKind::Quant:
        out << (e->quant == Quantifier::Forall ? "forall " : "exists ");
        params(e->binders);
        break;
      case ExprKind::Old: out << "old"; break;
      case ExprKind::AtPre: out << "at_pre"; break;
      case ExprKind::Valid: out << "valid"; break;
      case ExprKind::BaseAddr: out << "base_addr"; break;
      case ExprKind::Offset: out << "offset"; break;
      case ExprKind::BlockLength: out << "block_length"; break;
    }
    for (const auto& a : e->args) {
      out << " ";
      expr(a);
    }
    out << ")";
  }

  void exprs(const char* tag, const std::vector<ExprPtr>& es) {
    out << "(" << tag;
    for (const auto& e : es) {
      out << " ";
      expr(e);
    }
    out << ")";
  }

  void stmt(const StmtPtr& s) {
    if (!s) {
      out << "nil";
      return;
    }
    out << "(";
    if (s->ghost) out << "ghost-ctx ";
    switch (s->kind) {
      case StmtKind::Empty: out << "empty"; break;
      case StmtKind::ExprStmt:
        out << "expr ";
        expr(s->expr);
        break;
      case StmtKind::Assign:
        out << "assign " << static_cast<int>(s->assign_op) << " ";
        expr(s->lhs);
        out << " ";
        expr(s->rhs);
        break;
      case StmtKind::Decl:
        out << "decl ";
        type(s->decl_base);
        for (const auto& d : s->declarators) {
          out << " (" << (d.pointer ? "*" : "") << d.name << " ";
          expr(d.init);
          out << ")";
        }
        break;
      case StmtKind::If:
        out << "if ";
        expr(s->expr);
        out << " ";
        stmt(s->then_branch);
        out << " ";
        stmt(s->else_branch);
        break;
      case StmtKind::While:
      case StmtKind::For:
        out << (s->kind == StmtKind::While ? "while " : "for ");
        exprs("inv", s->loop.invariants);
        out << " (variant ";
        expr(s->loop.variant);
        out << ") ";
        stmt(s->for_init);
        out << " ";
        expr(s->expr);
        out << " ";
        stmt(s->for_step);
        out << " ";
        stmt(s->loop_body);
        break;
      case StmtKind::Return:
        out << "return ";
        expr(s->expr);
        break;
      case StmtKind::Break: out << "break"; break;
      case StmtKind::Block:
      case StmtKind::Ghost:
        out << (s->kind == StmtKind::Block ? "block" : "ghost");
        for (const auto& st : s->stmts) {
          out << " ";
          stmt(st);
        }
        break;
    }
    out << ")";
  }

  void clause_set(const char* tag, ClauseSet cs, const std::vector<ExprPtr>& locs) {
    out << "(" << tag << " " << static_cast<int>(cs);
    for (const auto& e : locs) {
      out << " ";
      expr(e);
    }
    out << ")";
  }

  void decl(const DeclPtr& d) {
    out << "(" << to_string(d->kind) << " " << d->name << " ";
    type(d->type);
    if (d->ghost_var) out << " ghost";
    out << " ";
    params(d->params);
    if (d->is_function()) {
      out << " (contract ";
      exprs("requires", d->contract.requires_);
      exprs("ensures", d->contract.ensures);
      clause_set("assigns", d->contract.assigns, d->contract.assigns_locs);
      clause_set("allocates", d->contract.allocates, d->contract.allocates_locs);
      out << " (decreases ";
      expr(d->contract.decreases);
      out << ") (terminates ";
      expr(d->contract.terminates);
      out << "))";
      out << " ";
      stmt(d->body);
    }
    out << " ";
    expr(d->definition);
    for (const auto& m : d->members) {
      out << "\n  ";
      decl(m);
    }
    out << ")";
  }
};

}  // namespace

std::string structural_dump(const SourceUnit& unit) {
  Dumper d;
  for (const auto& decl : unit.decls) {
    d.decl(decl);
    d.out << "\n";
  }
  return d.out.str();
}

std::string structural_dump(const ExprPtr& e) {
  Dumper d;
  d.expr(e);
  return d.out.str();
}

bool structurally_equal(const SourceUnit& a, const SourceUnit& b) {
  return structural_dump(a) == structural_dump(b);
}

}  // namespace lemmaforge
