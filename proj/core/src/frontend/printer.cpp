#include "lemmaforge/frontend/printer.hpp"

#include <cstdio>

namespace lemmaforge {

namespace {

using Lines = std::vector<std::string>;

enum Prec { kQuant = 0, kCond = 1, kIff = 2, kImplies = 3, kOr = 4, kAnd = 5, kRel = 6, kAdd = 7, kMul = 8, kUnary = 9, kPostfix = 10 };

int binop_prec(BinOp op) {
  switch (op) {
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return kMul;
    case BinOp::Add:
    case BinOp::Sub: return kAdd;
    case BinOp::And: return kAnd;
    case BinOp::Or: return kOr;
    case BinOp::Implies: return kImplies;
    case BinOp::Iff: return kIff;
    default: return kRel;
  }
}

std::string char_literal(int code) {
  switch (code) {
    case 0: return "'\\0'";
    case '\n': return "'\\n'";
    case '\t': return "'\\t'";
    case '\r': return "'\\r'";
    case '\v': return "'\\v'";
    case '\f': return "'\\f'";
    case '\\': return "'\\\\'";
    case '\'': return "'\\''";
    default: break;
  }
  if (code >= 32 && code < 127) return std::string("'") + static_cast<char>(code) + "'";
  char buf[8];
  std::snprintf(buf, sizeof buf, "'\\x%02x'", code & 0xff);
  return buf;
}

std::string base_type(const Type& t) {
  if (t.is_pointer()) return t.is_const ? "const char" : "char";
  return (t.is_const ? "const " : "") + to_string(t);
}

std::string typed_name(const Type& t, const std::string& name) {
  if (t.is_pointer()) return to_string(t) + name;
  return to_string(t) + " " + name;
}

std::string expr_str(const ExprPtr& e, int ctx);

std::string wrap(std::string s, int own, int ctx) {
  return own < ctx ? "(" + s + ")" : s;
}

std::string args_str(const std::vector<ExprPtr>& args) {
  std::string s;
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += expr_str(args[i], kQuant);
  }
  return s;
}

std::string builtin(const char* name, const ExprPtr& e) {
  return std::string(name) + "(" + expr_str(e->args[0], kQuant) + ")";
}

std::string expr_str(const ExprPtr& e, int ctx) {
  switch (e->kind) {
    case ExprKind::IntLit:
      if (e->int_value < 0) return wrap(to_string(e->int_value), kUnary, ctx);
      return to_string(e->int_value);
    case ExprKind::CharLit: return char_literal(static_cast<int>(e->int_value));
    case ExprKind::BoolLit: return e->bool_value ? "\\true" : "\\false";
    case ExprKind::Null: return e->logic_spelling ? "\\null" : "NULL";
    case ExprKind::Var: return e->name;
    case ExprKind::Result: return "\\result";
    case ExprKind::Unary: {
      std::string operand = expr_str(e->args[0], kUnary);
      std::string op = to_string(e->unop);
      if (!operand.empty() && (operand[0] == '-' && op == "-")) op += " ";
      return wrap(op + operand, kUnary, ctx);
    }
    case ExprKind::Binary: {
      int p = binop_prec(e->binop);
      int lp = p, rp = p + 1;
      if (p == kImplies) {
        lp = p + 1;
        rp = p;
      } else if (p == kRel) {
        lp = rp = kAdd;
      }
      std::string s = expr_str(e->args[0], lp) + " " + to_string(e->binop) + " " + expr_str(e->args[1], rp);
      return wrap(std::move(s), p, ctx);
    }
    case ExprKind::Chain: {
      std::string s = expr_str(e->args[0], kAdd);
      for (size_t i = 0; i < e->chain_ops.size(); ++i) {
        s += std::string(" ") + to_string(e->chain_ops[i]) + " " + expr_str(e->args[i + 1], kAdd);
      }
      return wrap(std::move(s), kRel, ctx);
    }
    case ExprKind::Cond: {
      std::string s = expr_str(e->args[0], kIff) + " ? " + expr_str(e->args[1], kCond) + " : " +
                      expr_str(e->args[2], kCond);
      return wrap(std::move(s), kCond, ctx);
    }
    case ExprKind::Call: return e->name + "(" + args_str(e->args) + ")";
    case ExprKind::Index:
      return expr_str(e->args[0], kPostfix) + "[" + expr_str(e->args[1], kQuant) + "]";
    case ExprKind::Quant: {
      std::string s = e->quant == Quantifier::Forall ? "\\forall " : "\\exists ";
      for (size_t i = 0; i < e->binders.size(); ++i) {
        if (i) s += ", ";
        s += typed_name(e->binders[i].type, e->binders[i].name);
      }
      s += "; " + expr_str(e->args[0], kQuant);
      return wrap(std::move(s), kQuant, ctx);
    }
    case ExprKind::Old: return builtin("\\old", e);
    case ExprKind::AtPre: return "\\at(" + expr_str(e->args[0], kQuant) + ", Pre)";
    case ExprKind::Valid: return builtin("\\valid", e);
    case ExprKind::BaseAddr: return builtin("\\base_addr", e);
    case ExprKind::Offset: return builtin("\\offset", e);
    case ExprKind::BlockLength: return builtin("\\block_length", e);
  }
  return "?";
}

std::string params_str(const std::vector<Param>& ps) {
  std::string s = "(";
  for (size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ", ";
    s += typed_name(ps[i].type, ps[i].name);
  }
  return s + ")";
}

// Wraps annotation content in `/*@ ... */` (or nested `/@ ... @/`), one
// content line per annotation line.
void annotation(Lines& out, const std::string& indent, const Lines& content, bool nested) {
  const char* open = nested ? "/@" : "/*@";
  const char* close = nested ? "@/" : "*/";
  if (content.size() == 1) {
    out.push_back(indent + open + " " + content[0] + " " + close);
    return;
  }
  for (size_t i = 0; i < content.size(); ++i) {
    out.push_back(indent + (i == 0 ? std::string(open) + " " : "  @ ") + content[i]);
  }
  out.push_back(indent + "  @" + (nested ? "/" : "*/"));
}

Lines contract_lines(const Contract& c, bool lemma) {
  Lines l;
  if (lemma) l.push_back("lemma");
  for (auto& r : c.requires_) l.push_back("requires " + expr_str(r, kQuant) + ";");
  for (auto& r : c.ensures) l.push_back("ensures " + expr_str(r, kQuant) + ";");
  auto locset = [&](const char* kw, ClauseSet set, const std::vector<ExprPtr>& locs) {
    if (set == ClauseSet::Unspecified) return;
    std::string s = std::string(kw) + " ";
    if (set == ClauseSet::Nothing) s += "\\nothing";
    else if (set == ClauseSet::Everything) s += "\\everything";
    else s += args_str(locs);
    l.push_back(s + ";");
  };
  locset("assigns", c.assigns, c.assigns_locs);
  locset("allocates", c.allocates, c.allocates_locs);
  if (c.decreases) l.push_back("decreases " + expr_str(c.decreases, kQuant) + ";");
  if (c.terminates) l.push_back("terminates " + expr_str(c.terminates, kQuant) + ";");
  return l;
}

class StmtPrinter {
 public:
  // `in_annot`: the statements sit inside an annotation comment, so nested
  // annotations must use `/@ ... @/`.
  explicit StmtPrinter(bool in_annot) : in_annot_(in_annot) {}

  void stmt(Lines& out, const std::string& ind, const StmtPtr& s) {
    switch (s->kind) {
      case StmtKind::Empty: out.push_back(ind + ";"); return;
      case StmtKind::ExprStmt:
      case StmtKind::Assign:
      case StmtKind::Decl:
      case StmtKind::Return:
      case StmtKind::Break: out.push_back(ind + simple(s) + ";"); return;
      case StmtKind::Block:
        out.push_back(ind + "{");
        for (auto& c : s->stmts) stmt(out, ind + "  ", c);
        out.push_back(ind + "}");
        return;
      case StmtKind::If: {
        std::string head = ind + "if (" + expr_str(s->expr, kQuant) + ")";
        body(out, ind, head, s->then_branch);
        if (s->else_branch) {
          if (s->else_branch->kind == StmtKind::If) {
            Lines inner;
            stmt(inner, ind, s->else_branch);
            inner[0] = close_or_new(out, ind) + "else " + inner[0].substr(ind.size());
            out.insert(out.end(), inner.begin(), inner.end());
          } else {
            body(out, ind, close_or_new(out, ind) + "else", s->else_branch);
          }
        }
        return;
      }
      case StmtKind::While:
      case StmtKind::For: {
        if (s->loop.present()) {
          Lines a;
          for (auto& inv : s->loop.invariants) a.push_back("loop invariant " + expr_str(inv, kQuant) + ";");
          if (s->loop.variant) a.push_back("loop variant " + expr_str(s->loop.variant, kQuant) + ";");
          annotation(out, ind, a, in_annot_);
        }
        std::string head;
        if (s->kind == StmtKind::While) {
          head = ind + "while (" + expr_str(s->expr, kQuant) + ")";
        } else {
          head = ind + "for (" + (s->for_init ? simple(s->for_init) : "") + ";" +
                 (s->expr ? " " + expr_str(s->expr, kQuant) : "") + ";" +
                 (s->for_step ? " " + simple(s->for_step) : "") + ")";
        }
        body(out, ind, head, s->loop_body);
        return;
      }
      case StmtKind::Ghost: {
        StmtPrinter inner(true);
        Lines content;
        for (auto& c : s->stmts) inner.stmt(content, "", c);
        content.insert(content.begin(), "ghost");
        if (content.size() == 2 && content[1].find("/@") == std::string::npos) {
          out.push_back(ind + "/*@ ghost " + content[1] + " */");
        } else {
          annotation(out, ind, content, false);
        }
        return;
      }
    }
  }

 private:
  bool in_annot_;

  // An `else` goes on the closing-brace line of a block then-branch.
  static std::string close_or_new(Lines& out, const std::string& ind) {
    if (!out.empty() && out.back() == ind + "}") {
      out.pop_back();
      return ind + "} ";
    }
    return ind;
  }

  void body(Lines& out, const std::string& ind, const std::string& head, const StmtPtr& b) {
    if (b->kind == StmtKind::Block) {
      out.push_back(head + " {");
      for (auto& c : b->stmts) stmt(out, ind + "  ", c);
      out.push_back(ind + "}");
    } else {
      out.push_back(head);
      stmt(out, ind + "  ", b);
    }
  }

  std::string simple(const StmtPtr& s) {
    switch (s->kind) {
      case StmtKind::ExprStmt: return expr_str(s->expr, kQuant);
      case StmtKind::Return: return s->expr ? "return " + expr_str(s->expr, kQuant) : "return";
      case StmtKind::Break: return "break";
      case StmtKind::Assign: {
        std::string lhs = expr_str(s->lhs, kUnary);
        switch (s->assign_op) {
          case AssignOp::Set: return lhs + " = " + expr_str(s->rhs, kQuant);
          case AssignOp::AddSet: return lhs + " += " + expr_str(s->rhs, kQuant);
          case AssignOp::SubSet: return lhs + " -= " + expr_str(s->rhs, kQuant);
          case AssignOp::PreInc: return "++" + lhs;
          case AssignOp::PreDec: return "--" + lhs;
          case AssignOp::PostInc: return lhs + "++";
          case AssignOp::PostDec: return lhs + "--";
        }
        return lhs;
      }
      case StmtKind::Decl: {
        std::string out = base_type(s->decl_base) + " ";
        for (size_t i = 0; i < s->declarators.size(); ++i) {
          const auto& d = s->declarators[i];
          if (i) out += ", ";
          out += (d.pointer ? "*" : "") + d.name;
          if (d.init) out += " = " + expr_str(d.init, kQuant);
        }
        return out;
      }
      default: return "?";
    }
  }
};

void function_lines(Lines& out, const Decl& d, bool in_annot) {
  std::string head = typed_name(d.type, d.name) + params_str(d.params);
  if (!d.body) {
    out.push_back(head + ";");
    return;
  }
  StmtPrinter p(in_annot);
  out.push_back(head + " {");
  for (auto& s : d.body->stmts) p.stmt(out, "  ", s);
  out.push_back("}");
}

std::string logic_line(const Decl& d) {
  switch (d.kind) {
    case DeclKind::LogicFunction: {
      std::string s = "logic " + typed_name(d.type, d.name);
      if (!d.params.empty()) s += params_str(d.params);
      if (d.definition) s += " = " + expr_str(d.definition, kQuant);
      return s + ";";
    }
    case DeclKind::Predicate: {
      std::string s = "predicate " + d.name;
      if (!d.params.empty()) s += params_str(d.params);
      if (d.definition) s += " = " + expr_str(d.definition, kQuant);
      return s + ";";
    }
    case DeclKind::Lemma: return "lemma " + d.name + ": " + expr_str(d.definition, kQuant) + ";";
    case DeclKind::Axiom: return "axiom " + d.name + ": " + expr_str(d.definition, kQuant) + ";";
    default: return "?";
  }
}

void decl_lines(Lines& out, const Decl& d) {
  switch (d.kind) {
    case DeclKind::CodeFunction: {
      if (!d.contract.empty()) annotation(out, "", contract_lines(d.contract, false), false);
      function_lines(out, d, false);
      return;
    }
    case DeclKind::GhostFunction:
    case DeclKind::LemmaFunction: {
      Lines content{"ghost"};
      Lines c = contract_lines(d.contract, d.is_lemma_function());
      if (!c.empty()) annotation(content, "", c, true);
      function_lines(content, d, true);
      annotation(out, "", content, false);
      return;
    }
    case DeclKind::GlobalVar: {
      std::string s = typed_name(d.type, d.name);
      if (d.definition) s += " = " + expr_str(d.definition, kQuant);
      s += ";";
      if (d.ghost_var) out.push_back("/*@ ghost " + s + " */");
      else out.push_back(s);
      return;
    }
    case DeclKind::AxiomaticBlock: {
      Lines content{"axiomatic " + d.name + " {"};
      for (auto& m : d.members) content.push_back("  " + logic_line(*m));
      content.push_back("}");
      annotation(out, "", content, false);
      return;
    }
    default: annotation(out, "", {logic_line(d)}, false); return;
  }
}

std::string join(const Lines& lines) {
  std::string s;
  for (auto& l : lines) {
    s += l;
    s += '\n';
  }
  return s;
}

}  // namespace

std::string pretty_print(const ExprPtr& expr) { return expr_str(expr, kQuant); }

std::string pretty_print(const DeclPtr& decl) {
  Lines out;
  decl_lines(out, *decl);
  return join(out);
}

std::string pretty_print(const SourceUnit& unit) {
  std::string s;
  for (size_t i = 0; i < unit.decls.size(); ++i) {
    if (i) s += '\n';
    s += pretty_print(unit.decls[i]);
  }
  return s;
}

}  // namespace lemmaforge
