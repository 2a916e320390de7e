#include "lemmaforge/frontend/parser.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "lemmaforge/frontend/lexer.hpp"

namespace lemmaforge {

namespace {

bool is_type_keyword(const std::string& s) {
  return s == "const" || s == "void" || s == "char" || s == "int" || s == "long" ||
         s == "size_t" || s == "integer" || s == "boolean";
}

bool is_clause_keyword(const std::string& s) {
  return s == "requires" || s == "ensures" || s == "assigns" || s == "allocates" ||
         s == "decreases" || s == "terminates";
}

struct PendingContract {
  bool present = false;
  bool is_lemma = false;
  Contract contract;
  SourcePos pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SourceUnit unit(const std::string& file) {
    SourceUnit u;
    u.file = file;
    while (!at(TokKind::Eof)) {
      if (at(TokKind::AnnotBegin)) {
        top_annotation(u);
      } else {
        PendingContract none;
        u.decls.push_back(c_decl(false, none));
      }
    }
    return u;
  }

  ExprPtr lone_expression() {
    auto e = expr();
    if (!at(TokKind::Eof)) error({"end of input"});
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;

  // ---- token helpers ----------------------------------------------------

  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(size_t k) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at(TokKind k) const { return cur().kind == k; }
  bool at_punct(std::string_view p) const { return cur().kind == TokKind::Punct && cur().text == p; }
  bool at_ident(std::string_view s) const { return cur().kind == TokKind::Ident && cur().text == s; }
  bool at_type_start() const { return cur().kind == TokKind::Ident && is_type_keyword(cur().text); }

  Token take() {
    Token t = cur();
    if (!at(TokKind::Eof)) ++i_;
    return t;
  }

  bool accept_punct(std::string_view p) {
    if (at_punct(p)) {
      ++i_;
      return true;
    }
    return false;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokKind::Eof: return "end of input";
      case TokKind::AnnotBegin: return "start of annotation '" + t.text + "'";
      case TokKind::AnnotEnd: return "end of annotation";
      case TokKind::Char: return "character literal";
      default: return "'" + t.text + "'";
    }
  }

  [[noreturn]] void error(std::initializer_list<std::string_view> expected) const {
    std::string msg = "expected ";
    if (expected.size() > 1) msg += "one of ";
    bool first = true;
    for (auto e : expected) {
      if (!first) msg += ", ";
      msg += e;
      first = false;
    }
    msg += " but found " + describe(cur());
    fail(DiagKind::SyntaxError, cur().pos, msg);
  }

  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) error({"'" + std::string(p) + "'"});
  }

  void expect_annot_end() {
    if (!at(TokKind::AnnotEnd)) error({"end of annotation"});
    ++i_;
  }

  std::string expect_ident() {
    if (!at(TokKind::Ident) || is_type_keyword(cur().text)) error({"identifier"});
    return take().text;
  }

  // ---- types ------------------------------------------------------------

  Type type_spec() {
    bool is_const = false;
    if (at_ident("const")) {
      is_const = true;
      ++i_;
    }
    if (!at(TokKind::Ident)) error({"type name"});
    const std::string name = cur().text;
    Type t;
    if (name == "void") t = Type::void_type();
    else if (name == "char") t = Type::char_type();
    else if (name == "int") t = Type::int_type();
    else if (name == "long") t = Type::long_type();
    else if (name == "size_t") t = Type::size_type();
    else if (name == "integer") t = Type::integer();
    else if (name == "boolean") t = Type::boolean();
    else error({"type name"});
    ++i_;
    t.is_const = is_const;
    return t;
  }

  Type full_type() {
    Type base = type_spec();
    if (accept_punct("*")) return pointer_to(base);
    base.is_const = false;
    return base;
  }

  Type pointer_to(const Type& base) {
    if (base.kind != TypeKind::Char) {
      fail(DiagKind::UnsupportedConstruct, toks_[i_ - 1].pos, "only pointers to char are supported");
    }
    return Type::pointer(base.is_const);
  }

  std::vector<Param> param_list() {
    expect_punct("(");
    std::vector<Param> ps;
    if (accept_punct(")")) return ps;
    if (at_ident("void") && ahead(1).kind == TokKind::Punct && ahead(1).text == ")") {
      i_ += 2;
      return ps;
    }
    do {
      Type t = full_type();
      ps.push_back(Param{t, expect_ident()});
    } while (accept_punct(","));
    expect_punct(")");
    return ps;
  }

  // `char *s, c, size_t i;` with C declarator rules.
  std::vector<Param> binder_list() {
    std::vector<Param> ps;
    Type base = type_spec();
    while (true) {
      Type t = base;
      if (accept_punct("*")) t = pointer_to(base);
      else t.is_const = false;
      ps.push_back(Param{t, expect_ident()});
      if (!accept_punct(",")) break;
      if (at_type_start()) base = type_spec();
    }
    expect_punct(";");
    return ps;
  }

  // ---- top level ----------------------------------------------------------

  void top_annotation(SourceUnit& u) {
    Token begin = take();
    if (at_ident("ghost")) {
      ++i_;
      PendingContract none;
      ghost_decls(u, none);
      return;
    }
    if (starts_logic_decl()) {
      while (!at(TokKind::AnnotEnd)) u.decls.push_back(logic_decl(false));
      expect_annot_end();
      return;
    }
    if (at(TokKind::Ident) && (at_ident("lemma") || is_clause_keyword(cur().text))) {
      PendingContract pc = contract_body(begin.pos);
      expect_annot_end();
      // The contract belongs to the next function, which may itself sit in a
      // ghost block.
      if (at(TokKind::AnnotBegin) && ahead(1).kind == TokKind::Ident && ahead(1).text == "ghost") {
        i_ += 2;
        ghost_decls(u, pc);
        return;
      }
      u.decls.push_back(c_decl(false, pc));
      return;
    }
    if (at(TokKind::Ident)) {
      fail(DiagKind::UnknownClause, cur().pos, "unknown annotation keyword '" + cur().text + "'");
    }
    error({"annotation keyword"});
  }

  bool starts_logic_decl() const {
    if (at_ident("logic") || at_ident("predicate") || at_ident("axiomatic") || at_ident("axiom")) {
      return true;
    }
    // `lemma name:` is a logic lemma; a bare `lemma` marks a lemma function.
    return at_ident("lemma") && ahead(1).kind == TokKind::Ident &&
           ahead(2).kind == TokKind::Punct && ahead(2).text == ":";
  }

  void ghost_decls(SourceUnit& u, PendingContract pending) {
    while (!at(TokKind::AnnotEnd)) {
      if (at(TokKind::AnnotBegin)) {
        Token nested = take();
        if (pending.present) fail(DiagKind::SyntaxError, nested.pos, "two contracts for one function");
        pending = contract_body(nested.pos);
        expect_annot_end();
        continue;
      }
      if (at(TokKind::Eof)) error({"end of annotation"});
      u.decls.push_back(c_decl(true, pending));
      pending = PendingContract{};
    }
    if (pending.present) fail(DiagKind::SyntaxError, pending.pos, "contract is not followed by a function");
    expect_annot_end();
  }

  PendingContract contract_body(const SourcePos& pos) {
    PendingContract pc;
    pc.present = true;
    pc.pos = pos;
    if (at_ident("lemma")) {
      ++i_;
      pc.is_lemma = true;
    }
    Contract& c = pc.contract;
    while (!at(TokKind::AnnotEnd)) {
      if (!at(TokKind::Ident)) error({"contract clause"});
      Token kw = take();
      if (kw.text == "requires") {
        c.requires_.push_back(expr());
      } else if (kw.text == "ensures") {
        c.ensures.push_back(expr());
      } else if (kw.text == "assigns" || kw.text == "allocates") {
        bool assigns = kw.text == "assigns";
        ClauseSet& set = assigns ? c.assigns : c.allocates;
        auto& locs = assigns ? c.assigns_locs : c.allocates_locs;
        if (cur().kind == TokKind::BackIdent && cur().text == "\\nothing") {
          ++i_;
          set = ClauseSet::Nothing;
        } else if (cur().kind == TokKind::BackIdent && cur().text == "\\everything") {
          ++i_;
          set = ClauseSet::Everything;
        } else {
          set = ClauseSet::Locations;
          do {
            locs.push_back(expr());
          } while (accept_punct(","));
        }
      } else if (kw.text == "decreases") {
        if (c.decreases) fail(DiagKind::SyntaxError, kw.pos, "duplicate decreases clause");
        c.decreases = expr();
      } else if (kw.text == "terminates") {
        if (c.terminates) fail(DiagKind::SyntaxError, kw.pos, "duplicate terminates clause");
        c.terminates = expr();
      } else if (kw.text == "lemma") {
        fail(DiagKind::SyntaxError, kw.pos, "'lemma' must be the first token of the contract");
      } else {
        fail(DiagKind::UnknownClause, kw.pos, "unknown contract clause '" + kw.text + "'");
      }
      expect_punct(";");
    }
    return pc;
  }

  DeclPtr c_decl(bool ghost, const PendingContract& pending) {
    auto d = std::make_shared<Decl>();
    d->pos = cur().pos;
    if (!at_type_start()) error({"declaration"});
    Type base = type_spec();
    Type t = base;
    if (accept_punct("*")) t = pointer_to(base);
    else t.is_const = false;
    d->type = t;
    d->name = expect_ident();
    if (at_punct("(")) {
      d->params = param_list();
      d->kind = ghost ? (pending.is_lemma ? DeclKind::LemmaFunction : DeclKind::GhostFunction)
                      : DeclKind::CodeFunction;
      if (pending.is_lemma && !ghost) {
        fail(DiagKind::SyntaxError, d->pos, "lemma function '" + d->name + "' must be declared ghost");
      }
      d->has_contract = pending.present;
      d->contract = pending.contract;
      if (!accept_punct(";")) d->body = block(ghost);
      return d;
    }
    if (pending.present) {
      fail(DiagKind::SyntaxError, pending.pos, "contract is not followed by a function");
    }
    d->kind = DeclKind::GlobalVar;
    d->ghost_var = ghost;
    if (accept_punct("=")) d->definition = expr();
    expect_punct(";");
    return d;
  }

  DeclPtr logic_decl(bool in_axiomatic) {
    auto d = std::make_shared<Decl>();
    d->pos = cur().pos;
    if (!at(TokKind::Ident)) error({"logic declaration"});
    Token kw = take();
    if (kw.text == "logic") {
      d->kind = DeclKind::LogicFunction;
      d->type = full_type();
      d->name = expect_ident();
      if (at_punct("(")) d->params = param_list();
      if (accept_punct("=")) d->definition = expr();
      expect_punct(";");
    } else if (kw.text == "predicate") {
      d->kind = DeclKind::Predicate;
      d->type = Type::boolean();
      d->name = expect_ident();
      if (at_punct("(")) d->params = param_list();
      if (accept_punct("=")) d->definition = expr();
      expect_punct(";");
    } else if (kw.text == "lemma" || kw.text == "axiom") {
      if (kw.text == "axiom" && !in_axiomatic) {
        fail(DiagKind::SyntaxError, kw.pos, "axioms are only allowed inside an axiomatic block");
      }
      d->kind = kw.text == "lemma" ? DeclKind::Lemma : DeclKind::Axiom;
      d->type = Type::boolean();
      d->name = expect_ident();
      expect_punct(":");
      d->definition = expr();
      expect_punct(";");
    } else if (kw.text == "axiomatic") {
      if (in_axiomatic) fail(DiagKind::SyntaxError, kw.pos, "nested axiomatic block");
      d->kind = DeclKind::AxiomaticBlock;
      d->name = expect_ident();
      expect_punct("{");
      while (!accept_punct("}")) {
        if (at(TokKind::Eof) || at(TokKind::AnnotEnd)) error({"'}'"});
        d->members.push_back(logic_decl(true));
      }
    } else {
      fail(DiagKind::UnknownClause, kw.pos, "unknown logic declaration '" + kw.text + "'");
    }
    return d;
  }

  // ---- statements ---------------------------------------------------------

  StmtPtr new_stmt(StmtKind k, const SourcePos& pos, bool ghost) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->pos = pos;
    s->ghost = ghost;
    return s;
  }

  StmtPtr block(bool ghost) {
    auto s = new_stmt(StmtKind::Block, cur().pos, ghost);
    expect_punct("{");
    while (!accept_punct("}")) {
      if (at(TokKind::Eof)) error({"'}'"});
      s->stmts.push_back(stmt(ghost));
    }
    return s;
  }

  StmtPtr stmt(bool ghost) {
    SourcePos pos = cur().pos;
    if (at(TokKind::AnnotBegin)) return annotated_stmt(ghost);
    if (at_punct("{")) return block(ghost);
    if (at_ident("if")) {
      ++i_;
      auto s = new_stmt(StmtKind::If, pos, ghost);
      expect_punct("(");
      s->expr = expr();
      expect_punct(")");
      s->then_branch = stmt(ghost);
      if (at_ident("else")) {
        ++i_;
        s->else_branch = stmt(ghost);
      }
      return s;
    }
    if (at_ident("while")) return loop_stmt(ghost, LoopAnnot{});
    if (at_ident("for")) return loop_stmt(ghost, LoopAnnot{});
    if (at_ident("return")) {
      ++i_;
      auto s = new_stmt(StmtKind::Return, pos, ghost);
      if (!at_punct(";")) s->expr = expr();
      expect_punct(";");
      return s;
    }
    if (at_ident("break")) {
      ++i_;
      expect_punct(";");
      return new_stmt(StmtKind::Break, pos, ghost);
    }
    if (accept_punct(";")) return new_stmt(StmtKind::Empty, pos, ghost);
    if (at_type_start()) {
      auto s = decl_stmt(ghost);
      expect_punct(";");
      return s;
    }
    auto s = simple_stmt(ghost);
    expect_punct(";");
    return s;
  }

  StmtPtr annotated_stmt(bool ghost) {
    Token begin = take();
    if (at_ident("loop")) {
      LoopAnnot annot;
      while (!at(TokKind::AnnotEnd)) {
        if (!at_ident("loop")) error({"'loop'"});
        ++i_;
        if (!at(TokKind::Ident)) error({"'invariant'", "'variant'"});
        Token kw = take();
        if (kw.text == "invariant") {
          annot.invariants.push_back(expr());
        } else if (kw.text == "variant") {
          if (annot.variant) fail(DiagKind::SyntaxError, kw.pos, "duplicate loop variant");
          annot.variant = expr();
        } else {
          fail(DiagKind::UnknownClause, kw.pos, "unknown loop clause 'loop " + kw.text + "'");
        }
        expect_punct(";");
      }
      expect_annot_end();
      if (!at_ident("while") && !at_ident("for")) {
        fail(DiagKind::SyntaxError, cur().pos, "loop annotation must be followed by a loop");
      }
      return loop_stmt(ghost, std::move(annot));
    }
    if (at_ident("ghost")) {
      if (ghost) fail(DiagKind::SyntaxError, begin.pos, "ghost statement nested in ghost code");
      ++i_;
      auto s = new_stmt(StmtKind::Ghost, begin.pos, true);
      while (!at(TokKind::AnnotEnd)) {
        if (at(TokKind::Eof)) error({"end of annotation"});
        s->stmts.push_back(stmt(true));
      }
      expect_annot_end();
      return s;
    }
    if (at(TokKind::Ident)) {
      fail(DiagKind::UnknownClause, cur().pos, "unknown statement annotation '" + cur().text + "'");
    }
    error({"'loop'", "'ghost'"});
  }

  StmtPtr loop_stmt(bool ghost, LoopAnnot annot) {
    SourcePos pos = cur().pos;
    if (at_ident("while")) {
      ++i_;
      auto s = new_stmt(StmtKind::While, pos, ghost);
      s->loop = std::move(annot);
      expect_punct("(");
      s->expr = expr();
      expect_punct(")");
      s->loop_body = stmt(ghost);
      return s;
    }
    ++i_;  // for
    auto s = new_stmt(StmtKind::For, pos, ghost);
    s->loop = std::move(annot);
    expect_punct("(");
    if (!at_punct(";")) s->for_init = at_type_start() ? decl_stmt(ghost) : simple_stmt(ghost);
    expect_punct(";");
    if (!at_punct(";")) s->expr = expr();
    expect_punct(";");
    if (!at_punct(")")) s->for_step = simple_stmt(ghost);
    expect_punct(")");
    s->loop_body = stmt(ghost);
    return s;
  }

  StmtPtr decl_stmt(bool ghost) {
    auto s = new_stmt(StmtKind::Decl, cur().pos, ghost);
    s->decl_base = type_spec();
    do {
      Declarator d;
      if (accept_punct("*")) {
        pointer_to(s->decl_base);
        d.pointer = true;
      }
      d.name = expect_ident();
      if (accept_punct("=")) d.init = expr();
      s->declarators.push_back(std::move(d));
    } while (accept_punct(","));
    if (!s->declarators.front().pointer && s->decl_base.is_const) {
      fail(DiagKind::UnsupportedConstruct, s->pos, "const-qualified scalars are not supported");
    }
    return s;
  }

  // Assignment, increment/decrement, or call; no trailing ';'.
  StmtPtr simple_stmt(bool ghost) {
    SourcePos pos = cur().pos;
    if (at_punct("++") || at_punct("--")) {
      bool inc = take().text == "++";
      auto s = new_stmt(StmtKind::Assign, pos, ghost);
      s->assign_op = inc ? AssignOp::PreInc : AssignOp::PreDec;
      s->lhs = unary();
      return s;
    }
    ExprPtr e = expr();
    if (at_punct("=") || at_punct("+=") || at_punct("-=")) {
      std::string op = take().text;
      auto s = new_stmt(StmtKind::Assign, pos, ghost);
      s->assign_op = op == "=" ? AssignOp::Set : op == "+=" ? AssignOp::AddSet : AssignOp::SubSet;
      s->lhs = e;
      s->rhs = expr();
      return s;
    }
    if (at_punct("++") || at_punct("--")) {
      bool inc = take().text == "++";
      auto s = new_stmt(StmtKind::Assign, pos, ghost);
      s->assign_op = inc ? AssignOp::PostInc : AssignOp::PostDec;
      s->lhs = e;
      return s;
    }
    if (e->kind != ExprKind::Call) {
      fail(DiagKind::SyntaxError, pos, "expression statement must be a call or an assignment");
    }
    auto s = new_stmt(StmtKind::ExprStmt, pos, ghost);
    s->expr = e;
    return s;
  }

  // ---- expressions ------------------------------------------------------

  ExprPtr expr() { return ternary(); }

  ExprPtr ternary() {
    ExprPtr c = iff();
    if (at_punct("?")) {
      SourcePos pos = take().pos;
      ExprPtr a = ternary();
      expect_punct(":");
      ExprPtr b = ternary();
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Cond;
      e->pos = pos;
      e->args = {c, a, b};
      return e;
    }
    return c;
  }

  ExprPtr iff() {
    ExprPtr lhs = implies();
    while (at_punct("<==>")) {
      SourcePos pos = take().pos;
      lhs = make_binary(BinOp::Iff, lhs, implies(), pos);
    }
    return lhs;
  }

  ExprPtr implies() {
    ExprPtr lhs = disjunction();
    if (at_punct("==>")) {
      SourcePos pos = take().pos;
      return make_binary(BinOp::Implies, lhs, implies(), pos);
    }
    return lhs;
  }

  ExprPtr disjunction() {
    ExprPtr lhs = conjunction();
    while (at_punct("||")) {
      SourcePos pos = take().pos;
      lhs = make_binary(BinOp::Or, lhs, conjunction(), pos);
    }
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = relation();
    while (at_punct("&&")) {
      SourcePos pos = take().pos;
      lhs = make_binary(BinOp::And, lhs, relation(), pos);
    }
    return lhs;
  }

  std::optional<BinOp> relation_op() const {
    if (cur().kind != TokKind::Punct) return std::nullopt;
    const auto& t = cur().text;
    if (t == "==") return BinOp::Eq;
    if (t == "!=") return BinOp::Ne;
    if (t == "<") return BinOp::Lt;
    if (t == "<=") return BinOp::Le;
    if (t == ">") return BinOp::Gt;
    if (t == ">=") return BinOp::Ge;
    return std::nullopt;
  }

  ExprPtr relation() {
    ExprPtr first = additive();
    std::vector<BinOp> ops;
    std::vector<ExprPtr> operands{first};
    SourcePos pos = cur().pos;
    while (auto op = relation_op()) {
      ++i_;
      ops.push_back(*op);
      operands.push_back(additive());
    }
    if (ops.empty()) return first;
    if (ops.size() == 1) return make_binary(ops[0], operands[0], operands[1], pos);
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Chain;
    e->pos = pos;
    e->chain_ops = std::move(ops);
    e->args = std::move(operands);
    return e;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (at_punct("+") || at_punct("-")) {
      Token op = take();
      lhs = make_binary(op.text == "+" ? BinOp::Add : BinOp::Sub, lhs, multiplicative(), op.pos);
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (at_punct("*") || at_punct("/") || at_punct("%")) {
      Token op = take();
      BinOp b = op.text == "*" ? BinOp::Mul : op.text == "/" ? BinOp::Div : BinOp::Mod;
      lhs = make_binary(b, lhs, unary(), op.pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_punct("-") || at_punct("!") || at_punct("*")) {
      Token op = take();
      UnOp u = op.text == "-" ? UnOp::Neg : op.text == "!" ? UnOp::Not : UnOp::Deref;
      return make_unary(u, unary(), op.pos);
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (at_punct("[")) {
      SourcePos pos = take().pos;
      auto idx = std::make_shared<Expr>();
      idx->kind = ExprKind::Index;
      idx->pos = pos;
      idx->args = {e, expr()};
      expect_punct("]");
      e = idx;
    }
    return e;
  }

  ExprPtr builtin_unary(ExprKind kind, const SourcePos& pos) {
    expect_punct("(");
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    e->args = {expr()};
    expect_punct(")");
    return e;
  }

  ExprPtr primary() {
    const Token& t = cur();
    SourcePos pos = t.pos;
    switch (t.kind) {
      case TokKind::Int: {
        BigInt v = take().value;
        return make_int(v, pos);
      }
      case TokKind::Char: {
        int code = static_cast<int>(take().value);
        return make_char(code, pos);
      }
      case TokKind::Ident: {
        if (is_type_keyword(t.text)) error({"expression"});
        std::string name = take().text;
        if (name == "NULL") {
          auto e = std::make_shared<Expr>();
          e->kind = ExprKind::Null;
          e->pos = pos;
          return e;
        }
        if (accept_punct("(")) {
          std::vector<ExprPtr> args;
          if (!accept_punct(")")) {
            do {
              args.push_back(expr());
            } while (accept_punct(","));
            expect_punct(")");
          }
          return make_call(std::move(name), std::move(args), pos);
        }
        return make_var(std::move(name), pos);
      }
      case TokKind::BackIdent: return backslash_primary();
      case TokKind::Punct:
        if (t.text == "(") {
          ++i_;
          ExprPtr e = expr();
          expect_punct(")");
          return e;
        }
        break;
      default: break;
    }
    error({"expression"});
  }

  ExprPtr backslash_primary() {
    Token t = take();
    const std::string& w = t.text;
    if (w == "\\true" || w == "\\false") return make_bool(w == "\\true", t.pos);
    if (w == "\\null") {
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Null;
      e->logic_spelling = true;
      e->pos = t.pos;
      return e;
    }
    if (w == "\\result") {
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Result;
      e->pos = t.pos;
      return e;
    }
    if (w == "\\forall" || w == "\\exists") {
      auto binders = binder_list();
      ExprPtr body = expr();
      return make_quant(w == "\\forall" ? Quantifier::Forall : Quantifier::Exists, std::move(binders),
                        body, t.pos);
    }
    if (w == "\\old") return builtin_unary(ExprKind::Old, t.pos);
    if (w == "\\valid") return builtin_unary(ExprKind::Valid, t.pos);
    if (w == "\\base_addr") return builtin_unary(ExprKind::BaseAddr, t.pos);
    if (w == "\\offset") return builtin_unary(ExprKind::Offset, t.pos);
    if (w == "\\block_length") return builtin_unary(ExprKind::BlockLength, t.pos);
    if (w == "\\at") {
      expect_punct("(");
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::AtPre;
      e->pos = t.pos;
      e->args = {expr()};
      expect_punct(",");
      if (!at_ident("Pre")) {
        fail(DiagKind::UnsupportedConstruct, cur().pos, "only the Pre label is supported in \\at");
      }
      ++i_;
      expect_punct(")");
      return e;
    }
    fail(DiagKind::SyntaxError, t.pos, "unknown built-in '" + w + "'");
  }
};

}  // namespace

SourceUnit parse_program(std::string_view text, const std::string& file) {
  return Parser(tokenize(text, file)).unit(file);
}

ExprPtr parse_expression(std::string_view text, const std::string& file) {
  return Parser(tokenize(text, file)).lone_expression();
}

SourceUnit parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(DiagKind::IoError, SourcePos{path, 0, 0}, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str(), path);
}

}  // namespace lemmaforge
