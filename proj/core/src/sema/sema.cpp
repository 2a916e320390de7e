#include "lemmaforge/sema/sema.hpp"

#include <algorithm>

#include "lemmaforge/frontend/parser.hpp"
#include "lemmaforge/graph.hpp"

namespace lemmaforge {

void Effects::merge(const Effects& other) {
  globals.insert(other.globals.begin(), other.globals.end());
  heap = heap || other.heap;
  allocates = allocates || other.allocates;
}

const Contract& FunctionInfo::contract() const {
  static const Contract kEmpty;
  return contract_decl ? contract_decl->contract : kEmpty;
}

std::vector<DeclPtr> TypedUnit::all_decls() const {
  std::vector<DeclPtr> out = prelude.decls;
  out.insert(out.end(), unit.decls.begin(), unit.decls.end());
  return out;
}

const FunctionInfo* TypedUnit::function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

namespace {

struct Var {
  Type type;
  RefKind ref = RefKind::Local;
  bool ghost = false;
};

struct Ctx {
  bool logic = false;
  bool ghost = false;  // code inside a ghost function or ghost statement
  bool allow_result = false;
  bool allow_old = false;
  bool allow_c_vars = true;
  Type result_type;
};

bool fits(BigInt v, TypeKind k) { return v >= type_min(k) && v <= type_max(k); }

int rank(TypeKind k) {
  switch (k) {
    case TypeKind::Char:
    case TypeKind::Int: return 1;
    case TypeKind::Long: return 2;
    case TypeKind::SizeT: return 3;
    default: return 4;
  }
}

Type promote(const Type& t) {
  if (t.kind == TypeKind::Char) return Type::int_type();
  Type r = t;
  r.is_const = false;
  return r;
}

Type common_arith(const Type& a, const Type& b) {
  Type pa = promote(a), pb = promote(b);
  return rank(pa.kind) >= rank(pb.kind) ? pa : pb;
}

bool scalar(const Type& t) { return t.is_arith() || t.is_pointer(); }

class Checker {
 public:
  Checker(TypedUnit& tu, const CheckOptions& options) : tu_(tu), options_(options) {}

  void run() {
    for (auto& d : tu_.prelude.decls) register_decl(d, true);
    for (auto& d : tu_.unit.decls) register_decl(d, false);

    for (auto& d : tu_.all_decls()) {
      switch (d->kind) {
        case DeclKind::AxiomaticBlock:
          for (auto& m : d->members) check_logic_decl(*m);
          break;
        case DeclKind::LogicFunction:
        case DeclKind::Predicate:
        case DeclKind::Lemma: check_logic_decl(*d); break;
        case DeclKind::GlobalVar: check_global(*d); break;
        default: check_function_decl(d); break;
      }
    }

    for (auto& name : tu_.function_order) {
      auto& fi = tu_.functions[name];
      if (fi.is_lemma() && !fi.definition) {
        fail(DiagKind::LemmaWithoutBody, fi.decls.front()->pos,
             "lemma function '" + name + "' has no definition");
      }
      if (!fi.definition) fi.direct = contract_effects(fi.contract());
    }
    close_effects();
    require_decreases();
  }

 private:
  TypedUnit& tu_;
  CheckOptions options_;
  std::vector<std::map<std::string, Var>> scopes_;
  std::set<std::string> axiomatics_;
  FunctionInfo* fn_ = nullptr;
  int loop_depth_ = 0;
  bool builtin_ = false;

  // ---- registration -------------------------------------------------------

  void reserved(const std::string& name, const SourcePos& pos) {
    if (builtin_ || options_.allow_reserved) return;
    if (name.rfind(kReservedPrefix, 0) == 0) {
      fail(DiagKind::ReservedName, pos, "names starting with '" + std::string(kReservedPrefix) +
                                            "' are reserved for generated declarations");
    }
  }

  static bool same_signature(const Decl& a, const Decl& b) {
    if (a.kind != b.kind || !a.type.same_as(b.type) || a.params.size() != b.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i) {
      if (!a.params[i].type.same_as(b.params[i].type) || a.params[i].name != b.params[i].name) return false;
    }
    return true;
  }

  void register_decl(const DeclPtr& d, bool builtin) {
    builtin_ = builtin;
    reserved(d->name, d->pos);
    if (d->is_function()) {
      if (tu_.globals.count(d->name)) {
        fail(DiagKind::DuplicateName, d->pos, "'" + d->name + "' is already a global variable");
      }
      auto [it, fresh] = tu_.functions.try_emplace(d->name);
      FunctionInfo& fi = it->second;
      if (fresh) {
        fi.name = d->name;
        tu_.function_order.push_back(d->name);
      } else if (!same_signature(*fi.decls.front(), *d)) {
        fail(DiagKind::TypeError, d->pos,
             "conflicting declaration of '" + d->name + "' (first declared at " +
                 fi.decls.front()->pos.str() + ")");
      }
      if (d->body) {
        if (fi.definition) {
          fail(DiagKind::DuplicateName, d->pos,
               "redefinition of '" + d->name + "' (first defined at " + fi.definition->pos.str() + ")");
        }
        fi.definition = d;
      }
      if (!d->contract.empty()) {
        if (fi.contract_decl) {
          fail(DiagKind::DuplicateName, d->pos,
               "'" + d->name + "' already has a contract at " + fi.contract_decl->pos.str());
        }
        fi.contract_decl = d;
      }
      fi.decls.push_back(d);
      return;
    }
    switch (d->kind) {
      case DeclKind::GlobalVar:
        if (tu_.globals.count(d->name) || tu_.functions.count(d->name) || tu_.logic.count(d->name)) {
          fail(DiagKind::DuplicateName, d->pos, "duplicate global name '" + d->name + "'");
        }
        tu_.globals[d->name] = d;
        return;
      case DeclKind::AxiomaticBlock:
        if (!axiomatics_.insert(d->name).second) {
          fail(DiagKind::DuplicateName, d->pos, "duplicate axiomatic block '" + d->name + "'");
        }
        for (auto& m : d->members) register_logic(m, d, builtin);
        return;
      default: register_logic(d, d, builtin); return;
    }
  }

  void register_logic(const DeclPtr& m, const DeclPtr& block, bool builtin) {
    reserved(m->name, m->pos);
    auto it = tu_.logic.find(m->name);
    if (it != tu_.logic.end()) {
      if (it->second.builtin) {
        fail(DiagKind::DuplicateName, m->pos, "'" + m->name + "' redefines a built-in logic symbol");
      }
      fail(DiagKind::DuplicateName, m->pos,
           "duplicate logic name '" + m->name + "' (first declared at " + it->second.decl->pos.str() + ")");
    }
    if (tu_.globals.count(m->name)) {
      fail(DiagKind::DuplicateName, m->pos, "'" + m->name + "' is already a global variable");
    }
    tu_.logic[m->name] = LogicSymbol{m, block, builtin};
  }

  // ---- scopes ---------------------------------------------------------------

  const Var* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void bind(const std::string& name, const Var& v, const SourcePos& pos) {
    reserved(name, pos);
    if (lookup(name)) fail(DiagKind::DuplicateName, pos, "'" + name + "' shadows or redeclares a variable");
    if (tu_.globals.count(name)) {
      fail(DiagKind::DuplicateName, pos, "'" + name + "' shadows a global variable");
    }
    scopes_.back()[name] = v;
  }

  // ---- logic declarations ---------------------------------------------------

  void check_logic_decl(const Decl& d) {
    builtin_ = false;
    Ctx c;
    c.logic = true;
    c.allow_c_vars = false;
    scopes_.assign(1, {});
    for (auto& p : d.params) {
      if (p.type.is_void()) fail(DiagKind::TypeError, d.pos, "parameter '" + p.name + "' has type void");
      bind(p.name, Var{p.type, RefKind::Param, true}, d.pos);
    }
    switch (d.kind) {
      case DeclKind::LogicFunction: {
        if (d.type.is_void()) fail(DiagKind::TypeError, d.pos, "logic function cannot return void");
        if (!d.definition) break;
        Type t = expr(d.definition, c);
        if (!compatible(d.type, t, true)) {
          fail(DiagKind::TypeError, d.definition->pos,
               "definition of '" + d.name + "' has type " + to_string(t) + ", expected " + to_string(d.type));
        }
        break;
      }
      case DeclKind::Predicate:
        if (d.definition) formula(d.definition, c);
        break;
      default: formula(d.definition, c); break;
    }
    scopes_.clear();
  }

  void check_global(const Decl& d) {
    if (d.type.is_logic_only()) fail(DiagKind::LogicInCode, d.pos, "global '" + d.name + "' has a logic type");
    if (d.type.is_void()) fail(DiagKind::TypeError, d.pos, "global '" + d.name + "' has type void");
    if (!d.definition) return;
    const ExprPtr& init = d.definition;
    bool literal = init->kind == ExprKind::IntLit || init->kind == ExprKind::CharLit ||
                   init->kind == ExprKind::Null ||
                   (init->kind == ExprKind::Unary && init->unop == UnOp::Neg &&
                    init->args[0]->kind == ExprKind::IntLit);
    if (!literal) fail(DiagKind::UnsupportedConstruct, init->pos, "global initializers must be literals");
    Ctx c;
    c.ghost = d.ghost_var;
    Type t = expr(init, c);
    if (!compatible(d.type, t, false)) {
      fail(DiagKind::TypeError, init->pos, "cannot initialize " + to_string(d.type) + " with " + to_string(t));
    }
  }

  // ---- functions ------------------------------------------------------------

  void check_function_decl(const DeclPtr& d) {
    builtin_ = false;
    fn_ = &tu_.functions[d->name];
    if (d->type.is_logic_only()) {
      fail(DiagKind::LogicInCode, d->pos, "function '" + d->name + "' returns a logic type");
    }
    scopes_.assign(1, {});
    bool ghost = d->is_ghost();
    for (auto& p : d->params) {
      if (p.type.is_logic_only()) {
        fail(DiagKind::LogicInCode, d->pos, "parameter '" + p.name + "' has a logic type");
      }
      if (p.type.is_void()) fail(DiagKind::TypeError, d->pos, "parameter '" + p.name + "' has type void");
      bind(p.name, Var{p.type, RefKind::Param, ghost}, d->pos);
    }
    check_contract(*d);
    if (d->body) {
      Ctx c;
      c.ghost = ghost;
      c.result_type = d->type;
      scopes_.emplace_back();
      for (auto& s : d->body->stmts) stmt(s, c);
      scopes_.pop_back();
      std::sort(fn_->callees.begin(), fn_->callees.end());
      fn_->callees.erase(std::unique(fn_->callees.begin(), fn_->callees.end()), fn_->callees.end());
    }
    scopes_.clear();
    fn_ = nullptr;
  }

  void check_contract(const Decl& d) {
    const Contract& k = d.contract;
    Ctx pre;
    pre.logic = true;
    for (auto& r : k.requires_) formula(r, pre);
    Ctx post = pre;
    post.allow_old = true;
    post.allow_result = !d.type.is_void();
    post.result_type = d.type;
    for (auto& e : k.ensures) formula(e, post);
    for (auto& loc : k.assigns_locs) {
      expr(loc, pre);
      bool ok = (loc->kind == ExprKind::Var && loc->ref == RefKind::Global) ||
                (loc->kind == ExprKind::Unary && loc->unop == UnOp::Deref) || loc->kind == ExprKind::Index;
      if (!ok) fail(DiagKind::TypeError, loc->pos, "assigns location must be a global or a memory location");
    }
    if (!k.allocates_locs.empty()) {
      fail(DiagKind::UnsupportedConstruct, k.allocates_locs.front()->pos,
           "allocation is not supported; only 'allocates \\nothing' is accepted");
    }
    if (k.decreases) {
      Type t = expr(k.decreases, pre);
      if (!t.is_arith()) fail(DiagKind::TypeError, k.decreases->pos, "decreases measure must be an integer");
    }
    if (k.terminates) formula(k.terminates, pre);
  }

  Effects contract_effects(const Contract& k) {
    Effects e;
    switch (k.assigns) {
      case ClauseSet::Nothing: break;
      case ClauseSet::Locations:
        for (auto& loc : k.assigns_locs) {
          if (loc->kind == ExprKind::Var) e.globals.insert(loc->name);
          else e.heap = true;
        }
        break;
      default:
        e.heap = true;
        for (auto& [name, _] : tu_.globals) e.globals.insert(name);
        break;
    }
    return e;
  }

  void close_effects() {
    for (auto& [_, fi] : tu_.functions) fi.effects = fi.direct;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& name : tu_.function_order) {
        auto& fi = tu_.functions[name];
        Effects e = fi.effects;
        for (auto& callee : fi.callees) e.merge(tu_.functions[callee].effects);
        if (!(e == fi.effects)) {
          fi.effects = std::move(e);
          changed = true;
        }
      }
    }
  }

  void require_decreases() {
    const auto& order = tu_.function_order;
    std::map<std::string, int> index;
    for (size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> self(order.size(), false);
    for (size_t i = 0; i < order.size(); ++i) {
      for (auto& callee : tu_.functions[order[i]].callees) {
        int j = index[callee];
        edges.emplace_back(static_cast<int>(i), j);
        if (j == static_cast<int>(i)) self[i] = true;
      }
    }
    auto comp = strongly_connected_components(order.size(), edges);
    std::map<int, int> size;
    for (int c : comp) ++size[c];
    for (size_t i = 0; i < order.size(); ++i) {
      if (!self[i] && size[comp[i]] < 2) continue;
      const auto& fi = tu_.functions[order[i]];
      if (!fi.contract().decreases) {
        fail(DiagKind::MissingDecreases, fi.primary()->pos,
             "recursive function '" + fi.name + "' needs a decreases clause");
      }
    }
  }

  // ---- statements -----------------------------------------------------------

  void annotation_formula(const ExprPtr& e, const Ctx& code) {
    Ctx c = code;
    c.logic = true;
    c.allow_old = true;
    c.allow_result = false;
    formula(e, c);
  }

  void loop_annot(const LoopAnnot& a, const Ctx& code) {
    for (auto& inv : a.invariants) annotation_formula(inv, code);
    if (a.variant) {
      Ctx c = code;
      c.logic = true;
      c.allow_old = true;
      c.allow_result = false;
      Type t = expr(a.variant, c);
      if (!t.is_arith()) fail(DiagKind::TypeError, a.variant->pos, "loop variant must be an integer");
    }
  }

  void condition(const ExprPtr& e, const Ctx& c) {
    Type t = expr(e, c);
    if (!scalar(t)) fail(DiagKind::TypeError, e->pos, "condition must be a scalar, found " + to_string(t));
  }

  void stmt(const StmtPtr& s, const Ctx& outer) {
    Ctx c = outer;
    c.ghost = outer.ghost || s->ghost;
    switch (s->kind) {
      case StmtKind::Empty:
      case StmtKind::Break:
        if (s->kind == StmtKind::Break && loop_depth_ == 0) {
          fail(DiagKind::SyntaxError, s->pos, "break outside of a loop");
        }
        return;
      case StmtKind::ExprStmt: expr(s->expr, c); return;
      case StmtKind::Assign: assign(*s, c); return;
      case StmtKind::Decl: {
        if (s->decl_base.is_logic_only()) {
          fail(DiagKind::LogicInCode, s->pos, "local variables cannot have logic types");
        }
        for (auto& d : s->declarators) {
          Type t = declarator_type(s->decl_base, d);
          if (t.is_void()) fail(DiagKind::TypeError, s->pos, "variable '" + d.name + "' has type void");
          if (d.init) {
            Type it = expr(d.init, c);
            if (!compatible(t, it, false)) {
              fail(DiagKind::TypeError, d.init->pos,
                   "cannot initialize " + to_string(t) + " with " + to_string(it));
            }
          }
          bind(d.name, Var{t, RefKind::Local, c.ghost}, s->pos);
        }
        return;
      }
      case StmtKind::If:
        condition(s->expr, c);
        scoped(s->then_branch, c);
        if (s->else_branch) scoped(s->else_branch, c);
        return;
      case StmtKind::While:
      case StmtKind::For: {
        scopes_.emplace_back();
        if (s->for_init) stmt(s->for_init, c);
        loop_annot(s->loop, c);
        if (s->expr) condition(s->expr, c);
        ++loop_depth_;
        scoped(s->loop_body, c);
        --loop_depth_;
        if (s->for_step) stmt(s->for_step, c);
        scopes_.pop_back();
        return;
      }
      case StmtKind::Return: {
        const Type& rt = c.result_type;
        if (!s->expr) {
          if (!rt.is_void()) fail(DiagKind::TypeError, s->pos, "non-void function must return a value");
          return;
        }
        if (rt.is_void()) fail(DiagKind::TypeError, s->pos, "void function cannot return a value");
        Type t = expr(s->expr, c);
        if (!compatible(rt, t, false)) {
          fail(DiagKind::TypeError, s->expr->pos, "cannot return " + to_string(t) + " from a function returning " +
                                                      to_string(rt));
        }
        return;
      }
      case StmtKind::Block:
        scopes_.emplace_back();
        for (auto& x : s->stmts) stmt(x, c);
        scopes_.pop_back();
        return;
      case StmtKind::Ghost:
        // No new scope: ghost declarations stay visible to later annotations.
        c.ghost = true;
        for (auto& x : s->stmts) stmt(x, c);
        return;
    }
  }

  void scoped(const StmtPtr& s, const Ctx& c) {
    scopes_.emplace_back();
    stmt(s, c);
    scopes_.pop_back();
  }

  void assign(const Stmt& s, const Ctx& c) {
    const ExprPtr& lhs = s.lhs;
    Type lt = expr(lhs, c);
    bool var = lhs->kind == ExprKind::Var &&
               (lhs->ref == RefKind::Local || lhs->ref == RefKind::Param || lhs->ref == RefKind::Global);
    bool mem = (lhs->kind == ExprKind::Unary && lhs->unop == UnOp::Deref) || lhs->kind == ExprKind::Index;
    if (!var && !mem) fail(DiagKind::TypeError, lhs->pos, "left-hand side is not assignable");
    if (mem) {
      const ExprPtr& base = lhs->args[0];
      if (base->type.is_pointer() && base->type.is_const) {
        fail(DiagKind::TypeError, lhs->pos, "store through a pointer to const");
      }
    }
    if (c.ghost && (mem || !lhs->ref_ghost)) {
      fail(DiagKind::GhostWritesReal, lhs->pos, "ghost code assigns a non-ghost location");
    }
    if (var && lhs->ref == RefKind::Global) fn_->direct.globals.insert(lhs->name);
    if (mem) fn_->direct.heap = true;
    switch (s.assign_op) {
      case AssignOp::Set: {
        Type rt = expr(s.rhs, c);
        if (!compatible(lt, rt, false)) {
          fail(DiagKind::TypeError, s.rhs->pos, "cannot assign " + to_string(rt) + " to " + to_string(lt));
        }
        return;
      }
      case AssignOp::AddSet:
      case AssignOp::SubSet: {
        Type rt = expr(s.rhs, c);
        if (!scalar(lt) || !rt.is_arith()) {
          fail(DiagKind::TypeError, s.pos, "compound assignment needs a scalar target and an integer operand");
        }
        return;
      }
      default:
        if (!scalar(lt)) fail(DiagKind::TypeError, s.pos, "increment of a non-scalar");
        return;
    }
  }

  // ---- expressions ----------------------------------------------------------

  // Whether a value of type `from` may flow into a slot of type `to`.
  static bool compatible(const Type& to, const Type& from, bool logic) {
    if (to.is_arith() && from.is_arith()) return logic || !to.is_logic_only();
    if (to.is_pointer()) return from.is_pointer();
    if (to.is_boolean()) return from.is_boolean();
    return false;
  }

  Type formula(const ExprPtr& e, const Ctx& c) {
    Type t = expr(e, c);
    if (!t.is_boolean() && !scalar(t)) fail(DiagKind::TypeError, e->pos, "expected a formula, found " + to_string(t));
    return t;
  }

  [[noreturn]] static void logic_in_code(const ExprPtr& e, const std::string& what) {
    fail(DiagKind::LogicInCode, e->pos, what + " is only allowed in annotations");
  }

  Type expr(const ExprPtr& e, const Ctx& c) {
    Type t = infer(e, c);
    e->type = t;
    return t;
  }

  Type arith_result(const Type& a, const Type& b, const Ctx& c) {
    return c.logic ? Type::integer() : common_arith(a, b);
  }

  Type infer(const ExprPtr& e, const Ctx& c) {
    switch (e->kind) {
      case ExprKind::IntLit:
        if (c.logic) return Type::integer();
        for (TypeKind k : {TypeKind::Int, TypeKind::Long, TypeKind::SizeT}) {
          if (fits(e->int_value, k)) return Type{k, false};
        }
        fail(DiagKind::TypeError, e->pos, "integer literal out of range");
      case ExprKind::CharLit: return c.logic ? Type::char_type() : Type::int_type();
      case ExprKind::BoolLit:
        if (!c.logic) logic_in_code(e, "\\true/\\false");
        return Type::boolean();
      case ExprKind::Null: return Type::pointer();
      case ExprKind::Var: return var(e, c);
      case ExprKind::Result:
        if (!c.logic) logic_in_code(e, "\\result");
        if (!c.allow_result) fail(DiagKind::TypeError, e->pos, "\\result is only allowed in ensures of non-void functions");
        return c.result_type;
      case ExprKind::Unary: {
        Type t = expr(e->args[0], c);
        switch (e->unop) {
          case UnOp::Neg:
            if (!t.is_arith()) fail(DiagKind::TypeError, e->pos, "negation of a non-integer");
            return c.logic ? Type::integer() : promote(t);
          case UnOp::Not:
            if (c.logic) {
              if (!t.is_boolean() && !scalar(t)) fail(DiagKind::TypeError, e->pos, "'!' of a non-formula");
              return Type::boolean();
            }
            if (!scalar(t)) fail(DiagKind::TypeError, e->pos, "'!' of a non-scalar");
            return Type::int_type();
          case UnOp::Deref:
            if (!t.is_pointer()) fail(DiagKind::TypeError, e->pos, "dereference of a non-pointer");
            return Type::char_type();
        }
        break;
      }
      case ExprKind::Binary: return binary(e, c);
      case ExprKind::Chain: {
        if (!c.logic) logic_in_code(e, "chained comparison");
        std::vector<Type> ts;
        for (auto& a : e->args) ts.push_back(expr(a, c));
        for (size_t i = 0; i < e->chain_ops.size(); ++i) relation(e, e->chain_ops[i], ts[i], ts[i + 1]);
        return Type::boolean();
      }
      case ExprKind::Cond: {
        if (c.logic) formula(e->args[0], c);
        else condition(e->args[0], c);
        Type a = expr(e->args[1], c), b = expr(e->args[2], c);
        if (a.is_arith() && b.is_arith()) {
          if (c.logic) return a.kind == b.kind ? a : Type::integer();
          return common_arith(a, b);
        }
        if (a.is_pointer() && b.is_pointer()) return Type::pointer(a.is_const || b.is_const);
        if (c.logic && a.is_boolean() && b.is_boolean()) return Type::boolean();
        fail(DiagKind::TypeError, e->pos, "branches of '?:' have incompatible types " + to_string(a) + " and " + to_string(b));
      }
      case ExprKind::Call: return call(e, c);
      case ExprKind::Index: {
        Type b = expr(e->args[0], c), i = expr(e->args[1], c);
        if (!b.is_pointer() || !i.is_arith()) fail(DiagKind::TypeError, e->pos, "subscript needs a pointer and an integer");
        return Type::char_type();
      }
      case ExprKind::Quant: {
        if (!c.logic) logic_in_code(e, "quantifier");
        scopes_.emplace_back();
        for (auto& b : e->binders) {
          if (b.type.is_void()) fail(DiagKind::TypeError, e->pos, "binder '" + b.name + "' has type void");
          bind(b.name, Var{b.type, RefKind::Binder, true}, e->pos);
        }
        formula(e->args[0], c);
        scopes_.pop_back();
        return Type::boolean();
      }
      case ExprKind::Old:
      case ExprKind::AtPre:
        if (!c.logic) logic_in_code(e, "\\old/\\at");
        if (!c.allow_old) fail(DiagKind::TypeError, e->pos, "\\old and \\at are not allowed here");
        return expr(e->args[0], c);
      case ExprKind::Valid:
      case ExprKind::BaseAddr:
      case ExprKind::Offset:
      case ExprKind::BlockLength: {
        if (!c.logic) logic_in_code(e, "memory built-in");
        Type t = expr(e->args[0], c);
        if (!t.is_pointer()) fail(DiagKind::TypeError, e->pos, "memory built-in applied to a non-pointer");
        if (e->kind == ExprKind::Valid) return Type::boolean();
        if (e->kind == ExprKind::BaseAddr) return Type::pointer();
        return Type::integer();
      }
    }
    fail(DiagKind::TypeError, e->pos, "cannot type expression");
  }

  Type var(const ExprPtr& e, const Ctx& c) {
    if (const Var* v = lookup(e->name)) {
      e->ref = v->ref;
      e->ref_ghost = v->ghost;
      if (!c.logic && !c.ghost && v->ghost) {
        fail(DiagKind::GhostInCode, e->pos, "ghost variable '" + e->name + "' used in non-ghost code");
      }
      return v->type;
    }
    if (auto g = tu_.globals.find(e->name); g != tu_.globals.end()) {
      if (!c.allow_c_vars) fail(DiagKind::TypeError, e->pos, "logic definitions cannot refer to C variable '" + e->name + "'");
      e->ref = RefKind::Global;
      e->ref_ghost = g->second->ghost_var;
      if (!c.logic && !c.ghost && e->ref_ghost) {
        fail(DiagKind::GhostInCode, e->pos, "ghost variable '" + e->name + "' used in non-ghost code");
      }
      return g->second->type;
    }
    if (auto l = tu_.logic.find(e->name); l != tu_.logic.end()) {
      const Decl& d = *l->second.decl;
      if (d.kind != DeclKind::LogicFunction && d.kind != DeclKind::Predicate) {
        fail(DiagKind::TypeError, e->pos, "'" + e->name + "' is not a term");
      }
      if (!c.logic) logic_in_code(e, "logic symbol '" + e->name + "'");
      if (!d.params.empty()) fail(DiagKind::TypeError, e->pos, "'" + e->name + "' expects arguments");
      e->ref = d.kind == DeclKind::Predicate ? RefKind::Predicate : RefKind::LogicFunction;
      return d.type;
    }
    if (tu_.functions.count(e->name)) {
      fail(DiagKind::TypeError, e->pos, "function '" + e->name + "' used as a value");
    }
    fail(DiagKind::UnresolvedName, e->pos, "unknown name '" + e->name + "'");
  }

  void relation(const ExprPtr& e, BinOp op, const Type& a, const Type& b) {
    if (a.is_arith() && b.is_arith()) return;
    if (a.is_pointer() && b.is_pointer()) return;
    if (a.is_boolean() && b.is_boolean() && (op == BinOp::Eq || op == BinOp::Ne)) return;
    fail(DiagKind::TypeError, e->pos, std::string("cannot compare ") + to_string(a) + " " + to_string(op) + " " + to_string(b));
  }

  Type binary(const ExprPtr& e, const Ctx& c) {
    BinOp op = e->binop;
    if (!c.logic && (op == BinOp::Implies || op == BinOp::Iff)) logic_in_code(e, to_string(op));
    Type a = expr(e->args[0], c), b = expr(e->args[1], c);
    auto bad = [&]() -> Type {
      fail(DiagKind::TypeError, e->pos,
           std::string("invalid operands ") + to_string(a) + " " + to_string(op) + " " + to_string(b));
    };
    switch (op) {
      case BinOp::Add:
        if (a.is_pointer() && b.is_arith()) return Type::pointer(a.is_const);
        if (a.is_arith() && b.is_pointer()) return Type::pointer(b.is_const);
        if (a.is_arith() && b.is_arith()) return arith_result(a, b, c);
        return bad();
      case BinOp::Sub:
        if (a.is_pointer() && b.is_arith()) return Type::pointer(a.is_const);
        if (a.is_pointer() && b.is_pointer()) return c.logic ? Type::integer() : Type::long_type();
        if (a.is_arith() && b.is_arith()) return arith_result(a, b, c);
        return bad();
      case BinOp::Mul:
      case BinOp::Div:
      case BinOp::Mod:
        if (a.is_arith() && b.is_arith()) return arith_result(a, b, c);
        return bad();
      case BinOp::And:
      case BinOp::Or:
      case BinOp::Implies:
      case BinOp::Iff:
        if (c.logic) {
          if ((!a.is_boolean() && !scalar(a)) || (!b.is_boolean() && !scalar(b))) return bad();
          return Type::boolean();
        }
        if (!scalar(a) || !scalar(b)) return bad();
        return Type::int_type();
      default:
        relation(e, op, a, b);
        return c.logic ? Type::boolean() : Type::int_type();
    }
  }

  Type call(const ExprPtr& e, const Ctx& c) {
    std::vector<Type> args;
    for (auto& a : e->args) args.push_back(expr(a, c));
    const Decl* callee = nullptr;
    if (c.logic) {
      auto l = tu_.logic.find(e->name);
      if (l == tu_.logic.end()) {
        if (tu_.functions.count(e->name)) {
          fail(DiagKind::TypeError, e->pos, "C function '" + e->name + "' cannot be called in an annotation");
        }
        fail(DiagKind::UnresolvedName, e->pos, "unknown logic function '" + e->name + "'");
      }
      callee = l->second.decl.get();
      if (callee->kind != DeclKind::LogicFunction && callee->kind != DeclKind::Predicate) {
        fail(DiagKind::TypeError, e->pos, "'" + e->name + "' cannot be applied");
      }
      e->ref = callee->kind == DeclKind::Predicate ? RefKind::Predicate : RefKind::LogicFunction;
    } else {
      auto f = tu_.functions.find(e->name);
      if (f == tu_.functions.end()) {
        if (tu_.logic.count(e->name)) logic_in_code(e, "logic function '" + e->name + "'");
        fail(DiagKind::UnresolvedName, e->pos, "unknown function '" + e->name + "'");
      }
      callee = f->second.decls.front().get();
      bool callee_ghost = callee->is_ghost();
      if (!c.ghost && callee_ghost) {
        fail(DiagKind::GhostInCode, e->pos, "ghost function '" + e->name + "' called from non-ghost code");
      }
      if (c.ghost && !callee_ghost) {
        fail(DiagKind::GhostWritesReal, e->pos, "ghost code calls non-ghost function '" + e->name + "'");
      }
      e->ref = RefKind::CodeFunction;
      e->ref_ghost = callee_ghost;
      if (fn_) fn_->callees.push_back(e->name);
    }
    if (callee->params.size() != args.size()) {
      fail(DiagKind::TypeError, e->pos,
           "'" + e->name + "' expects " + std::to_string(callee->params.size()) + " arguments, got " +
               std::to_string(args.size()));
    }
    for (size_t i = 0; i < args.size(); ++i) {
      if (!compatible(callee->params[i].type, args[i], c.logic)) {
        fail(DiagKind::TypeError, e->args[i]->pos,
             "argument " + std::to_string(i + 1) + " of '" + e->name + "' has type " + to_string(args[i]) +
                 ", expected " + to_string(callee->params[i].type));
      }
    }
    return callee->type;
  }
};

const SourceUnit& parsed_prelude() {
  static const SourceUnit unit = parse_program(prelude_source(), "<prelude>");
  return unit;
}

}  // namespace

TypedUnit check(const SourceUnit& unit, const CheckOptions& options) {
  TypedUnit tu;
  tu.prelude = clone(parsed_prelude());
  tu.unit = clone(unit);
  Checker(tu, options).run();
  return tu;
}

Effects effects(const TypedUnit& unit, const std::string& function) {
  const FunctionInfo* fi = unit.function(function);
  return fi ? fi->effects : Effects{};
}

}  // namespace lemmaforge
