#include "lemmaforge/vcgen/vcgen.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "lemmaforge/elaborator/elaborator.hpp"
#include "lemmaforge/graph.hpp"

namespace lemmaforge {

using namespace ir;

namespace {

using Cont = std::function<TermPtr(TermPtr)>;

struct Posts {
  TermPtr normal;
  TermPtr brk;
  TermPtr ret;  // mentions result.v for non-void functions
};

struct Havoc {
  std::set<std::string> globals;
  bool heap = false;
  std::vector<ExprPtr> locs;  // memory locations, when framed
  bool framed = false;
};

bool subset_range(TypeKind from, TypeKind to) {
  return type_min(from) >= type_min(to) && type_max(from) <= type_max(to);
}

std::string pre(const std::string& name) { return name + kPreSuffix; }

class Gen {
 public:
  Gen(const TypedUnit& unit, const VcOptions& options) : unit_(unit), lower_(unit), opts_(options) {
    const auto& order = unit.function_order;
    std::map<std::string, int> index;
    for (size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < order.size(); ++i) {
      for (auto& c : unit.functions.at(order[i]).callees) edges.emplace_back(static_cast<int>(i), index.at(c));
    }
    auto comp = strongly_connected_components(order.size(), edges);
    for (size_t i = 0; i < order.size(); ++i) scc_[order[i]] = comp[i];
  }

  TermPtr function(const std::string& name) {
    fn_ = &unit_.functions.at(name);
    const DeclPtr& d = fn_->definition;
    if (!d) throw std::logic_error("function without body");
    const Contract& c = fn_->contract();

    LowerEnv pre_env = default_env();
    pre_env.pre_names = true;
    pre_env.heap = pre_env.old_heap;
    std::vector<TermPtr> requires_;
    for (auto& r : c.requires_) requires_.push_back(lower_.formula(r, pre_env));

    LowerEnv post_env = default_env();
    for (auto& p : d->params) post_env.vars[p.name] = sym(pre(p.name), sort_of(p.type), p.type.kind);
    if (!d->type.is_void()) post_env.result = sym(kResult, sort_of(d->type), d->type.kind);
    std::vector<TermPtr> rets;
    for (auto& e : c.ensures) rets.push_back(mk_label(VcKind::Post, e->pos, "postcondition", lower_.formula(e, post_env)));
    if (c.assigns == ClauseSet::Nothing || c.assigns == ClauseSet::Locations) {
      SourcePos where = c.assigns_locs.empty() ? d->pos : c.assigns_locs.front()->pos;
      rets.push_back(mk_label(VcKind::Assigns, where, "assigns clause", frame_goal(c)));
    }

    Posts posts;
    posts.ret = mk_and(rets);
    posts.brk = bool_const(true);
    posts.normal = d->type.is_void()
                       ? posts.ret
                       : mk_label(VcKind::Safety, d->pos, "missing return statement", bool_const(false));
    TermPtr w = seq(d->body->stmts, posts);

    std::map<std::string, TermPtr> to_pre;
    for (auto& p : d->params) to_pre[p.name] = sym(pre(p.name), sort_of(p.type), p.type.kind);
    for (auto& [g, gd] : unit_.globals) to_pre[g] = sym(pre(g), sort_of(gd->type), gd->type.kind);
    to_pre[kHeap] = sym(pre(kHeap), Sort::Heap);
    w = substitute(w, to_pre);

    TermPtr top = mk_implies(mk_and(requires_), w);
    if (c.terminates) {
      SourcePos where = c.terminates->pos.line > 0 ? c.terminates->pos : d->pos;
      top = mk_and(mk_label(VcKind::Terminates, where, "termination", bool_const(true)), top);
    }
    return top;
  }

 private:
  const TypedUnit& unit_;
  Lowerer lower_;
  VcOptions opts_;
  const FunctionInfo* fn_ = nullptr;
  std::map<std::string, int> scc_;

  static TermPtr heap() { return sym(kHeap, Sort::Heap); }
  static TermPtr alloc() { return sym(kAlloc, Sort::Alloc); }

  static TermPtr var(const std::string& name, const Type& t) { return sym(name, sort_of(t), t.kind); }

  TermPtr global(const std::string& name) const { return var(name, unit_.globals.at(name)->type); }

  static TermPtr safety(TermPtr goal, const SourcePos& pos, const std::string& what, TermPtr k) {
    if (goal->op == Op::Bool && goal->value) return k;
    return mk_and(mk_label(VcKind::Safety, pos, what, goal), mk_implies(goal, k));
  }

  TermPtr range_check(TermPtr v, const Type& t, const SourcePos& pos, TermPtr k) const {
    if (!opts_.overflow || !t.is_machine_int()) return k;
    return safety(in_range(v, t.kind), pos, "arithmetic overflow", k);
  }

  TermPtr convert(TermPtr v, const Type& from, const Type& to, const SourcePos& pos, const Cont& k) const {
    v = as_int(v);
    if (opts_.overflow && to.is_machine_int() && from.is_machine_int() && !subset_range(from.kind, to.kind)) {
      return safety(in_range(v, to.kind), pos, "value conversion to " + to_string(to), k(v));
    }
    return k(v);
  }

  // ---- frames ---------------------------------------------------------------

  // Does pointer q belong to one of the memory locations?
  TermPtr in_locs(const TermPtr& q, const std::vector<ExprPtr>& locs, const LowerEnv& env) {
    std::vector<TermPtr> alts;
    for (auto& loc : locs) {
      if (loc->kind == ExprKind::Var) continue;
      TermPtr p = lower_.term(loc->args[0], env);
      if (loc->kind == ExprKind::Index) p = shift(p, as_int(lower_.term(loc->args[1], env)));
      alts.push_back(mk_eq(q, p));
    }
    return mk_or(std::move(alts));
  }

  bool has_memory_locs(const std::vector<ExprPtr>& locs) const {
    return std::any_of(locs.begin(), locs.end(), [](const ExprPtr& l) { return l->kind != ExprKind::Var; });
  }

  // Assigns clause of the current function, checked at each return.
  TermPtr frame_goal(const Contract& c) {
    std::set<std::string> listed;
    for (auto& l : c.assigns_locs) {
      if (l->kind == ExprKind::Var) listed.insert(l->name);
    }
    std::vector<TermPtr> parts;
    for (auto& g : fn_->effects.globals) {
      if (!listed.count(g)) parts.push_back(mk_eq(global(g), sym(pre(g), sort_of(unit_.globals.at(g)->type))));
    }
    TermPtr h = heap(), h0 = sym(pre(kHeap), Sort::Heap);
    if (!has_memory_locs(c.assigns_locs)) {
      parts.push_back(mk_eq(h, h0));
    } else {
      LowerEnv env = default_env();
      env.pre_names = true;
      env.heap = h0;
      std::string q = lower_.fresh("q.f");
      TermPtr qs = sym(q, Sort::Ptr);
      parts.push_back(mk_quant(Op::Forall, {{q, Sort::Ptr}},
                               mk_implies(mk_not(in_locs(qs, c.assigns_locs, env)),
                                          mk_eq(mk_select(h, qs), mk_select(h0, qs)))));
    }
    return mk_and(std::move(parts));
  }

  Havoc call_havoc(const FunctionInfo& callee) const {
    Havoc h;
    const Contract& c = callee.contract();
    switch (c.assigns) {
      case ClauseSet::Nothing: break;
      case ClauseSet::Locations:
        for (auto& l : c.assigns_locs) {
          if (l->kind == ExprKind::Var) h.globals.insert(l->name);
          else h.locs.push_back(l);
        }
        h.heap = !h.locs.empty();
        h.framed = true;
        break;
      default:
        h.heap = true;
        for (auto& [g, _] : unit_.globals) h.globals.insert(g);
        break;
    }
    return h;
  }

  // ---- statements -----------------------------------------------------------

  TermPtr seq(const std::vector<StmtPtr>& stmts, const Posts& posts) {
    TermPtr q = posts.normal;
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) q = wp(*it, {q, posts.brk, posts.ret});
    return q;
  }

  TermPtr assign_var(const TermPtr& q, const std::string& name, TermPtr v) {
    return substitute(q, {{name, std::move(v)}});
  }

  TermPtr wp(const StmtPtr& s, const Posts& posts) {
    switch (s->kind) {
      case StmtKind::Empty: return posts.normal;
      case StmtKind::ExprStmt: return expr(s->expr, [&](TermPtr) { return posts.normal; });
      case StmtKind::Assign: return assign(*s, posts.normal);
      case StmtKind::Decl: {
        TermPtr q = posts.normal;
        for (auto it = s->declarators.rbegin(); it != s->declarators.rend(); ++it) {
          const Declarator& d = *it;
          Type t = declarator_type(s->decl_base, d);
          if (d.init) {
            TermPtr after = q;
            q = expr(d.init, [&, after, t](TermPtr v) {
              if (t.is_pointer()) return assign_var(after, d.name, v);
              return convert(v, d.init->type, t, d.init->pos,
                             [&, after](TermPtr c) { return assign_var(after, d.name, c); });
            });
          } else {
            q = havoc_var(q, d.name, t);
          }
        }
        return q;
      }
      case StmtKind::If: {
        TermPtr t = wp(s->then_branch, posts);
        TermPtr f = s->else_branch ? wp(s->else_branch, posts) : posts.normal;
        return cond(s->expr, t, f);
      }
      case StmtKind::While:
      case StmtKind::For: return loop(*s, posts);
      case StmtKind::Return: {
        if (!s->expr) return posts.ret;
        const Type rt = fn_->primary()->type;
        return expr(s->expr, [&, rt](TermPtr v) {
          auto finish = [&](TermPtr r) { return assign_var(posts.ret, kResult, r); };
          if (rt.is_pointer()) return finish(v);
          return convert(v, s->expr->type, rt, s->expr->pos, finish);
        });
      }
      case StmtKind::Break: return posts.brk;
      case StmtKind::Block:
      case StmtKind::Ghost: return seq(s->stmts, posts);
    }
    throw std::logic_error("unknown statement");
  }

  TermPtr havoc_var(const TermPtr& q, const std::string& name, const Type& t) {
    std::string h = lower_.fresh(name + ".h");
    TermPtr hs = sym(h, sort_of(t), t.kind);
    return mk_quant(Op::Forall, {{h, hs->sort}}, mk_implies(in_range(hs, t.kind), assign_var(q, name, hs)));
  }

  TermPtr assign(const Stmt& s, const TermPtr& q) {
    const ExprPtr& lhs = s.lhs;
    const Type lt = lhs->type;
    // New value from the current one and the (evaluated) operand.
    auto compute = [&, lt](TermPtr cur, TermPtr v, const Cont& k) -> TermPtr {
      if (s.assign_op == AssignOp::Set) {
        if (lt.is_pointer()) return k(v);
        return convert(v, s.rhs->type, lt, s.rhs->pos, k);
      }
      bool plus = s.assign_op == AssignOp::AddSet || s.assign_op == AssignOp::PreInc ||
                  s.assign_op == AssignOp::PostInc;
      TermPtr step = v ? as_int(v) : int_const(1);
      if (lt.is_pointer()) return k(shift(cur, plus ? step : mk_neg(step)));
      TermPtr r = mk_arith(plus ? Op::Add : Op::Sub, cur, step);
      return range_check(r, lt, s.pos, k(r));
    };
    auto with_rhs = [&](const Cont& k) -> TermPtr {
      if (!s.rhs) return k(nullptr);
      return expr(s.rhs, k);
    };
    if (lhs->kind == ExprKind::Var) {
      TermPtr cur = var(lhs->name, lt);
      return with_rhs([&, cur](TermPtr v) {
        return compute(cur, v, [&](TermPtr nv) { return assign_var(q, lhs->name, nv); });
      });
    }
    return address(lhs, [&](TermPtr addr) {
      return with_rhs([&, addr](TermPtr v) {
        TermPtr cur = mk_select(heap(), addr);
        return safety(valid(alloc(), addr), lhs->pos, "pointer store",
                      compute(cur, v, [&, addr](TermPtr nv) {
                        return substitute(q, {{kHeap, mk_store(heap(), addr, nv)}});
                      }));
      });
    });
  }

  // Address of a memory lvalue *p or p[i].
  TermPtr address(const ExprPtr& e, const Cont& k) {
    if (e->kind == ExprKind::Index) {
      return expr(e->args[0], [&](TermPtr p) {
        return expr(e->args[1], [&, p](TermPtr i) { return k(shift(p, as_int(i))); });
      });
    }
    return expr(e->args[0], k);
  }

  // ---- loops ----------------------------------------------------------------

  void modified(const StmtPtr& s, std::set<std::string>& vars, std::map<std::string, Type>& types, bool& mem) {
    if (!s) return;
    visit_stmts(s, [&](const StmtPtr& x) {
      if (x->kind == StmtKind::Assign) {
        if (x->lhs->kind == ExprKind::Var) {
          vars.insert(x->lhs->name);
          types[x->lhs->name] = x->lhs->type;
        } else {
          mem = true;
        }
      }
    });
    visit_exprs(s, [&](const ExprPtr& e) {
      if (e->kind != ExprKind::Call || e->ref != RefKind::CodeFunction) return;
      Havoc h = call_havoc(unit_.functions.at(e->name));
      mem = mem || h.heap;
      for (auto& g : h.globals) {
        vars.insert(g);
        types[g] = unit_.globals.at(g)->type;
      }
    });
  }

  TermPtr loop(const Stmt& s, const Posts& posts) {
    if (s.loop.invariants.empty()) fail(DiagKind::MissingLoopInvariant, s.pos, "loop has no invariant");
    if (!s.loop.variant) fail(DiagKind::MissingLoopVariant, s.pos, "loop has no variant");
    LowerEnv env = default_env();
    std::vector<TermPtr> invs;
    for (auto& i : s.loop.invariants) invs.push_back(lower_.formula(i, env));

    std::vector<TermPtr> init;
    for (size_t i = 0; i < invs.size(); ++i) {
      init.push_back(mk_label(VcKind::LoopInvInit, s.loop.invariants[i]->pos, "loop invariant established", invs[i]));
    }

    TermPtr variant = as_int(lower_.term(s.loop.variant, env));
    std::string v0 = lower_.fresh("variant.v");
    TermPtr v0s = sym(v0, Sort::Int);
    std::vector<TermPtr> after_body;
    for (size_t i = 0; i < invs.size(); ++i) {
      after_body.push_back(
          mk_label(VcKind::LoopInvPreserve, s.loop.invariants[i]->pos, "loop invariant preserved", invs[i]));
    }
    const SourcePos& vpos = s.loop.variant->pos;
    after_body.push_back(mk_label(VcKind::VariantNonneg, vpos, "loop variant non-negative", mk_le(int_const(0), v0s)));
    after_body.push_back(mk_label(VcKind::VariantDecrease, vpos, "loop variant decreases", mk_lt(variant, v0s)));
    TermPtr iter_end = mk_and(after_body);
    if (s.for_step) iter_end = wp(s.for_step, {iter_end, bool_const(true), posts.ret});
    TermPtr body = wp(s.loop_body, {iter_end, posts.normal, posts.ret});
    TermPtr step = s.expr ? cond(s.expr, body, posts.normal) : body;
    TermPtr iteration = mk_implies(mk_and(invs), mk_quant(Op::Forall, {{v0, Sort::Int}},
                                                             mk_implies(mk_eq(v0s, variant), step)));

    std::set<std::string> vars;
    std::map<std::string, Type> types;
    bool mem = false;
    modified(s.loop_body, vars, types, mem);
    modified(s.for_step, vars, types, mem);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) iteration = havoc_var(iteration, *it, types.at(*it));
    if (mem) {
      std::string h = lower_.fresh("mem.heap.h");
      iteration = mk_quant(Op::Forall, {{h, Sort::Heap}}, assign_var(iteration, kHeap, sym(h, Sort::Heap)));
    }
    init.push_back(iteration);
    TermPtr whole = mk_and(init);
    if (s.for_init) whole = wp(s.for_init, {whole, posts.brk, posts.ret});
    return whole;
  }

  // ---- expressions ----------------------------------------------------------

  TermPtr cond(const ExprPtr& e, TermPtr t, TermPtr f) {
    if (e->kind == ExprKind::Binary && e->binop == BinOp::And) return cond(e->args[0], cond(e->args[1], t, f), f);
    if (e->kind == ExprKind::Binary && e->binop == BinOp::Or) return cond(e->args[0], t, cond(e->args[1], t, f));
    if (e->kind == ExprKind::Unary && e->unop == UnOp::Not) return cond(e->args[0], f, t);
    return expr(e, [t, f](TermPtr v) {
      if (t.get() == f.get()) return t;
      TermPtr c = truthy(v);
      return mk_and(mk_implies(c, t), mk_implies(mk_not(c), f));
    });
  }

  TermPtr expr(const ExprPtr& e, const Cont& k) {
    switch (e->kind) {
      case ExprKind::IntLit:
      case ExprKind::CharLit: return k(int_const(e->int_value));
      case ExprKind::Null: return k(null_ptr());
      case ExprKind::Var: return k(var(e->name, e->type));
      case ExprKind::Unary:
        return expr(e->args[0], [&](TermPtr v) {
          switch (e->unop) {
            case UnOp::Neg: {
              TermPtr r = mk_neg(as_int(v));
              return range_check(r, e->type, e->pos, k(r));
            }
            case UnOp::Not: return k(mk_not(truthy(v)));
            case UnOp::Deref:
              return safety(valid(alloc(), v), e->pos, "pointer dereference", k(mk_select(heap(), v)));
          }
          throw std::logic_error("unary");
        });
      case ExprKind::Index:
        return address(e, [&](TermPtr a) {
          return safety(valid(alloc(), a), e->pos, "pointer dereference", k(mk_select(heap(), a)));
        });
      case ExprKind::Binary:
        if (e->binop == BinOp::And || e->binop == BinOp::Or) {
          return cond(e, k(bool_const(true)), k(bool_const(false)));
        }
        return expr(e->args[0], [&](TermPtr a) {
          return expr(e->args[1], [&, a](TermPtr b) { return binary(e, a, b, k); });
        });
      case ExprKind::Cond: return cond(e->args[0], expr(e->args[1], k), expr(e->args[2], k));
      case ExprKind::Call: return args(e, 0, {}, k);
      default: throw std::logic_error("annotation construct in code");
    }
  }

  TermPtr binary(const ExprPtr& e, TermPtr a, TermPtr b, const Cont& k) {
    const SourcePos& pos = e->pos;
    bool pa = a->sort == Sort::Ptr, pb = b->sort == Sort::Ptr;
    auto same_block = [&](TermPtr then) {
      bool null_operand = e->args[0]->kind == ExprKind::Null || e->args[1]->kind == ExprKind::Null;
      if (null_operand) return then;
      return safety(mk_eq(mk_blk(a), mk_blk(b)), pos, "pointers into the same block", then);
    };
    switch (e->binop) {
      case BinOp::Add:
        if (pa) return k(shift(a, as_int(b)));
        if (pb) return k(shift(b, as_int(a)));
        break;
      case BinOp::Sub:
        if (pa && pb) {
          TermPtr r = mk_arith(Op::Sub, mk_off(a), mk_off(b));
          return same_block(range_check(r, e->type, pos, k(r)));
        }
        if (pa) return k(shift(a, mk_neg(as_int(b))));
        break;
      case BinOp::Div:
      case BinOp::Mod: {
        TermPtr r = mk_arith(e->binop == BinOp::Div ? Op::Div : Op::Mod, as_int(a), as_int(b));
        return safety(mk_not(mk_eq(as_int(b), int_const(0))), pos, "division by zero",
                      range_check(r, e->type, pos, k(r)));
      }
      case BinOp::Eq:
      case BinOp::Ne: {
        TermPtr eq = mk_eq(pa ? a : as_int(a), pb ? b : as_int(b));
        return k(e->binop == BinOp::Eq ? eq : mk_not(eq));
      }
      case BinOp::Lt:
      case BinOp::Le:
      case BinOp::Gt:
      case BinOp::Ge: {
        TermPtr x = pa ? mk_off(a) : as_int(a), y = pb ? mk_off(b) : as_int(b);
        TermPtr r = e->binop == BinOp::Lt   ? mk_lt(x, y)
                    : e->binop == BinOp::Le ? mk_le(x, y)
                    : e->binop == BinOp::Gt ? mk_lt(y, x)
                                            : mk_le(y, x);
        return pa && pb ? same_block(k(r)) : k(r);
      }
      default: break;
    }
    Op op = e->binop == BinOp::Add ? Op::Add : e->binop == BinOp::Sub ? Op::Sub : Op::Mul;
    TermPtr r = mk_arith(op, as_int(a), as_int(b));
    return range_check(r, e->type, pos, k(r));
  }

  TermPtr args(const ExprPtr& call, size_t i, std::vector<TermPtr> done, const Cont& k) {
    if (i == call->args.size()) return invoke(call, done, k);
    const FunctionInfo& callee = unit_.functions.at(call->name);
    const Type pt = callee.primary()->params[i].type;
    const ExprPtr& a = call->args[i];
    return expr(a, [&, i, done, pt](TermPtr v) {
      auto next = [&, i, done](TermPtr c) {
        auto more = done;
        more.push_back(c);
        return args(call, i + 1, std::move(more), k);
      };
      if (pt.is_pointer()) return next(v);
      return convert(v, a->type, pt, a->pos, next);
    });
  }

  TermPtr invoke(const ExprPtr& call, const std::vector<TermPtr>& vals, const Cont& k) {
    const FunctionInfo& callee = unit_.functions.at(call->name);
    const Decl& cd = *callee.primary();
    const Contract& c = callee.contract();

    LowerEnv at_call = default_env();
    for (size_t i = 0; i < cd.params.size(); ++i) at_call.vars[cd.params[i].name] = vals[i];
    at_call.old_is_pre = false;

    std::vector<TermPtr> obligations;
    for (auto& r : c.requires_) {
      if ((r->kind == ExprKind::Var || r->kind == ExprKind::Call) && is_import_predicate(r->name)) continue;
      obligations.push_back(mk_label(VcKind::CallPre, call->pos, "precondition of '" + call->name + "'",
                                     lower_.formula(r, at_call)));
    }
    const Contract& own = fn_->contract();
    if (scc_.at(call->name) == scc_.at(fn_->name) && c.decreases && own.decreases) {
      LowerEnv caller = default_env();
      caller.pre_names = true;
      caller.heap = caller.old_heap;
      TermPtr m0 = as_int(lower_.term(own.decreases, caller));
      TermPtr m1 = as_int(lower_.term(c.decreases, at_call));
      obligations.push_back(mk_label(VcKind::RecDecrease, call->pos,
                                     "recursive call to '" + call->name + "' decreases",
                                     mk_and(mk_le(int_const(0), m0), mk_lt(m1, m0))));
    }

    Havoc h = call_havoc(callee);
    std::vector<Binder> binders;
    std::map<std::string, TermPtr> post_state;
    LowerEnv after = at_call;
    after.old_vars = {};
    after.old_heap = heap();
    std::vector<TermPtr> facts;
    for (auto& g : h.globals) {
      std::string n = lower_.fresh(g + ".c");
      const Type& t = unit_.globals.at(g)->type;
      TermPtr s = var(n, t);
      binders.push_back({n, s->sort});
      post_state[g] = s;
      after.vars[g] = s;
      facts.push_back(in_range(s, t.kind));
    }
    if (h.heap) {
      std::string n = lower_.fresh("mem.heap.c");
      TermPtr s = sym(n, Sort::Heap);
      binders.push_back({n, Sort::Heap});
      post_state[kHeap] = s;
      after.heap = s;
      if (h.framed) {
        std::string q = lower_.fresh("q.c");
        TermPtr qs = sym(q, Sort::Ptr);
        facts.push_back(mk_quant(Op::Forall, {{q, Sort::Ptr}},
                                 mk_implies(mk_not(in_locs(qs, h.locs, at_call)),
                                            mk_eq(mk_select(s, qs), mk_select(heap(), qs)))));
      }
    }
    TermPtr r;
    if (!cd.type.is_void()) {
      std::string n = lower_.fresh(call->name + ".r");
      r = var(n, cd.type);
      binders.push_back({n, r->sort});
      after.result = r;
      facts.push_back(in_range(r, cd.type.kind));
    }
    for (auto& e : c.ensures) facts.push_back(lower_.formula(e, after));
    TermPtr rest = substitute(k(r), post_state);
    obligations.push_back(mk_quant(Op::Forall, std::move(binders), mk_implies(mk_and(std::move(facts)), rest)));
    return mk_and(std::move(obligations));
  }
};

// ---- splitting ------------------------------------------------------------------

struct Pending {
  VC vc;
  size_t seq = 0;
};

void split(const TermPtr& t, std::vector<TermPtr>& hyps, std::vector<Pending>& out) {
  switch (t->op) {
    case Op::Bool:
      if (t->value) return;
      break;
    case Op::And:
      for (auto& a : t->args) split(a, hyps, out);
      return;
    case Op::Implies:
      if (contains_label(t->args[0])) break;
      hyps.push_back(t->args[0]);
      split(t->args[1], hyps, out);
      hyps.pop_back();
      return;
    case Op::Forall: split(t->args[0], hyps, out); return;
    case Op::Label: {
      Pending p;
      p.vc.kind = t->label->kind;
      p.vc.pos = t->label->pos;
      p.vc.description = t->label->description;
      p.vc.hypotheses = hyps;
      p.vc.goal = strip_labels(t->args[0]);
      p.seq = out.size();
      out.push_back(std::move(p));
      return;
    }
    default: break;
  }
  throw std::logic_error("obligation without a label: " + to_string(t));
}

}  // namespace

TermPtr function_obligation(const TypedUnit& unit, const std::string& function, const VcOptions& options) {
  return Gen(unit, options).function(function);
}

std::vector<VC> split_obligation(const std::string& function, const TermPtr& obligation) {
  std::vector<Pending> pending;
  std::vector<TermPtr> hyps;
  split(obligation, hyps, pending);
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return std::make_tuple(a.vc.pos.line, a.vc.pos.column, static_cast<int>(a.vc.kind), a.seq) <
           std::make_tuple(b.vc.pos.line, b.vc.pos.column, static_cast<int>(b.vc.kind), b.seq);
  });
  std::map<VcKind, int> counters;
  std::vector<VC> out;
  for (auto& p : pending) {
    p.vc.function = function;
    p.vc.name = function + "." + to_string(p.vc.kind) + "." + std::to_string(counters[p.vc.kind]++);
    out.push_back(std::move(p.vc));
  }
  return out;
}

std::vector<VC> vcs_for_function(const TypedUnit& unit, const std::string& function, const VcOptions& options) {
  auto vcs = split_obligation(function, function_obligation(unit, function, options));
  auto imports = compute_import_closure(unit, function);
  for (auto& vc : vcs) vc.imports = imports;
  return vcs;
}

std::vector<VC> vcs_for_logic_lemma(const TypedUnit& unit, const DeclPtr& lemma) {
  Lowerer lower(unit);
  TermPtr goal = lower.formula(lemma->definition, default_env());
  VC vc;
  vc.function = lemma->name;
  vc.name = lemma->name + ".Post.0";
  vc.kind = VcKind::Post;
  vc.pos = lemma->pos;
  vc.description = "lemma";
  vc.goal = goal;

  auto all = unit.all_decls();
  std::set<std::string> symbols;
  collect_logic_symbols(lemma->definition, symbols);
  std::vector<DeclPtr> earlier;
  for (auto& d : all) {
    if (d.get() == lemma.get()) break;
    if (d->kind == DeclKind::Lemma) {
      earlier.push_back(d);
      collect_logic_symbols(d->definition, symbols);
    }
  }
  auto blocks = import_closure_of(unit, std::move(symbols));
  std::map<const Decl*, size_t> ord;
  for (size_t i = 0; i < all.size(); ++i) ord[all[i].get()] = i;
  blocks.insert(blocks.end(), earlier.begin(), earlier.end());
  std::sort(blocks.begin(), blocks.end(), [&](const DeclPtr& a, const DeclPtr& b) { return ord.at(a.get()) < ord.at(b.get()); });
  vc.imports = blocks;
  return {vc};
}

std::vector<UnitVcs> generate_vcs(const TypedUnit& unit, const VcOptions& options) {
  std::vector<UnitVcs> out;
  for (auto& d : unit.unit.decls) {
    if (d->is_function() && d->body) {
      out.push_back({d->name, vcs_for_function(unit, d->name, options)});
    } else if (d->kind == DeclKind::Lemma) {
      out.push_back({d->name, vcs_for_logic_lemma(unit, d)});
    }
  }
  return out;
}

std::string render_vc(const VC& vc) {
  std::ostringstream out;
  out << "vc " << vc.name << "\n";
  out << "kind " << to_string(vc.kind) << "\n";
  out << "at " << vc.pos.str() << "\n";
  out << "description " << vc.description << "\n";
  out << "imports";
  for (auto& d : vc.imports) out << " " << d->name;
  out << "\nhypotheses\n";
  for (auto& h : vc.hypotheses) out << "  " << to_string(h) << "\n";
  out << "goal\n  " << to_string(vc.goal) << "\n";
  return out.str();
}

}  // namespace lemmaforge
