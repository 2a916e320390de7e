#include <stdexcept>

#include "lemmaforge/vcgen/vcgen.hpp"

namespace lemmaforge {

using namespace ir;

Sort sort_of(const Type& t) {
  if (t.is_pointer()) return Sort::Ptr;
  if (t.is_boolean()) return Sort::Bool;
  return Sort::Int;
}

namespace {

bool reads_memory_directly(const ExprPtr& e) {
  bool hit = false;
  visit(e, [&](const ExprPtr& x) {
    switch (x->kind) {
      case ExprKind::Index:
      case ExprKind::Valid:
      case ExprKind::BlockLength: hit = true; break;
      case ExprKind::Unary: hit = hit || x->unop == UnOp::Deref; break;
      default: break;
    }
  });
  return hit;
}

}  // namespace

std::map<std::string, LogicSig> logic_signatures(const TypedUnit& unit) {
  std::map<std::string, LogicSig> sigs;
  std::map<std::string, std::set<std::string>> calls;
  for (auto& [name, sym] : unit.logic) {
    const Decl& d = *sym.decl;
    if (d.kind != DeclKind::LogicFunction && d.kind != DeclKind::Predicate) continue;
    LogicSig s;
    for (auto& p : d.params) s.params.push_back(sort_of(p.type));
    s.result = d.kind == DeclKind::Predicate ? Sort::Bool : sort_of(d.type);
    if (d.definition) {
      s.memory = reads_memory_directly(d.definition);
      visit(d.definition, [&](const ExprPtr& x) {
        if ((x->kind == ExprKind::Call || x->kind == ExprKind::Var) &&
            (x->ref == RefKind::LogicFunction || x->ref == RefKind::Predicate)) {
          calls[name].insert(x->name);
        }
      });
    } else {
      for (auto& p : d.params) s.memory = s.memory || p.type.is_pointer();
    }
    sigs[name] = s;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [name, callees] : calls) {
      if (sigs[name].memory) continue;
      for (auto& c : callees) {
        if (sigs[c].memory) {
          sigs[name].memory = true;
          changed = true;
          break;
        }
      }
    }
  }
  return sigs;
}

LowerEnv default_env() {
  LowerEnv env;
  env.heap = sym(kHeap, Sort::Heap);
  env.old_heap = sym(std::string(kHeap) + kPreSuffix, Sort::Heap);
  env.alloc = sym(kAlloc, Sort::Alloc);
  return env;
}

Lowerer::Lowerer(const TypedUnit& unit) : unit_(unit), sigs_(logic_signatures(unit)) {}

std::string Lowerer::fresh(const std::string& base) { return base + std::to_string(++counter_); }

TermPtr Lowerer::formula(const ExprPtr& e, const LowerEnv& env) { return truthy(term(e, env)); }

namespace {

TermPtr relation(BinOp op, TermPtr a, TermPtr b) {
  if (op == BinOp::Eq) return mk_eq(a, b);
  if (op == BinOp::Ne) return mk_not(mk_eq(a, b));
  if (a->sort == Sort::Ptr) {
    a = mk_off(a);
    b = mk_off(b);
  }
  a = as_int(a);
  b = as_int(b);
  switch (op) {
    case BinOp::Lt: return mk_lt(a, b);
    case BinOp::Le: return mk_le(a, b);
    case BinOp::Gt: return mk_lt(b, a);
    case BinOp::Ge: return mk_le(b, a);
    default: throw std::logic_error("not a relation");
  }
}

}  // namespace

TermPtr Lowerer::term(const ExprPtr& e, const LowerEnv& env) {
  auto app = [&](const std::string& name, std::vector<TermPtr> args) {
    const LogicSig& s = sigs_.at(name);
    if (s.memory) args.insert(args.begin(), {env.heap, env.alloc});
    return mk_app(name, s.result, std::move(args));
  };
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::CharLit: return int_const(e->int_value);
    case ExprKind::BoolLit: return bool_const(e->bool_value);
    case ExprKind::Null: return null_ptr();
    case ExprKind::Var:
      switch (e->ref) {
        case RefKind::Binder: return binders_.at(e->name);
        case RefKind::LogicFunction:
        case RefKind::Predicate: return app(e->name, {});
        default: {
          if (auto it = env.vars.find(e->name); it != env.vars.end()) return it->second;
          std::string name = env.pre_names ? e->name + kPreSuffix : e->name;
          return sym(name, sort_of(e->type), e->type.kind);
        }
      }
    case ExprKind::Result:
      if (!env.result) throw std::logic_error("\\result outside of a postcondition");
      return env.result;
    case ExprKind::Unary: {
      TermPtr a = term(e->args[0], env);
      switch (e->unop) {
        case UnOp::Neg: return mk_neg(as_int(a));
        case UnOp::Not: return mk_not(truthy(a));
        case UnOp::Deref: return mk_select(env.heap, a);
      }
      break;
    }
    case ExprKind::Binary: {
      TermPtr a = term(e->args[0], env), b = term(e->args[1], env);
      switch (e->binop) {
        case BinOp::Add:
          if (a->sort == Sort::Ptr) return shift(a, as_int(b));
          if (b->sort == Sort::Ptr) return shift(b, as_int(a));
          return mk_arith(Op::Add, as_int(a), as_int(b));
        case BinOp::Sub:
          if (a->sort == Sort::Ptr && b->sort == Sort::Ptr) return mk_arith(Op::Sub, mk_off(a), mk_off(b));
          if (a->sort == Sort::Ptr) return shift(a, mk_neg(as_int(b)));
          return mk_arith(Op::Sub, as_int(a), as_int(b));
        case BinOp::Mul: return mk_arith(Op::Mul, as_int(a), as_int(b));
        case BinOp::Div: return mk_arith(Op::Div, as_int(a), as_int(b));
        case BinOp::Mod: return mk_arith(Op::Mod, as_int(a), as_int(b));
        case BinOp::And: return mk_and(truthy(a), truthy(b));
        case BinOp::Or: return mk_or(truthy(a), truthy(b));
        case BinOp::Implies: return mk_implies(truthy(a), truthy(b));
        case BinOp::Iff: return mk_iff(truthy(a), truthy(b));
        default: return relation(e->binop, a, b);
      }
    }
    case ExprKind::Chain: {
      std::vector<TermPtr> parts;
      std::vector<TermPtr> xs;
      for (auto& a : e->args) xs.push_back(term(a, env));
      for (size_t i = 0; i < e->chain_ops.size(); ++i) parts.push_back(relation(e->chain_ops[i], xs[i], xs[i + 1]));
      return mk_and(std::move(parts));
    }
    case ExprKind::Cond: {
      TermPtr c = formula(e->args[0], env);
      TermPtr a = term(e->args[1], env), b = term(e->args[2], env);
      if (a->sort != b->sort) {
        a = as_int(a);
        b = as_int(b);
      }
      return mk_ite(c, a, b);
    }
    case ExprKind::Call: {
      std::vector<TermPtr> args;
      for (auto& a : e->args) {
        TermPtr t = term(a, env);
        args.push_back(t->sort == Sort::Bool && a->type.is_arith() ? as_int(t) : t);
      }
      const LogicSig& s = sigs_.at(e->name);
      for (size_t i = 0; i < args.size(); ++i) {
        if (s.params[i] == Sort::Int) args[i] = as_int(args[i]);
      }
      return app(e->name, std::move(args));
    }
    case ExprKind::Index: {
      TermPtr p = term(e->args[0], env), i = term(e->args[1], env);
      return mk_select(env.heap, shift(p, as_int(i)));
    }
    case ExprKind::Quant: {
      std::vector<Binder> bs;
      std::vector<TermPtr> guards;
      for (auto& b : e->binders) {
        std::string name = fresh(b.name + ".b");
        TermPtr s = sym(name, sort_of(b.type), b.type.kind);
        binders_[b.name] = s;
        bs.push_back({name, s->sort});
        guards.push_back(in_range(s, b.type.kind));
      }
      TermPtr body = formula(e->args[0], env);
      for (auto& b : e->binders) binders_.erase(b.name);
      TermPtr guard = mk_and(std::move(guards));
      if (e->quant == Quantifier::Forall) return mk_quant(Op::Forall, std::move(bs), mk_implies(guard, body));
      return mk_quant(Op::Exists, std::move(bs), mk_and(guard, body));
    }
    case ExprKind::Old:
    case ExprKind::AtPre: {
      LowerEnv inner = env;
      inner.vars = env.old_vars;
      inner.pre_names = env.old_is_pre;
      inner.heap = env.old_heap;
      return term(e->args[0], inner);
    }
    case ExprKind::Valid: return valid(env.alloc, term(e->args[0], env));
    case ExprKind::BaseAddr: return mk_ptr(mk_blk(term(e->args[0], env)), int_const(0));
    case ExprKind::Offset: return mk_off(term(e->args[0], env));
    case ExprKind::BlockLength: return mk_select(env.alloc, mk_blk(term(e->args[0], env)));
  }
  throw std::logic_error("cannot lower expression");
}

}  // namespace lemmaforge
