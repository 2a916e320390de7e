#include "lemmaforge/vcgen/ir.hpp"

#include <functional>
#include <sstream>
#include <unordered_map>

namespace lemmaforge::ir {

const char* to_string(Sort s) {
  switch (s) {
    case Sort::Int: return "Int";
    case Sort::Bool: return "Bool";
    case Sort::Ptr: return "Ptr";
    case Sort::Heap: return "Heap";
    case Sort::Alloc: return "Alloc";
  }
  return "?";
}

const char* to_string(VcKind k) {
  switch (k) {
    case VcKind::Post: return "Post";
    case VcKind::LoopInvInit: return "LoopInvInit";
    case VcKind::LoopInvPreserve: return "LoopInvPreserve";
    case VcKind::VariantDecrease: return "VariantDecrease";
    case VcKind::VariantNonneg: return "VariantNonneg";
    case VcKind::CallPre: return "CallPre";
    case VcKind::RecDecrease: return "RecDecrease";
    case VcKind::Assigns: return "Assigns";
    case VcKind::Safety: return "Safety";
    case VcKind::Terminates: return "Terminates";
  }
  return "?";
}

namespace {

TermPtr node(Op op, Sort sort, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->sort = sort;
  t->args = std::move(args);
  return t;
}

bool is_bool(const TermPtr& t, bool v) { return t->op == Op::Bool && (t->value != 0) == v; }

}  // namespace

TermPtr int_const(BigInt v) {
  auto t = std::make_shared<Term>();
  t->op = Op::Int;
  t->value = v;
  return t;
}

TermPtr bool_const(bool v) {
  auto t = std::make_shared<Term>();
  t->op = Op::Bool;
  t->sort = Sort::Bool;
  t->value = v ? 1 : 0;
  return t;
}

TermPtr sym(const std::string& name, Sort sort, TypeKind ctype) {
  auto t = std::make_shared<Term>();
  t->op = Op::Sym;
  t->sort = sort;
  t->name = name;
  t->ctype = ctype;
  return t;
}

TermPtr mk_not(TermPtr a) {
  if (a->op == Op::Bool) return bool_const(a->value == 0);
  if (a->op == Op::Not) return a->args[0];
  return node(Op::Not, Sort::Bool, {std::move(a)});
}

TermPtr mk_and(std::vector<TermPtr> parts) {
  std::vector<TermPtr> kept;
  for (auto& p : parts) {
    if (is_bool(p, true)) continue;
    if (p->op == Op::And) {
      kept.insert(kept.end(), p->args.begin(), p->args.end());
    } else {
      kept.push_back(p);
    }
  }
  if (kept.empty()) return bool_const(true);
  if (kept.size() == 1) return kept.front();
  return node(Op::And, Sort::Bool, std::move(kept));
}

TermPtr mk_and(TermPtr a, TermPtr b) { return mk_and(std::vector<TermPtr>{std::move(a), std::move(b)}); }

TermPtr mk_or(std::vector<TermPtr> parts) {
  std::vector<TermPtr> kept;
  for (auto& p : parts) {
    if (is_bool(p, false)) continue;
    if (is_bool(p, true)) return bool_const(true);
    kept.push_back(p);
  }
  if (kept.empty()) return bool_const(false);
  if (kept.size() == 1) return kept.front();
  return node(Op::Or, Sort::Bool, std::move(kept));
}

TermPtr mk_or(TermPtr a, TermPtr b) { return mk_or(std::vector<TermPtr>{std::move(a), std::move(b)}); }

TermPtr mk_implies(TermPtr a, TermPtr b) {
  if (is_bool(a, true)) return b;
  if (is_bool(a, false) || is_bool(b, true)) return bool_const(true);
  return node(Op::Implies, Sort::Bool, {std::move(a), std::move(b)});
}

TermPtr mk_iff(TermPtr a, TermPtr b) { return node(Op::Iff, Sort::Bool, {std::move(a), std::move(b)}); }

TermPtr mk_ite(TermPtr c, TermPtr a, TermPtr b) {
  if (c->op == Op::Bool) return c->value ? a : b;
  Sort s = a->sort;
  return node(Op::Ite, s, {std::move(c), std::move(a), std::move(b)});
}

TermPtr mk_eq(TermPtr a, TermPtr b) {
  if (a.get() == b.get()) return bool_const(true);
  if (a->op == Op::Int && b->op == Op::Int) return bool_const(a->value == b->value);
  if (a->op == Op::Sym && b->op == Op::Sym && a->name == b->name) return bool_const(true);
  if (a->sort == Sort::Bool) return mk_iff(std::move(a), std::move(b));
  return node(Op::Eq, Sort::Bool, {std::move(a), std::move(b)});
}

TermPtr mk_lt(TermPtr a, TermPtr b) {
  if (a->op == Op::Int && b->op == Op::Int) return bool_const(a->value < b->value);
  return node(Op::Lt, Sort::Bool, {std::move(a), std::move(b)});
}

TermPtr mk_le(TermPtr a, TermPtr b) {
  if (a->op == Op::Int && b->op == Op::Int) return bool_const(a->value <= b->value);
  return node(Op::Le, Sort::Bool, {std::move(a), std::move(b)});
}

TermPtr mk_arith(Op op, TermPtr a, TermPtr b) {
  if (a->op == Op::Int && b->op == Op::Int) {
    if (op == Op::Add) return int_const(a->value + b->value);
    if (op == Op::Sub) return int_const(a->value - b->value);
    if (op == Op::Mul) return int_const(a->value * b->value);
  }
  if (op == Op::Add && b->op == Op::Int && b->value == 0) return a;
  if (op == Op::Sub && b->op == Op::Int && b->value == 0) return a;
  return node(op, Sort::Int, {std::move(a), std::move(b)});
}

TermPtr mk_neg(TermPtr a) {
  if (a->op == Op::Int) return int_const(-a->value);
  return node(Op::Neg, Sort::Int, {std::move(a)});
}

TermPtr mk_app(const std::string& name, Sort result, std::vector<TermPtr> args) {
  auto t = node(Op::App, result, std::move(args));
  std::const_pointer_cast<Term>(t)->name = name;
  return t;
}

TermPtr mk_quant(Op q, std::vector<Binder> binders, TermPtr body) {
  if (binders.empty() || body->op == Op::Bool) return body;
  auto t = std::make_shared<Term>();
  t->op = q;
  t->sort = Sort::Bool;
  t->binders = std::move(binders);
  t->args = {std::move(body)};
  return t;
}

TermPtr mk_ptr(TermPtr block, TermPtr offset) { return node(Op::MkPtr, Sort::Ptr, {std::move(block), std::move(offset)}); }

TermPtr mk_blk(TermPtr p) {
  if (p->op == Op::MkPtr) return p->args[0];
  return node(Op::Blk, Sort::Int, {std::move(p)});
}

TermPtr mk_off(TermPtr p) {
  if (p->op == Op::MkPtr) return p->args[1];
  return node(Op::Off, Sort::Int, {std::move(p)});
}

TermPtr mk_select(TermPtr array, TermPtr index) { return node(Op::Select, Sort::Int, {std::move(array), std::move(index)}); }

TermPtr mk_store(TermPtr heap, TermPtr p, TermPtr v) {
  return node(Op::Store, Sort::Heap, {std::move(heap), std::move(p), std::move(v)});
}

TermPtr mk_label(VcKind kind, SourcePos pos, std::string description, TermPtr goal) {
  auto t = node(Op::Label, Sort::Bool, {std::move(goal)});
  auto info = std::make_shared<LabelInfo>();
  info->kind = kind;
  info->pos = std::move(pos);
  info->description = std::move(description);
  std::const_pointer_cast<Term>(t)->label = info;
  return t;
}

TermPtr null_ptr() { return mk_ptr(int_const(0), int_const(0)); }

TermPtr shift(TermPtr p, TermPtr i) {
  if (i->op == Op::Int && i->value == 0) return p;
  return mk_ptr(mk_blk(p), mk_arith(Op::Add, mk_off(p), std::move(i)));
}

TermPtr valid(TermPtr alloc, TermPtr p) {
  return mk_and(mk_le(int_const(0), mk_off(p)), mk_lt(mk_off(p), mk_select(std::move(alloc), mk_blk(p))));
}

TermPtr in_range(TermPtr t, TypeKind k) {
  switch (k) {
    case TypeKind::Char:
    case TypeKind::Int:
    case TypeKind::Long:
    case TypeKind::SizeT: return mk_and(mk_le(int_const(type_min(k)), t), mk_le(t, int_const(type_max(k))));
    default: return bool_const(true);
  }
}

TermPtr truthy(TermPtr t) {
  switch (t->sort) {
    case Sort::Bool: return t;
    case Sort::Ptr: return mk_not(mk_eq(std::move(t), null_ptr()));
    default: return mk_not(mk_eq(std::move(t), int_const(0)));
  }
}

TermPtr as_int(TermPtr t) {
  if (t->sort != Sort::Bool) return t;
  return mk_ite(std::move(t), int_const(1), int_const(0));
}

// ---- traversals ---------------------------------------------------------------

namespace {

TermPtr rebuild(const TermPtr& t, std::vector<TermPtr> args) {
  auto copy = std::make_shared<Term>(*t);
  copy->args = std::move(args);
  return copy;
}

class Substituter {
 public:
  explicit Substituter(const std::map<std::string, TermPtr>& s) : s_(s) {}

  TermPtr run(const TermPtr& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    TermPtr out = go(t);
    memo_[t.get()] = out;
    return out;
  }

 private:
  const std::map<std::string, TermPtr>& s_;
  std::unordered_map<const Term*, TermPtr> memo_;

  TermPtr go(const TermPtr& t) {
    if (t->op == Op::Sym) {
      auto it = s_.find(t->name);
      return it == s_.end() ? t : it->second;
    }
    if (t->args.empty()) return t;
    if (t->op == Op::Forall || t->op == Op::Exists) {
      bool shadows = false;
      for (auto& b : t->binders) shadows = shadows || s_.count(b.name);
      if (shadows) {
        std::map<std::string, TermPtr> inner = s_;
        for (auto& b : t->binders) inner.erase(b.name);
        return rebuild(t, {Substituter(inner).run(t->args[0])});
      }
    }
    std::vector<TermPtr> args;
    bool changed = false;
    for (auto& a : t->args) {
      args.push_back(run(a));
      changed = changed || args.back() != a;
    }
    return changed ? rebuild(t, std::move(args)) : t;
  }
};

}  // namespace

TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& s) {
  if (s.empty()) return t;
  return Substituter(s).run(t);
}

void free_symbols(const TermPtr& t, std::map<std::string, TermPtr>& out) {
  std::set<const Term*> seen;
  std::function<void(const TermPtr&, std::set<std::string>&)> go = [&](const TermPtr& x, std::set<std::string>& bound) {
    if (x->op == Op::Sym) {
      if (!bound.count(x->name)) out.emplace(x->name, x);
      return;
    }
    if (x->op == Op::Forall || x->op == Op::Exists) {
      std::set<std::string> inner = bound;
      for (auto& b : x->binders) inner.insert(b.name);
      go(x->args[0], inner);
      return;
    }
    if (bound.empty()) {
      if (!seen.insert(x.get()).second) return;
    }
    for (auto& a : x->args) go(a, bound);
  };
  std::set<std::string> none;
  go(t, none);
}

void applied_functions(const TermPtr& t, std::set<std::string>& out) {
  std::set<const Term*> seen;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& x) {
    if (!seen.insert(x.get()).second) return;
    if (x->op == Op::App) out.insert(x->name);
    for (auto& a : x->args) go(a);
  };
  go(t);
}

bool contains_label(const TermPtr& t) {
  if (t->op == Op::Label) return true;
  for (auto& a : t->args) {
    if (contains_label(a)) return true;
  }
  return false;
}

TermPtr strip_labels(const TermPtr& t) {
  if (t->op == Op::Label) return strip_labels(t->args[0]);
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  bool changed = false;
  for (auto& a : t->args) {
    args.push_back(strip_labels(a));
    changed = changed || args.back() != a;
  }
  return changed ? rebuild(t, std::move(args)) : t;
}

std::string to_string(const TermPtr& t) {
  return render(t, [](const std::string& n, bool) { return n; });
}

std::string render(const TermPtr& t, const std::function<std::string(const std::string&, bool)>& rename) {
  std::ostringstream out;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& x) {
    auto nary = [&](const char* op) {
      out << "(" << op;
      for (auto& a : x->args) {
        out << " ";
        go(a);
      }
      out << ")";
    };
    switch (x->op) {
      case Op::Int:
        if (x->value < 0) out << "(- " << lemmaforge::to_string(-x->value) << ")";
        else out << lemmaforge::to_string(x->value);
        return;
      case Op::Bool: out << (x->value ? "true" : "false"); return;
      case Op::Sym: out << rename(x->name, false); return;
      case Op::Not: nary("not"); return;
      case Op::And: nary("and"); return;
      case Op::Or: nary("or"); return;
      case Op::Implies: nary("=>"); return;
      case Op::Iff:
      case Op::Eq: nary("="); return;
      case Op::Ite: nary("ite"); return;
      case Op::Lt: nary("<"); return;
      case Op::Le: nary("<="); return;
      case Op::Add: nary("+"); return;
      case Op::Sub: nary("-"); return;
      case Op::Mul: nary("*"); return;
      case Op::Div: nary("c.div"); return;
      case Op::Mod: nary("c.mod"); return;
      case Op::Neg: nary("-"); return;
      case Op::App:
        if (x->args.empty()) out << rename(x->name, true);
        else nary(rename(x->name, true).c_str());
        return;
      case Op::Forall:
      case Op::Exists:
        out << (x->op == Op::Forall ? "(forall (" : "(exists (");
        for (size_t i = 0; i < x->binders.size(); ++i) {
          out << (i ? " " : "") << "(" << rename(x->binders[i].name, false) << " " << to_string(x->binders[i].sort) << ")";
        }
        out << ") ";
        go(x->args[0]);
        out << ")";
        return;
      case Op::MkPtr: nary("mk-ptr"); return;
      case Op::Blk: nary("blk"); return;
      case Op::Off: nary("off"); return;
      case Op::Select: nary("select"); return;
      case Op::Store: nary("store"); return;
      case Op::Label: go(x->args[0]); return;
    }
  };
  go(t);
  return out.str();
}

}  // namespace lemmaforge::ir
