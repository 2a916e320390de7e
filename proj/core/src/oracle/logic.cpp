#include <functional>

#include "lemmaforge/oracle/oracle.hpp"

namespace lemmaforge::oracle {

namespace {

[[noreturn]] void trap(const std::string& what) { throw OracleError(OracleError::Kind::Trap, what); }

BigInt c_div(BigInt a, BigInt b) { return a / b; }  // __int128 truncates toward zero like C
BigInt c_mod(BigInt a, BigInt b) { return a % b; }

bool in_type(const Type& t, BigInt v) {
  if (!t.is_machine_int()) return true;
  return v >= type_min(t.kind) && v <= type_max(t.kind);
}

class LogicEval {
 public:
  LogicEval(const TypedUnit& unit, long fuel, QuantDomain dom) : unit_(unit), fuel_(fuel), dom_(std::move(dom)) {}

  Value eval(const ExprPtr& e, const LogicFrame& f) {
    switch (e->kind) {
      case ExprKind::IntLit:
      case ExprKind::CharLit: return Value::integer(e->int_value);
      case ExprKind::BoolLit: return Value::boolean(e->bool_value);
      case ExprKind::Null: return Value::null();
      case ExprKind::Var:
        if (e->ref == RefKind::LogicFunction || e->ref == RefKind::Predicate) return apply(e->name, {}, f);
        return lookup(e->name, f);
      case ExprKind::Result:
        if (!f.result) throw OracleError(OracleError::Kind::Unsupported, "\\result without a value");
        return *f.result;
      case ExprKind::Unary: {
        Value a = eval(e->args[0], f);
        switch (e->unop) {
          case UnOp::Neg: return Value::integer(-a.num);
          case UnOp::Not: return Value::boolean(!a.truthy());
          case UnOp::Deref: return read(*f.state, a);
        }
        break;
      }
      case ExprKind::Binary: return binary(e, f);
      case ExprKind::Chain: {
        std::vector<Value> xs;
        for (auto& a : e->args) xs.push_back(eval(a, f));
        for (size_t i = 0; i < e->chain_ops.size(); ++i) {
          if (!relation(e->chain_ops[i], xs[i], xs[i + 1])) return Value::boolean(false);
        }
        return Value::boolean(true);
      }
      case ExprKind::Cond: return eval(e->args[0], f).truthy() ? eval(e->args[1], f) : eval(e->args[2], f);
      case ExprKind::Call: {
        std::vector<Value> args;
        for (auto& a : e->args) args.push_back(eval(a, f));
        return apply(e->name, std::move(args), f);
      }
      case ExprKind::Index: {
        Value p = eval(e->args[0], f), i = eval(e->args[1], f);
        return read(*f.state, Value::pointer(p.block, p.num + i.num));
      }
      case ExprKind::Quant: return quant(e, f);
      case ExprKind::Old:
      case ExprKind::AtPre: {
        if (!f.pre) throw OracleError(OracleError::Kind::Unsupported, "\\old without a pre-state");
        LogicFrame g;
        g.state = f.pre;
        g.pre = f.pre;
        g.vars = f.old_vars;
        g.old_vars = f.old_vars;
        g.result = f.result;
        return eval(e->args[0], g);
      }
      case ExprKind::Valid: return Value::boolean(f.state->valid(eval(e->args[0], f)));
      case ExprKind::BaseAddr: return Value::pointer(eval(e->args[0], f).block, 0);
      case ExprKind::Offset: return Value::integer(eval(e->args[0], f).num);
      case ExprKind::BlockLength: return Value::integer(f.state->block_length(eval(e->args[0], f).block));
    }
    throw OracleError(OracleError::Kind::Unsupported, "cannot evaluate expression");
  }

 private:
  const TypedUnit& unit_;
  long fuel_;
  long depth_ = 0;
  QuantDomain dom_;
  std::vector<std::pair<std::string, Value>> scope_;  // binders and logic parameters

  Value lookup(const std::string& name, const LogicFrame& f) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    if (auto it = f.vars.find(name); it != f.vars.end()) return it->second;
    if (auto it = f.state->vars.find(name); it != f.state->vars.end()) return it->second;
    throw OracleError(OracleError::Kind::Unsupported, "no value for '" + name + "'");
  }

  static Value read(const ConcreteState& st, const Value& p) {
    if (!st.valid(p)) trap("invalid memory read at " + p.str());
    return Value::integer(st.heap.at({p.block, p.num}));
  }

  static bool relation(BinOp op, const Value& a, const Value& b) {
    switch (op) {
      case BinOp::Eq: return a.num == b.num && a.block == b.block;
      case BinOp::Ne: return !(a.num == b.num && a.block == b.block);
      case BinOp::Lt: return a.num < b.num;
      case BinOp::Le: return a.num <= b.num;
      case BinOp::Gt: return a.num > b.num;
      case BinOp::Ge: return a.num >= b.num;
      default: break;
    }
    throw OracleError(OracleError::Kind::Unsupported, "not a relation");
  }

  Value binary(const ExprPtr& e, const LogicFrame& f) {
    switch (e->binop) {
      case BinOp::And: return Value::boolean(eval(e->args[0], f).truthy() && eval(e->args[1], f).truthy());
      case BinOp::Or: return Value::boolean(eval(e->args[0], f).truthy() || eval(e->args[1], f).truthy());
      case BinOp::Implies: return Value::boolean(!eval(e->args[0], f).truthy() || eval(e->args[1], f).truthy());
      default: break;
    }
    Value a = eval(e->args[0], f), b = eval(e->args[1], f);
    bool pa = a.kind == Value::Kind::Ptr, pb = b.kind == Value::Kind::Ptr;
    switch (e->binop) {
      case BinOp::Iff: return Value::boolean(a.truthy() == b.truthy());
      case BinOp::Add:
        if (pa) return Value::pointer(a.block, a.num + b.num);
        if (pb) return Value::pointer(b.block, b.num + a.num);
        return Value::integer(a.num + b.num);
      case BinOp::Sub:
        if (pa && pb) return Value::integer(a.num - b.num);
        if (pa) return Value::pointer(a.block, a.num - b.num);
        return Value::integer(a.num - b.num);
      case BinOp::Mul: return Value::integer(a.num * b.num);
      case BinOp::Div:
      case BinOp::Mod:
        if (b.num == 0) trap("division by zero in annotation");
        return Value::integer(e->binop == BinOp::Div ? c_div(a.num, b.num) : c_mod(a.num, b.num));
      default: return Value::boolean(relation(e->binop, a, b));
    }
  }

  Value apply(const std::string& name, std::vector<Value> args, const LogicFrame& f) {
    auto it = unit_.logic.find(name);
    if (it == unit_.logic.end() || !it->second.decl->definition) {
      throw OracleError(OracleError::Kind::Unsupported, "'" + name + "' has no definition");
    }
    const Decl& d = *it->second.decl;
    if (depth_ >= fuel_) throw OracleError(OracleError::Kind::FuelExhausted, "fuel exhausted in '" + name + "'");
    std::vector<std::pair<std::string, Value>> saved;
    saved.swap(scope_);
    for (size_t i = 0; i < d.params.size(); ++i) scope_.emplace_back(d.params[i].name, args[i]);
    ++depth_;
    struct Restore {
      LogicEval* self;
      std::vector<std::pair<std::string, Value>>* saved;
      ~Restore() {
        --self->depth_;
        self->scope_.swap(*saved);
      }
    } restore{this, &saved};
    return eval(d.definition, f);
  }

  std::vector<Value> domain(const Type& t) const {
    std::vector<Value> out;
    if (t.is_pointer()) return dom_.pointers;
    if (t.is_boolean()) return {Value::boolean(false), Value::boolean(true)};
    for (auto& v : dom_.integers) {
      if (in_type(t, v)) out.push_back(Value::integer(v));
    }
    return out;
  }

  Value quant(const ExprPtr& e, const LogicFrame& f) {
    bool forall = e->quant == Quantifier::Forall;
    std::vector<std::vector<Value>> doms;
    for (auto& b : e->binders) doms.push_back(domain(b.type));
    size_t base = scope_.size();
    for (auto& b : e->binders) scope_.emplace_back(b.name, Value());
    bool result = forall;
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
      if (i == doms.size()) {
        bool v = eval(e->args[0], f).truthy();
        if (v != forall) {
          result = v;
          return true;
        }
        return false;
      }
      for (auto& v : doms[i]) {
        scope_[base + i].second = v;
        if (go(i + 1)) return true;
      }
      return false;
    };
    try {
      go(0);
    } catch (...) {
      scope_.resize(base);
      throw;
    }
    scope_.resize(base);
    return Value::boolean(result);
  }
};

}  // namespace

Value eval_logic(const TypedUnit& unit, const ExprPtr& term, const LogicFrame& frame) {
  long fuel = static_cast<long>(frame.state->heap_size()) + 1;
  if (frame.pre) fuel = std::max(fuel, static_cast<long>(frame.pre->heap_size()) + 1);
  LogicEval ev(unit, fuel, quant_domain(*frame.state));
  return ev.eval(term, frame);
}

}  // namespace lemmaforge::oracle
