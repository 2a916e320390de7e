#include "lemmaforge/elaborator/elaborator.hpp"
#include "lemmaforge/oracle/oracle.hpp"

namespace lemmaforge::oracle {

namespace {

[[noreturn]] void trap(const std::string& what) { throw OracleError(OracleError::Kind::Trap, what); }

bool subset_range(TypeKind from, TypeKind to) {
  return type_min(from) >= type_min(to) && type_max(from) <= type_max(to);
}

class Machine {
 public:
  Machine(const TypedUnit& unit, const ExecOptions& opts, ConcreteState st)
      : unit_(unit), opts_(opts), st_(std::move(st)) {
    for (auto& [name, d] : unit.globals) {
      if (!st_.vars.count(name)) st_.vars[name] = d->type.is_pointer() ? Value::null() : Value::integer(0);
    }
  }

  std::optional<Value> call(const std::string& name, const std::vector<Value>& args) {
    const FunctionInfo* fn = unit_.function(name);
    if (!fn || !fn->definition) throw OracleError(OracleError::Kind::Unsupported, "'" + name + "' has no body");
    tick();
    if (++depth_ > 10000) throw OracleError(OracleError::Kind::FuelExhausted, "call depth exhausted");
    const Decl& d = *fn->definition;
    Frame frame;
    frame.fn = fn;
    for (size_t i = 0; i < d.params.size(); ++i) frame.locals[d.params[i].name] = args[i];
    Flow flow = seq(d.body->stmts, frame);
    --depth_;
    if (flow == Flow::Return) return frame.ret;
    if (!d.type.is_void()) trap("missing return statement in '" + name + "'");
    return std::nullopt;
  }

  ConcreteState& state() { return st_; }

 private:
  enum class Flow { Normal, Break, Return };
  struct Frame {
    const FunctionInfo* fn = nullptr;
    std::map<std::string, Value> locals;
    std::optional<Value> ret;
  };

  const TypedUnit& unit_;
  ExecOptions opts_;
  ConcreteState st_;
  long steps_ = 0;
  long depth_ = 0;

  void tick() {
    if (++steps_ > opts_.steps) throw OracleError(OracleError::Kind::FuelExhausted, "step budget exhausted");
  }

  void check_range(BigInt v, const Type& t, const char* what) const {
    if (!opts_.overflow || !t.is_machine_int()) return;
    if (v < type_min(t.kind) || v > type_max(t.kind)) trap(what);
  }

  Value convert(const Value& v, const Type& from, const Type& to) const {
    if (to.is_pointer()) return v;
    if (opts_.overflow && to.is_machine_int() && from.is_machine_int() && !subset_range(from.kind, to.kind)) {
      check_range(v.num, to, "value conversion out of range");
    }
    return Value::integer(v.num);
  }

  Value read(const Value& p) const {
    if (!st_.valid(p)) trap("invalid memory read at " + p.str());
    return Value::integer(st_.heap.at({p.block, p.num}));
  }

  Value& var(const std::string& name, Frame& f) {
    if (auto it = f.locals.find(name); it != f.locals.end()) return it->second;
    if (auto it = st_.vars.find(name); it != st_.vars.end()) return it->second;
    throw OracleError(OracleError::Kind::Unsupported, "unknown variable '" + name + "'");
  }

  Flow seq(const std::vector<StmtPtr>& stmts, Frame& f) {
    for (auto& s : stmts) {
      Flow fl = run(s, f);
      if (fl != Flow::Normal) return fl;
    }
    return Flow::Normal;
  }

  Flow run(const StmtPtr& s, Frame& f) {
    switch (s->kind) {
      case StmtKind::Empty: return Flow::Normal;
      case StmtKind::ExprStmt: eval(s->expr, f); return Flow::Normal;
      case StmtKind::Assign: assign(*s, f); return Flow::Normal;
      case StmtKind::Decl:
        for (auto& d : s->declarators) {
          Type t = declarator_type(s->decl_base, d);
          Value v = t.is_pointer() ? Value::null() : Value::integer(0);
          if (d.init) v = convert(eval(d.init, f), d.init->type, t);
          f.locals[d.name] = v;
        }
        return Flow::Normal;
      case StmtKind::If:
        if (eval(s->expr, f).truthy()) return run(s->then_branch, f);
        return s->else_branch ? run(s->else_branch, f) : Flow::Normal;
      case StmtKind::While:
      case StmtKind::For: {
        if (s->for_init) {
          Flow fl = run(s->for_init, f);
          if (fl != Flow::Normal) return fl;
        }
        while (true) {
          tick();
          if (s->expr && !eval(s->expr, f).truthy()) break;
          Flow fl = run(s->loop_body, f);
          if (fl == Flow::Break) break;
          if (fl == Flow::Return) return fl;
          if (s->for_step) run(s->for_step, f);
        }
        return Flow::Normal;
      }
      case StmtKind::Return:
        if (s->expr) {
          Value v = eval(s->expr, f);
          const Type rt = f.fn->primary()->type;
          f.ret = rt.is_pointer() ? v : convert(v, s->expr->type, rt);
        }
        return Flow::Return;
      case StmtKind::Break: return Flow::Break;
      case StmtKind::Block:
      case StmtKind::Ghost: return seq(s->stmts, f);
    }
    throw OracleError(OracleError::Kind::Unsupported, "unknown statement");
  }

  void assign(const Stmt& s, Frame& f) {
    const Type lt = s.lhs->type;
    auto compute = [&](const Value& cur, const std::optional<Value>& v) -> Value {
      if (s.assign_op == AssignOp::Set) return lt.is_pointer() ? *v : convert(*v, s.rhs->type, lt);
      bool plus = s.assign_op == AssignOp::AddSet || s.assign_op == AssignOp::PreInc ||
                  s.assign_op == AssignOp::PostInc;
      BigInt step = v ? v->num : 1;
      if (!plus) step = -step;
      if (lt.is_pointer()) return Value::pointer(cur.block, cur.num + step);
      BigInt r = cur.num + step;
      check_range(r, lt, "arithmetic overflow");
      return Value::integer(r);
    };
    if (s.lhs->kind == ExprKind::Var) {
      std::optional<Value> v;
      if (s.rhs) v = eval(s.rhs, f);
      Value& slot = var(s.lhs->name, f);
      slot = compute(slot, v);
      return;
    }
    Value addr = address(s.lhs, f);
    std::optional<Value> v;
    if (s.rhs) v = eval(s.rhs, f);
    if (!st_.valid(addr)) trap("invalid memory write at " + addr.str());
    BigInt& cell = st_.heap[{addr.block, addr.num}];
    cell = compute(Value::integer(cell), v).num;
  }

  Value address(const ExprPtr& e, Frame& f) {
    Value p = eval(e->args[0], f);
    if (e->kind == ExprKind::Index) {
      Value i = eval(e->args[1], f);
      return Value::pointer(p.block, p.num + i.num);
    }
    return p;
  }

  Value eval(const ExprPtr& e, Frame& f) {
    switch (e->kind) {
      case ExprKind::IntLit:
      case ExprKind::CharLit: return Value::integer(e->int_value);
      case ExprKind::Null: return Value::null();
      case ExprKind::Var: return var(e->name, f);
      case ExprKind::Unary: {
        Value a = eval(e->args[0], f);
        switch (e->unop) {
          case UnOp::Neg: check_range(-a.num, e->type, "arithmetic overflow"); return Value::integer(-a.num);
          case UnOp::Not: return Value::integer(a.truthy() ? 0 : 1);
          case UnOp::Deref: return read(a);
        }
        break;
      }
      case ExprKind::Index: return read(address(e, f));
      case ExprKind::Binary: return binary(e, f);
      case ExprKind::Cond: return eval(e->args[0], f).truthy() ? eval(e->args[1], f) : eval(e->args[2], f);
      case ExprKind::Call: {
        const FunctionInfo* callee = unit_.function(e->name);
        if (!callee) throw OracleError(OracleError::Kind::Unsupported, "unknown function '" + e->name + "'");
        const Decl& cd = *callee->primary();
        std::vector<Value> args;
        for (size_t i = 0; i < e->args.size(); ++i) {
          args.push_back(convert(eval(e->args[i], f), e->args[i]->type, cd.params[i].type));
        }
        if (opts_.check_preconditions) precondition(*callee, args);
        auto r = call(e->name, args);
        return r ? *r : Value::integer(0);
      }
      default: break;
    }
    throw OracleError(OracleError::Kind::Unsupported, "annotation construct in code");
  }

  void precondition(const FunctionInfo& callee, const std::vector<Value>& args) {
    const Decl& cd = *callee.primary();
    LogicFrame lf;
    lf.state = &st_;
    lf.pre = &st_;
    for (size_t i = 0; i < cd.params.size(); ++i) lf.vars[cd.params[i].name] = args[i];
    lf.old_vars = lf.vars;
    for (auto& r : callee.contract().requires_) {
      if ((r->kind == ExprKind::Var || r->kind == ExprKind::Call) && is_import_predicate(r->name)) continue;
      if (!eval_logic(unit_, r, lf).truthy()) trap("precondition of '" + callee.name + "' violated");
    }
  }

  Value binary(const ExprPtr& e, Frame& f) {
    if (e->binop == BinOp::And) {
      return Value::integer(eval(e->args[0], f).truthy() && eval(e->args[1], f).truthy() ? 1 : 0);
    }
    if (e->binop == BinOp::Or) {
      return Value::integer(eval(e->args[0], f).truthy() || eval(e->args[1], f).truthy() ? 1 : 0);
    }
    Value a = eval(e->args[0], f), b = eval(e->args[1], f);
    bool pa = a.kind == Value::Kind::Ptr, pb = b.kind == Value::Kind::Ptr;
    auto same_block = [&] {
      bool null_operand = e->args[0]->kind == ExprKind::Null || e->args[1]->kind == ExprKind::Null;
      if (!null_operand && a.block != b.block) trap("pointers into different blocks");
    };
    auto arith = [&](BigInt r) {
      check_range(r, e->type, "arithmetic overflow");
      return Value::integer(r);
    };
    switch (e->binop) {
      case BinOp::Add:
        if (pa) return Value::pointer(a.block, a.num + b.num);
        if (pb) return Value::pointer(b.block, b.num + a.num);
        return arith(a.num + b.num);
      case BinOp::Sub:
        if (pa && pb) {
          same_block();
          return arith(a.num - b.num);
        }
        if (pa) return Value::pointer(a.block, a.num - b.num);
        return arith(a.num - b.num);
      case BinOp::Mul: return arith(a.num * b.num);
      case BinOp::Div:
      case BinOp::Mod:
        if (b.num == 0) trap("division by zero");
        return arith(e->binop == BinOp::Div ? a.num / b.num : a.num % b.num);
      case BinOp::Eq:
      case BinOp::Ne: {
        bool eq = a.num == b.num && a.block == b.block;
        return Value::integer((e->binop == BinOp::Eq) == eq ? 1 : 0);
      }
      case BinOp::Lt:
      case BinOp::Le:
      case BinOp::Gt:
      case BinOp::Ge: {
        if (pa && pb) same_block();
        bool r = e->binop == BinOp::Lt   ? a.num < b.num
                 : e->binop == BinOp::Le ? a.num <= b.num
                 : e->binop == BinOp::Gt ? a.num > b.num
                                         : a.num >= b.num;
        return Value::integer(r ? 1 : 0);
      }
      default: break;
    }
    throw OracleError(OracleError::Kind::Unsupported, "operator not allowed in code");
  }
};

}  // namespace

ExecResult exec(const TypedUnit& unit, const std::string& function, const std::vector<Value>& args,
                const ConcreteState& st, const ExecOptions& options) {
  Machine m(unit, options, st);
  ExecResult r;
  r.result = m.call(function, args);
  r.state = std::move(m.state());
  return r;
}

}  // namespace lemmaforge::oracle
