#include <functional>

#include "lemmaforge/oracle/oracle.hpp"
#include "lemmaforge/vcgen/vcgen.hpp"

namespace lemmaforge::oracle {

using namespace ir;

namespace {

using Alloc = std::map<BigInt, BigInt>;

IrValue of_int(BigInt v) { return {Sort::Int, Value::integer(v), nullptr, nullptr}; }
IrValue of_bool(bool b) { return {Sort::Bool, Value::boolean(b), nullptr, nullptr}; }
IrValue of_ptr(BigInt b, BigInt o) { return {Sort::Ptr, Value::pointer(b, o), nullptr, nullptr}; }

// Heaps and allocation tables are total; unlisted entries read as 0.
template <class M>
bool total_equal(const M& a, const M& b) {
  for (auto& [k, v] : a) {
    auto it = b.find(k);
    if ((it == b.end() ? 0 : it->second) != v) return false;
  }
  for (auto& [k, v] : b) {
    if (!a.count(k) && v != 0) return false;
  }
  return true;
}

struct Definition {
  std::vector<std::string> params;
  TermPtr body;
};

class IrEval {
 public:
  IrEval(const TypedUnit& unit, const QuantDomain& dom, long fuel) : unit_(unit), dom_(dom), fuel_(fuel) {}

  using Scope = std::vector<std::pair<std::string, IrValue>>;

  IrValue eval(const TermPtr& t, Scope& sc, const std::map<std::string, IrValue>* env) {
    switch (t->op) {
      case Op::Int: return of_int(t->value);
      case Op::Bool: return of_bool(t->value != 0);
      case Op::Sym: {
        for (auto it = sc.rbegin(); it != sc.rend(); ++it) {
          if (it->first == t->name) return it->second;
        }
        if (env) {
          if (auto it = env->find(t->name); it != env->end()) return it->second;
        }
        throw OracleError(OracleError::Kind::Unsupported, "no value for symbol '" + t->name + "'");
      }
      case Op::Not: return of_bool(!test(t->args[0], sc, env));
      case Op::And:
        for (auto& a : t->args) {
          if (!test(a, sc, env)) return of_bool(false);
        }
        return of_bool(true);
      case Op::Or:
        for (auto& a : t->args) {
          if (test(a, sc, env)) return of_bool(true);
        }
        return of_bool(false);
      case Op::Implies: return of_bool(!test(t->args[0], sc, env) || test(t->args[1], sc, env));
      case Op::Iff: return of_bool(test(t->args[0], sc, env) == test(t->args[1], sc, env));
      case Op::Ite: return test(t->args[0], sc, env) ? eval(t->args[1], sc, env) : eval(t->args[2], sc, env);
      case Op::Eq: {
        IrValue a = eval(t->args[0], sc, env), b = eval(t->args[1], sc, env);
        if (a.sort == Sort::Heap) return of_bool(total_equal(*a.heap, *b.heap));
        if (a.sort == Sort::Alloc) return of_bool(total_equal(*a.alloc, *b.alloc));
        return of_bool(a.value.num == b.value.num && a.value.block == b.value.block);
      }
      case Op::Lt: return of_bool(num(t->args[0], sc, env) < num(t->args[1], sc, env));
      case Op::Le: return of_bool(num(t->args[0], sc, env) <= num(t->args[1], sc, env));
      case Op::Add: return of_int(num(t->args[0], sc, env) + num(t->args[1], sc, env));
      case Op::Sub: return of_int(num(t->args[0], sc, env) - num(t->args[1], sc, env));
      case Op::Mul: return of_int(num(t->args[0], sc, env) * num(t->args[1], sc, env));
      case Op::Div:
      case Op::Mod: {
        BigInt a = num(t->args[0], sc, env), b = num(t->args[1], sc, env);
        if (b == 0) return of_int(0);  // unspecified; every use is guarded
        return of_int(t->op == Op::Div ? a / b : a % b);
      }
      case Op::Neg: return of_int(-num(t->args[0], sc, env));
      case Op::App: return apply(t, sc, env);
      case Op::Forall:
      case Op::Exists: return quant(t, sc, env);
      case Op::MkPtr: return of_ptr(num(t->args[0], sc, env), num(t->args[1], sc, env));
      case Op::Blk: return of_int(eval(t->args[0], sc, env).value.block);
      case Op::Off: return of_int(eval(t->args[0], sc, env).value.num);
      case Op::Select: {
        IrValue a = eval(t->args[0], sc, env), i = eval(t->args[1], sc, env);
        if (a.sort == Sort::Heap) {
          auto it = a.heap->find({i.value.block, i.value.num});
          return of_int(it == a.heap->end() ? 0 : it->second);
        }
        auto it = a.alloc->find(i.value.num);
        return of_int(it == a.alloc->end() ? 0 : it->second);
      }
      case Op::Store: {
        IrValue h = eval(t->args[0], sc, env), p = eval(t->args[1], sc, env);
        BigInt v = num(t->args[2], sc, env);
        auto copy = std::make_shared<Heap>(*h.heap);
        (*copy)[{p.value.block, p.value.num}] = v;
        h.heap = std::move(copy);
        return h;
      }
      case Op::Label: return eval(t->args[0], sc, env);
    }
    throw OracleError(OracleError::Kind::Unsupported, "cannot evaluate term");
  }

 private:
  const TypedUnit& unit_;
  const QuantDomain& dom_;
  long fuel_;
  long depth_ = 0;
  std::map<std::string, Definition> defs_;
  std::unique_ptr<Lowerer> lower_;

  bool test(const TermPtr& t, Scope& sc, const std::map<std::string, IrValue>* env) {
    return eval(t, sc, env).value.truthy();
  }
  BigInt num(const TermPtr& t, Scope& sc, const std::map<std::string, IrValue>* env) {
    return eval(t, sc, env).value.num;
  }

  const Definition& definition(const std::string& name) {
    if (auto it = defs_.find(name); it != defs_.end()) return it->second;
    auto sym_it = unit_.logic.find(name);
    if (sym_it == unit_.logic.end() || !sym_it->second.decl->definition) {
      throw OracleError(OracleError::Kind::Unsupported, "'" + name + "' has no definition");
    }
    if (!lower_) lower_ = std::make_unique<Lowerer>(unit_);
    const Decl& d = *sym_it->second.decl;
    Definition def;
    LowerEnv env = default_env();
    if (lower_->signatures().at(name).memory) def.params = {kHeap, kAlloc};
    for (auto& p : d.params) {
      std::string n = p.name + ".a";
      env.vars[p.name] = sym(n, sort_of(p.type), p.type.kind);
      def.params.push_back(n);
    }
    def.body = lower_->term(d.definition, env);
    return defs_[name] = std::move(def);
  }

  IrValue apply(const TermPtr& t, Scope& sc, const std::map<std::string, IrValue>* env) {
    const Definition& def = definition(t->name);
    Scope inner;
    for (size_t i = 0; i < def.params.size(); ++i) inner.emplace_back(def.params[i], eval(t->args[i], sc, env));
    if (depth_ >= fuel_) throw OracleError(OracleError::Kind::FuelExhausted, "fuel exhausted in '" + t->name + "'");
    ++depth_;
    IrValue r;
    try {
      r = eval(def.body, inner, nullptr);
    } catch (...) {
      --depth_;
      throw;
    }
    --depth_;
    return r;
  }

  std::vector<IrValue> domain(Sort s) const {
    std::vector<IrValue> out;
    switch (s) {
      case Sort::Int:
        for (auto& v : dom_.integers) out.push_back(of_int(v));
        break;
      case Sort::Bool: out = {of_bool(false), of_bool(true)}; break;
      case Sort::Ptr:
        for (auto& p : dom_.pointers) out.push_back(of_ptr(p.block, p.num));
        break;
      default: throw OracleError(OracleError::Kind::Unsupported, "quantifier over memory");
    }
    return out;
  }

  IrValue quant(const TermPtr& t, Scope& sc, const std::map<std::string, IrValue>* env) {
    bool forall = t->op == Op::Forall;
    std::vector<std::vector<IrValue>> doms;
    for (auto& b : t->binders) doms.push_back(domain(b.sort));
    size_t base = sc.size();
    for (auto& b : t->binders) sc.emplace_back(b.name, IrValue());
    bool result = forall;
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
      if (i == doms.size()) {
        bool v = test(t->args[0], sc, env);
        if (v != forall) {
          result = v;
          return true;
        }
        return false;
      }
      for (auto& v : doms[i]) {
        sc[base + i].second = v;
        if (go(i + 1)) return true;
      }
      return false;
    };
    try {
      go(0);
    } catch (...) {
      sc.resize(base);
      throw;
    }
    sc.resize(base);
    return of_bool(result);
  }
};

}  // namespace

IrValue eval_ir(const TypedUnit& unit, const TermPtr& t, const std::map<std::string, IrValue>& env,
                const QuantDomain& domain, long fuel) {
  IrEval ev(unit, domain, fuel);
  IrEval::Scope sc;
  return ev.eval(t, sc, &env);
}

}  // namespace lemmaforge::oracle
