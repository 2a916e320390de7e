#include <algorithm>
#include <functional>
#include <set>

#include "lemmaforge/oracle/oracle.hpp"
#include "lemmaforge/vcgen/vcgen.hpp"

namespace lemmaforge::oracle {

namespace {

// Every block content of length 1..max_len+1 over the alphabet plus 0,
// shortest first.
std::vector<std::vector<int>> block_contents(const SearchSpace& space) {
  std::set<int> symbols(space.alphabet.begin(), space.alphabet.end());
  symbols.insert(0);
  std::vector<int> sym(symbols.begin(), symbols.end());
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> layer = {{}};
  for (int len = 1; len <= space.max_len + 1; ++len) {
    std::vector<std::vector<int>> next;
    for (auto& w : layer) {
      for (int c : sym) {
        auto v = w;
        v.push_back(c);
        next.push_back(v);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// A variable ranging over the search space.
struct Dim {
  std::string name;
  Type type;
  size_t size = 0;
};

class Space {
 public:
  Space(const SearchSpace& space, std::vector<Param> vars) : space_(space) {
    std::set<int> chars(space.alphabet.begin(), space.alphabet.end());
    chars.insert(0);
    chars_.assign(chars.begin(), chars.end());
    for (BigInt i = space.int_lo; i <= space.int_hi; ++i) ints_.push_back(i);
    for (auto& p : vars) {
      Dim d{p.name, p.type, 0};
      if (p.type.is_pointer()) {
        if (blocks_.empty()) blocks_ = block_contents(space);
        d.size = blocks_.size();
      } else if (p.type.is_boolean()) {
        d.size = 2;
      } else {
        d.size = values(p.type).size();
      }
      dims_.push_back(d);
    }
  }

  const std::vector<Dim>& dims() const { return dims_; }

  // Calls `f` on every state in lexicographic order (first variable slowest)
  // until it returns true.
  void each(const std::function<bool(const std::vector<std::pair<std::string, Value>>&, const ConcreteState&)>& f) {
    for (auto& d : dims_) {
      if (d.size == 0) return;
    }
    std::vector<size_t> idx(dims_.size(), 0);
    while (true) {
      ConcreteState st;
      std::vector<std::pair<std::string, Value>> b;
      for (size_t i = 0; i < dims_.size(); ++i) b.emplace_back(dims_[i].name, value(dims_[i], idx[i], st));
      if (f(b, st)) return;
      size_t k = dims_.size();
      while (k > 0) {
        --k;
        if (++idx[k] < dims_[k].size) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (dims_.empty()) return;
    }
  }

 private:
  const SearchSpace& space_;
  std::vector<int> chars_;
  std::vector<BigInt> ints_;
  std::vector<std::vector<int>> blocks_;
  std::vector<Dim> dims_;

  std::vector<BigInt> values(const Type& t) const {
    std::vector<BigInt> out;
    if (t.kind == TypeKind::Char) {
      out.assign(chars_.begin(), chars_.end());
      return out;
    }
    for (auto v : ints_) {
      if (!t.is_machine_int() || (v >= type_min(t.kind) && v <= type_max(t.kind))) out.push_back(v);
    }
    return out;
  }

  Value value(const Dim& d, size_t i, ConcreteState& st) const {
    if (d.type.is_pointer()) return st.add_block(blocks_[i]);
    if (d.type.is_boolean()) return Value::boolean(i == 1);
    return Value::integer(values(d.type)[i]);
  }
};

bool skippable(const OracleError& e) {
  return e.kind() == OracleError::Kind::Trap || e.kind() == OracleError::Kind::FuelExhausted;
}

}  // namespace

std::optional<Counterexample> falsify(const TypedUnit& unit, const ExprPtr& statement, const SearchSpace& space) {
  std::vector<Param> binders;
  ExprPtr body = statement;
  while (body->kind == ExprKind::Quant && body->quant == Quantifier::Forall) {
    binders.insert(binders.end(), body->binders.begin(), body->binders.end());
    body = body->args[0];
  }
  std::optional<Counterexample> found;
  Space sp(space, binders);
  sp.each([&](const auto& bindings, const ConcreteState& st) {
    LogicFrame f;
    f.state = &st;
    f.pre = &st;
    for (auto& [n, v] : bindings) f.vars[n] = v;
    f.old_vars = f.vars;
    try {
      if (eval_logic(unit, body, f).truthy()) return false;
    } catch (const OracleError& e) {
      if (skippable(e)) return false;
      throw;
    }
    found = Counterexample{bindings, st};
    return true;
  });
  return found;
}

namespace {

IrValue to_ir(const Value& v) {
  IrValue r;
  r.value = v;
  r.sort = v.kind == Value::Kind::Ptr ? ir::Sort::Ptr : v.kind == Value::Kind::Bool ? ir::Sort::Bool : ir::Sort::Int;
  return r;
}

// Does the post-state respect the assigns clause?
bool frame_holds(const TypedUnit& unit, const FunctionInfo& fn, const LogicFrame& pre, const ConcreteState& post) {
  const Contract& c = fn.contract();
  if (c.assigns != ClauseSet::Nothing && c.assigns != ClauseSet::Locations) return true;
  std::set<std::string> listed;
  std::set<std::pair<BigInt, BigInt>> cells;
  for (auto& l : c.assigns_locs) {
    if (l->kind == ExprKind::Var) {
      listed.insert(l->name);
      continue;
    }
    Value p = eval_logic(unit, l->args[0], pre);
    if (l->kind == ExprKind::Index) p.num += eval_logic(unit, l->args[1], pre).num;
    cells.insert({p.block, p.num});
  }
  for (auto& [g, v] : pre.state->vars) {
    if (listed.count(g)) continue;
    auto it = post.vars.find(g);
    if (it == post.vars.end() || !(it->second == v)) return false;
  }
  for (auto& [k, v] : post.heap) {
    if (cells.count(k)) continue;
    auto it = pre.state->heap.find(k);
    if (it == pre.state->heap.end() || it->second != v) return false;
  }
  return true;
}

}  // namespace

Agreement crosscheck_wp(const TypedUnit& unit, const std::string& function, const SearchSpace& space, bool overflow) {
  VcOptions vo;
  vo.overflow = overflow;
  ir::TermPtr obligation = function_obligation(unit, function, vo);
  const FunctionInfo& fn = unit.functions.at(function);
  const Decl& d = *fn.definition;
  std::vector<Param> vars = d.params;
  for (auto& [g, gd] : unit.globals) vars.push_back({gd->type, g});

  ExecOptions eo;
  eo.overflow = overflow;
  Agreement out;
  Space sp(space, vars);
  sp.each([&](const auto& bindings, const ConcreteState& st0) {
    ConcreteState st = st0;
    std::map<std::string, Value> params;
    std::vector<Value> args;
    for (size_t i = 0; i < bindings.size(); ++i) {
      if (i < d.params.size()) {
        params[bindings[i].first] = bindings[i].second;
        args.push_back(bindings[i].second);
      } else {
        st.vars[bindings[i].first] = bindings[i].second;
      }
    }
    ++out.states;

    std::map<std::string, IrValue> env;
    for (auto& [n, v] : bindings) env[n + kPreSuffix] = to_ir(v);
    IrValue heap;
    heap.sort = ir::Sort::Heap;
    heap.heap = std::make_shared<const Heap>(st.heap);
    env[std::string(kHeap) + kPreSuffix] = heap;
    IrValue alloc;
    alloc.sort = ir::Sort::Alloc;
    alloc.alloc = std::make_shared<const std::map<BigInt, BigInt>>(st.alloc);
    env[kAlloc] = alloc;

    bool wp_ok = false, run_ok = true;
    try {
      wp_ok = eval_ir(unit, obligation, env, quant_domain(st), static_cast<long>(st.heap_size()) + 1).value.truthy();

      LogicFrame pre;
      pre.state = &st;
      pre.pre = &st;
      pre.vars = params;
      pre.old_vars = params;
      bool req = true;
      for (auto& r : fn.contract().requires_) req = req && eval_logic(unit, r, pre).truthy();
      if (req) {
        std::optional<ExecResult> res;
        try {
          res = exec(unit, function, args, st, eo);
        } catch (const OracleError& e) {
          if (e.kind() != OracleError::Kind::Trap) throw;
          run_ok = false;
        }
        if (res) {
          LogicFrame post = pre;
          post.state = &res->state;
          post.result = res->result;
          for (auto& e : fn.contract().ensures) run_ok = run_ok && eval_logic(unit, e, post).truthy();
          run_ok = run_ok && frame_holds(unit, fn, pre, res->state);
        }
      }
    } catch (const OracleError& e) {
      if (!skippable(e)) throw;
      ++out.skipped;
      return false;
    }
    out.holds += wp_ok;
    if (wp_ok != run_ok) {
      std::string s;
      for (auto& [n, v] : bindings) s += (s.empty() ? "" : ", ") + n + " = " + v.str();
      s += wp_ok ? ": obligation holds but execution fails" : ": obligation fails but execution succeeds";
      out.disagreements.push_back(s);
    }
    return false;
  });
  return out;
}

}  // namespace lemmaforge::oracle
