#include "lemmaforge/smt/encoder.hpp"

#include <functional>
#include <sstream>

#include "lemmaforge/graph.hpp"

namespace lemmaforge::smt {

using namespace ir;

namespace {

constexpr const char* kHeader = R"((set-option :produce-models true)
(set-logic ALL)
(declare-datatypes ((Ptr 0)) (((mk-ptr (blk Int) (off Int)))))
(define-sort Heap () (Array Ptr Int))
(define-sort Alloc () (Array Int Int))
)";

// Only emitted when the script mentions wf.heap / wf.alloc: the quantified
// axioms keep z3 from producing models even for memory-free goals.
constexpr const char* kMemory = R"((declare-fun wf.heap (Heap) Bool)
(declare-fun wf.alloc (Alloc) Bool)
(assert (forall ((h Heap) (p Ptr)) (=> (wf.heap h) (and (<= (- 128) (select h p)) (<= (select h p) 127)))))
(assert (forall ((h Heap) (p Ptr) (v Int)) (=> (and (wf.heap h) (<= (- 128) v) (<= v 127)) (wf.heap (store h p v)))))
(assert (forall ((a Alloc) (b Int)) (=> (wf.alloc a) (and (<= 0 (select a b)) (<= (select a b) 9223372036854775807)))))
(assert (forall ((a Alloc)) (=> (wf.alloc a) (= (select a 0) 0))))
)";

constexpr const char* kLimited = ".lim";

constexpr const char* kDivMod = R"((define-fun c.div ((a Int) (b Int)) Int
  (ite (>= a 0) (ite (> b 0) (div a b) (- (div a (- b)))) (ite (> b 0) (- (div (- a) b)) (div (- a) (- b)))))
(define-fun c.mod ((a Int) (b Int)) Int (- a (* b (c.div a b))))
)";

const std::set<std::string>& reserved() {
  static const std::set<std::string> words = {
      "and", "or", "not", "=>", "ite", "=", "distinct", "true", "false", "let", "forall", "exists", "select",
      "store", "Int", "Bool", "Array", "div", "mod", "abs", "blk", "off", "mk-ptr", "Ptr", "Heap", "Alloc",
      "par", "match", "as", "_", "!", "NUMERAL", "DECIMAL", "STRING", "BINARY", "HEXADECIMAL"};
  return words;
}

bool uses_div(const TermPtr& t, std::set<const Term*>& seen) {
  if (!seen.insert(t.get()).second) return false;
  if (t->op == Op::Div || t->op == Op::Mod) return true;
  for (auto& a : t->args) {
    if (uses_div(a, seen)) return true;
  }
  return false;
}

struct Definition {
  std::string name;
  std::vector<Binder> params;  // including mem.H / mem.A
  Sort result = Sort::Bool;
  TermPtr body;  // null when undefined
  std::set<std::string> deps;
  bool recursive = false;
  int scc = -1;
};

struct Statement {
  std::string kind;  // axiom | lemma
  std::string name;
  TermPtr formula;
};

struct Block {
  std::string name;
  std::vector<std::string> functions;
  std::vector<Statement> statements;
};

class Encoder {
 public:
  Encoder(const TypedUnit& unit, const VC& vc) : unit_(unit), vc_(vc), lower_(unit) {}

  std::string run() {
    for (auto& d : vc_.imports) import(d);
    mark_recursive();

    std::set<std::string> applied;
    std::vector<TermPtr> all = vc_.hypotheses;
    all.push_back(vc_.goal);
    for (auto& t : all) applied_functions(t, applied);
    for (auto& b : blocks_) {
      for (auto& s : b.statements) applied_functions(s.formula, applied);
    }
    for (auto& [_, d] : defs_) applied.insert(d.deps.begin(), d.deps.end());
    for (auto& name : applied) {
      if (defs_.count(name) || name.rfind("wf.", 0) == 0) continue;
      const LogicSig& s = lower_.signatures().at(name);
      Definition d;
      d.name = name;
      if (s.memory) d.params = {{"mem.H", Sort::Heap}, {"mem.A", Sort::Alloc}};
      for (size_t i = 0; i < s.params.size(); ++i) d.params.push_back({"x" + std::to_string(i), s.params[i]});
      d.result = s.result;
      defs_[name] = d;
      order_.push_back(name);
    }
    for (auto& [name, _] : defs_) functions_.insert(name);

    std::ostringstream out;
    bool div = false;
    std::set<const Term*> seen;
    for (auto& t : all) div = div || uses_div(t, seen);
    for (auto& [_, d] : defs_) div = div || (d.body && uses_div(d.body, seen));
    for (auto& b : blocks_) {
      for (auto& s : b.statements) div = div || uses_div(s.formula, seen);
    }
    if (div) out << kDivMod;

    for (auto& name : order_) {
      const Definition& d = defs_.at(name);
      if (d.body && !d.recursive) continue;
      out << "(declare-fun " << fn(name) << " (";
      for (size_t i = 0; i < d.params.size(); ++i) out << (i ? " " : "") << to_string(d.params[i].sort);
      out << ") " << to_string(d.result) << ")\n";
      if (d.recursive) {
        out << "(declare-fun " << fn(name) << kLimited << " (";
        for (size_t i = 0; i < d.params.size(); ++i) out << (i ? " " : "") << to_string(d.params[i].sort);
        out << ") " << to_string(d.result) << ")\n";
      }
    }
    std::set<std::string> emitted;
    std::function<void(const std::string&)> define = [&](const std::string& name) {
      const Definition& d = defs_.at(name);
      if (!d.body || d.recursive || !emitted.insert(name).second) return;
      for (auto& dep : d.deps) {
        if (dep != name) define(dep);
      }
      out << "(define-fun " << fn(name) << " (";
      for (size_t i = 0; i < d.params.size(); ++i) {
        out << (i ? " " : "") << "(" << d.params[i].name << " " << to_string(d.params[i].sort) << ")";
      }
      out << ") " << to_string(d.result) << " " << text(d.body) << ")\n";
    };
    for (auto& name : order_) define(name);

    for (auto& b : blocks_) {
      out << "; block " << b.name << "\n";
      for (auto& name : b.functions) {
        const Definition& d = defs_.at(name);
        if (!d.body || !d.recursive) continue;
        // Recursive calls in the body go to the limited twin, which has no
        // unfolding axiom: each application present unfolds exactly once.
        std::string binders, call = "(" + fn(name);
        for (auto& p : d.params) {
          binders += (binders.empty() ? "(" : " (") + var(p.name) + " " + to_string(p.sort) + ")";
          call += " " + var(p.name);
        }
        call += ")";
        std::string lim_call = "(" + fn(name) + kLimited + call.substr(1 + fn(name).size());
        std::string body = render(d.body, [&](const std::string& n, bool f) {
          if (!f) return var(n);
          auto it = defs_.find(n);
          if (it != defs_.end() && it->second.recursive && it->second.scc == d.scc) return fn(n) + kLimited;
          return fn(n);
        });
        auto axiom = [&](const std::string& f) {
          out << "(assert (forall (" << binders << ") (! " << f << " :pattern (" << call << "))))\n";
        };
        out << "; definition " << name << "\n";
        if (d.result == Sort::Bool) {
          // One implication per direction; a single equivalence leaves z3
          // stuck on array-theory incompleteness.
          axiom("(=> " + call + " " + body + ")");
          axiom("(=> " + body + " " + call + ")");
        } else {
          axiom("(= " + call + " " + body + ")");
        }
        axiom("(= " + call + " " + lim_call + ")");
      }
      for (auto& s : b.statements) {
        out << "; " << s.kind << " " << s.name << "\n(assert " << text(s.formula) << ")\n";
      }
    }

    out << "; vc " << vc_.name << "\n";
    std::map<std::string, TermPtr> free;
    for (auto& t : all) free_symbols(t, free);
    for (auto& [name, s] : free) out << "(declare-const " << var(name) << " " << to_string(s->sort) << ")\n";
    for (auto& [name, s] : free) {
      if (s->sort == Sort::Heap) out << "(assert (wf.heap " << var(name) << "))\n";
      if (s->sort == Sort::Alloc) out << "(assert (wf.alloc " << var(name) << "))\n";
      TermPtr r = in_range(s, s->ctype);
      if (!(r->op == Op::Bool && r->value)) out << "(assert " << text(r) << ")\n";
    }
    for (auto& h : vc_.hypotheses) out << "(assert " << text(h) << ")\n";
    out << "(assert (not " << text(vc_.goal) << "))\n(check-sat)\n";
    std::string body = out.str();
    return std::string(kHeader) + (body.find("wf.") != std::string::npos ? kMemory : "") + body;
  }

 private:
  const TypedUnit& unit_;
  const VC& vc_;
  Lowerer lower_;
  std::map<std::string, Definition> defs_;
  std::vector<std::string> order_;
  std::vector<Block> blocks_;
  std::set<std::string> functions_;

  std::string fn(const std::string& name) const { return reserved().count(name) ? name + ".u" : name; }

  std::string var(const std::string& name) const {
    return reserved().count(name) || functions_.count(name) ? name + ".u" : name;
  }

  std::string text(const TermPtr& t) const {
    return render(t, [this](const std::string& n, bool f) { return f ? fn(n) : var(n); });
  }

  static LowerEnv memory_env() {
    LowerEnv env = default_env();
    env.heap = sym("mem.H", Sort::Heap);
    env.alloc = sym("mem.A", Sort::Alloc);
    return env;
  }

  void import(const DeclPtr& d) {
    Block b;
    b.name = d->name;
    std::vector<DeclPtr> members = d->kind == DeclKind::AxiomaticBlock ? d->members : std::vector<DeclPtr>{d};
    for (auto& m : members) {
      switch (m->kind) {
        case DeclKind::LogicFunction:
        case DeclKind::Predicate: {
          const LogicSig& s = lower_.signatures().at(m->name);
          Definition def;
          def.name = m->name;
          def.result = s.result;
          LowerEnv env = memory_env();
          if (s.memory) def.params = {{"mem.H", Sort::Heap}, {"mem.A", Sort::Alloc}};
          for (auto& p : m->params) {
            std::string n = p.name + ".p";
            env.vars[p.name] = sym(n, sort_of(p.type), p.type.kind);
            def.params.push_back({n, sort_of(p.type)});
          }
          if (m->definition) {
            TermPtr body = lower_.term(m->definition, env);
            if (def.result == Sort::Bool) body = truthy(body);
            else if (def.result == Sort::Int) body = as_int(body);
            def.body = body;
            applied_functions(body, def.deps);
          }
          defs_[m->name] = def;
          order_.push_back(m->name);
          b.functions.push_back(m->name);
          break;
        }
        case DeclKind::Axiom:
        case DeclKind::Lemma: {
          LowerEnv env = memory_env();
          TermPtr f = lower_.formula(m->definition, env);
          std::map<std::string, TermPtr> free;
          free_symbols(f, free);
          if (free.count("mem.H") || free.count("mem.A")) {
            TermPtr wf = mk_and(mk_app("wf.alloc", Sort::Bool, {env.alloc}), mk_app("wf.heap", Sort::Bool, {env.heap}));
            f = mk_quant(Op::Forall, {{"mem.H", Sort::Heap}, {"mem.A", Sort::Alloc}}, mk_implies(wf, f));
          }
          b.statements.push_back({m->kind == DeclKind::Axiom ? "axiom" : "lemma", m->name, f});
          break;
        }
        default: break;
      }
    }
    blocks_.push_back(std::move(b));
  }

  void mark_recursive() {
    std::vector<std::string> names;
    std::map<std::string, int> index;
    for (auto& [name, _] : defs_) {
      index[name] = static_cast<int>(names.size());
      names.push_back(name);
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> self(names.size(), false);
    for (auto& [name, d] : defs_) {
      for (auto& dep : d.deps) {
        auto it = index.find(dep);
        if (it == index.end()) continue;
        edges.emplace_back(index[name], it->second);
        if (dep == name) self[index[name]] = true;
      }
    }
    auto comp = strongly_connected_components(names.size(), edges);
    std::map<int, int> size;
    for (int c : comp) ++size[c];
    for (size_t i = 0; i < names.size(); ++i) {
      defs_[names[i]].recursive = self[i] || size[comp[i]] > 1;
      defs_[names[i]].scc = comp[i];
    }
  }
};

}  // namespace

std::string encode(const TypedUnit& unit, const VC& vc) { return Encoder(unit, vc).run(); }

}  // namespace lemmaforge::smt
