#include "lemmaforge/elaborator/elaborator.hpp"

#include <algorithm>
#include <filesystem>

#include "lemmaforge/graph.hpp"
#include "lemmaforge/hash.hpp"

namespace lemmaforge {

namespace {

constexpr std::string_view kImportPrefix = "__lf_ok_";
const std::string kResultBinder = "__lf_result";
const std::string kGlobalBinderPrefix = "__lf_g_";

std::map<const Decl*, size_t> ordinals(const TypedUnit& unit) {
  std::map<const Decl*, size_t> out;
  auto all = unit.all_decls();
  for (size_t i = 0; i < all.size(); ++i) out[all[i].get()] = i;
  return out;
}

size_t anchor_of(const std::map<const Decl*, size_t>& ord, const FunctionInfo& fn) {
  return ord.at(fn.primary().get());
}

ExprPtr conjunction(const std::vector<ExprPtr>& parts) {
  if (parts.empty()) return make_bool(true);
  ExprPtr acc = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) acc = make_binary(BinOp::And, acc, parts[i]);
  return acc;
}

bool contains_generated(const SourceUnit& unit, SourcePos* where) {
  for (auto& d : unit.decls) {
    std::vector<const Decl*> names{d.get()};
    for (auto& m : d->members) names.push_back(m.get());
    for (auto* n : names) {
      if (n->name.rfind(kReservedPrefix, 0) == 0) {
        *where = n->pos;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

bool is_import_predicate(const std::string& name) { return name.rfind(kImportPrefix, 0) == 0; }

GeneratedNames generated_names(const std::string& file, const std::string& function) {
  std::string normal = std::filesystem::path(file).lexically_normal().generic_string();
  std::string key = normal;
  key += '\0';
  key += function;
  GeneratedNames n;
  n.hash = sha256_hex(key).substr(0, 8);
  n.block = std::string(kReservedPrefix) + function + "_" + n.hash;
  n.predicate = std::string(kImportPrefix) + function + "_" + n.hash;
  n.axiom = std::string(kReservedPrefix) + "ax_" + function + "_" + n.hash;
  return n;
}

size_t function_anchor(const TypedUnit& unit, const FunctionInfo& fn) {
  return anchor_of(ordinals(unit), fn);
}

// ---- axiom ------------------------------------------------------------------

GeneratedAxiom generate_lemma_axiom(const TypedUnit& unit, const FunctionInfo& fn) {
  if (!fn.effects.empty()) {
    std::string what;
    for (auto& g : fn.effects.globals) what += (what.empty() ? "" : ", ") + g;
    if (fn.effects.heap) what += (what.empty() ? "" : ", ") + std::string("memory");
    fail(DiagKind::ImpureLemma, fn.primary()->pos,
         "lemma function '" + fn.name + "' is not pure: it writes " + what);
  }
  const Decl& d = *fn.primary();
  const Contract& c = fn.contract();

  std::set<std::string> globals;
  auto to_axiom = [&](const ExprPtr& e) {
    std::function<ExprPtr(const ExprPtr&)> f = [&](const ExprPtr& x) -> ExprPtr {
      switch (x->kind) {
        case ExprKind::Result: {
          auto v = make_var(kResultBinder, x->pos);
          v->ref = RefKind::Binder;
          v->type = d.type;
          return v;
        }
        case ExprKind::Old:
        case ExprKind::AtPre: return rewrite(x->args[0], f);  // pure: pre-state = post-state
        case ExprKind::Var:
          if (x->ref == RefKind::Global) {
            globals.insert(x->name);
            auto v = make_var(kGlobalBinderPrefix + x->name, x->pos);
            v->ref = RefKind::Binder;
            v->type = x->type;
            return v;
          }
          return nullptr;
        default: return nullptr;
      }
    };
    return rewrite(e, f);
  };

  std::vector<ExprPtr> reqs, enss;
  for (auto& r : c.requires_) {
    if (r->kind == ExprKind::Var && is_import_predicate(r->name)) continue;
    reqs.push_back(to_axiom(r));
  }
  for (auto& e : c.ensures) enss.push_back(to_axiom(e));
  ExprPtr body = make_binary(BinOp::Implies, conjunction(reqs), conjunction(enss));
  if (!d.type.is_void()) {
    body = make_quant(Quantifier::Exists, {Param{d.type, kResultBinder}}, body);
  }
  std::vector<Param> binders = d.params;
  for (auto& g : globals) binders.push_back(Param{unit.globals.at(g)->type, kGlobalBinderPrefix + g});
  if (!binders.empty()) body = make_quant(Quantifier::Forall, std::move(binders), body);

  GeneratedAxiom ax;
  ax.name = generated_names(unit.unit.file, fn.name).axiom;
  ax.statement = body;
  ax.origin = fn.name;
  return ax;
}

ImportBlock synthesize_import_block(const std::string& file, const FunctionInfo& fn,
                                    const GeneratedAxiom& axiom) {
  GeneratedNames n = generated_names(file, fn.name);
  SourcePos pos = fn.primary()->pos;

  auto pred = std::make_shared<Decl>();
  pred->kind = DeclKind::Predicate;
  pred->pos = pos;
  pred->name = n.predicate;
  pred->type = Type::boolean();
  pred->definition = make_bool(true);

  auto ax = std::make_shared<Decl>();
  ax->kind = DeclKind::Axiom;
  ax->pos = pos;
  ax->name = axiom.name;
  ax->type = Type::boolean();
  ax->definition = clone(axiom.statement);

  auto block = std::make_shared<Decl>();
  block->kind = DeclKind::AxiomaticBlock;
  block->pos = pos;
  block->name = n.block;
  block->members = {pred, ax};
  return ImportBlock{block, n.predicate};
}

Contract enforce_lemma_clauses(const FunctionInfo& fn) {
  Contract c = fn.contract();
  SourcePos pos = fn.primary()->pos;
  auto nothing = [&](ClauseSet& set, std::vector<ExprPtr>& locs, const char* clause) {
    if (set == ClauseSet::Unspecified) set = ClauseSet::Nothing;
    if (set != ClauseSet::Nothing) {
      fail(DiagKind::ConflictingClause, locs.empty() ? pos : locs.front()->pos,
           "lemma function '" + fn.name + "' must have '" + clause + " \\nothing'");
    }
  };
  nothing(c.assigns, c.assigns_locs, "assigns");
  nothing(c.allocates, c.allocates_locs, "allocates");
  if (!c.terminates) {
    c.terminates = make_bool(true);
  } else if (!(c.terminates->kind == ExprKind::BoolLit && c.terminates->bool_value)) {
    fail(DiagKind::ConflictingClause, c.terminates->pos,
         "lemma function '" + fn.name + "' must have 'terminates \\true'");
  }
  return c;
}

// ---- ordering -----------------------------------------------------------------

OrderingGraph order_lemma_components(const TypedUnit& unit) {
  auto ord = ordinals(unit);
  std::vector<std::string> lemmas;
  std::map<std::string, int> index;
  for (auto& name : unit.function_order) {
    if (unit.functions.at(name).is_lemma()) {
      index[name] = static_cast<int>(lemmas.size());
      lemmas.push_back(name);
    }
  }
  OrderingGraph g;
  std::vector<std::pair<int, int>> edges;
  for (auto& name : lemmas) {
    for (auto& callee : unit.functions.at(name).callees) {
      if (!index.count(callee)) continue;
      edges.emplace_back(index[name], index[callee]);
      g.edges.emplace_back(name, callee);
    }
  }
  auto comp = strongly_connected_components(lemmas.size(), edges);
  std::map<int, std::vector<std::string>> groups;
  for (size_t i = 0; i < lemmas.size(); ++i) groups[comp[i]].push_back(lemmas[i]);
  for (auto& [_, members] : groups) {
    std::sort(members.begin(), members.end(), [&](const std::string& a, const std::string& b) {
      return anchor_of(ord, unit.functions.at(a)) < anchor_of(ord, unit.functions.at(b));
    });
    LemmaComponent c;
    c.members = members;
    const FunctionInfo& first = unit.functions.at(members.front());
    c.anchor = anchor_of(ord, first);
    c.anchor_pos = first.primary()->pos;
    g.components.push_back(std::move(c));
  }
  std::sort(g.components.begin(), g.components.end(),
            [](const LemmaComponent& a, const LemmaComponent& b) { return a.anchor < b.anchor; });
  for (size_t i = 0; i < g.components.size(); ++i) {
    for (auto& m : g.components[i].members) g.component_of[m] = i;
  }

  for (auto& name : unit.function_order) {
    const FunctionInfo& fn = unit.functions.at(name);
    if (!fn.definition) continue;
    size_t own = g.component_of.count(name) ? g.components[g.component_of[name]].anchor : anchor_of(ord, fn);
    visit_exprs(fn.definition->body, [&](const ExprPtr& e) {
      if (e->kind != ExprKind::Call || !g.component_of.count(e->name)) return;
      const LemmaComponent& target = g.components[g.component_of[e->name]];
      if (target.anchor > own) {
        Diagnostic diag{DiagKind::ForwardLemmaUse, e->pos,
                        "'" + name + "' calls lemma function '" + e->name + "' before its definition",
                        {target.anchor_pos}};
        throw DiagnosticError({diag});
      }
    });
  }
  return g;
}

// ---- import closure -----------------------------------------------------------

void collect_logic_symbols(const ExprPtr& e, std::set<std::string>& out) {
  visit(e, [&](const ExprPtr& x) {
    if ((x->kind == ExprKind::Call || x->kind == ExprKind::Var) &&
        (x->ref == RefKind::LogicFunction || x->ref == RefKind::Predicate)) {
      out.insert(x->name);
    }
  });
}

namespace {

void contract_symbols(const Contract& c, std::set<std::string>& out, bool skip_imports) {
  for (auto& r : c.requires_) {
    if (skip_imports && r->kind == ExprKind::Var && is_import_predicate(r->name)) continue;
    collect_logic_symbols(r, out);
  }
  for (auto& e : c.ensures) collect_logic_symbols(e, out);
  for (auto& l : c.assigns_locs) collect_logic_symbols(l, out);
  collect_logic_symbols(c.decreases, out);
  collect_logic_symbols(c.terminates, out);
}

std::vector<std::string> defined_symbols(const Decl& d) {
  std::vector<std::string> out;
  if (d.kind == DeclKind::AxiomaticBlock) {
    for (auto& m : d.members) {
      if (m->kind == DeclKind::LogicFunction || m->kind == DeclKind::Predicate) out.push_back(m->name);
    }
  } else if (d.kind == DeclKind::LogicFunction || d.kind == DeclKind::Predicate) {
    out.push_back(d.name);
  }
  return out;
}

void used_symbols(const Decl& d, std::set<std::string>& out) {
  collect_logic_symbols(d.definition, out);
  for (auto& m : d.members) collect_logic_symbols(m->definition, out);
}

}  // namespace

std::vector<DeclPtr> import_closure_of(const TypedUnit& unit, std::set<std::string> symbols) {
  auto all = unit.all_decls();
  std::vector<bool> taken(all.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < all.size(); ++i) {
      if (taken[i]) continue;
      auto defs = defined_symbols(*all[i]);
      bool hit = std::any_of(defs.begin(), defs.end(), [&](const std::string& s) { return symbols.count(s) > 0; });
      if (!hit) continue;
      taken[i] = true;
      used_symbols(*all[i], symbols);
      changed = true;
    }
  }
  std::vector<DeclPtr> out;
  for (size_t i = 0; i < all.size(); ++i) {
    if (taken[i]) out.push_back(all[i]);
  }
  return out;
}

std::vector<DeclPtr> compute_import_closure(const TypedUnit& unit, const std::string& function) {
  const FunctionInfo& fn = unit.functions.at(function);
  std::set<std::string> symbols;
  contract_symbols(fn.contract(), symbols, false);
  if (fn.definition) {
    visit_exprs(fn.definition->body, [&](const ExprPtr& e) {
      if (e->kind == ExprKind::Var || e->kind == ExprKind::Call) {
        if (e->ref == RefKind::LogicFunction || e->ref == RefKind::Predicate) symbols.insert(e->name);
        if (e->kind == ExprKind::Call && e->ref == RefKind::CodeFunction) {
          contract_symbols(unit.functions.at(e->name).contract(), symbols, true);
        }
      }
    });
  }
  // Stand-alone logic lemmas written earlier in the file are in scope.
  auto all = unit.all_decls();
  size_t anchor = function_anchor(unit, fn);
  std::vector<DeclPtr> lemmas;
  for (size_t i = 0; i < anchor; ++i) {
    if (all[i]->kind == DeclKind::Lemma) {
      lemmas.push_back(all[i]);
      collect_logic_symbols(all[i]->definition, symbols);
    }
  }
  auto blocks = import_closure_of(unit, std::move(symbols));
  blocks.insert(blocks.end(), lemmas.begin(), lemmas.end());
  auto ord = ordinals(unit);
  std::sort(blocks.begin(), blocks.end(),
            [&](const DeclPtr& a, const DeclPtr& b) { return ord.at(a.get()) < ord.at(b.get()); });
  return blocks;
}

// ---- driver -------------------------------------------------------------------

Elaboration elaborate(const TypedUnit& unit) {
  SourcePos where;
  if (contains_generated(unit.unit, &where)) {
    fail(DiagKind::AlreadyElaborated, where, "unit already contains generated lemma declarations");
  }
  Elaboration out;
  out.order = order_lemma_components(unit);
  auto ord = ordinals(unit);
  const size_t base = unit.prelude.decls.size();

  SourceUnit copy = clone(unit.unit);
  std::map<const Decl*, size_t> user_index;
  for (size_t i = 0; i < unit.unit.decls.size(); ++i) user_index[unit.unit.decls[i].get()] = i;
  auto target_of = [&](const FunctionInfo& fn) -> Decl& {
    const DeclPtr& d = fn.contract_decl ? fn.contract_decl : fn.primary();
    return *copy.decls[user_index.at(d.get())];
  };

  std::map<size_t, std::vector<DeclPtr>> inserted_after;
  std::vector<std::pair<size_t, std::string>> imports;  // (component anchor, predicate)
  for (auto& name : unit.function_order) {
    const FunctionInfo& fn = unit.functions.at(name);
    if (!fn.is_lemma()) continue;
    GeneratedAxiom ax = generate_lemma_axiom(unit, fn);
    Contract enforced = enforce_lemma_clauses(fn);
    Decl& target = target_of(fn);
    target.contract = enforced;
    target.has_contract = true;
    ImportBlock block = synthesize_import_block(unit.unit.file, fn, ax);
    inserted_after[ord.at(fn.definition.get()) - base].push_back(block.block);
    out.names[name] = generated_names(unit.unit.file, name);
    size_t comp_anchor = out.order.components[out.order.component_of.at(name)].anchor;
    imports.emplace_back(comp_anchor, block.predicate);
  }
  std::stable_sort(imports.begin(), imports.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  for (auto& name : unit.function_order) {
    const FunctionInfo& fn = unit.functions.at(name);
    size_t own = out.order.component_of.count(name)
                     ? out.order.components[out.order.component_of.at(name)].anchor
                     : anchor_of(ord, fn);
    Decl& target = target_of(fn);
    for (auto& [anchor, pred] : imports) {
      if (anchor >= own) continue;
      auto v = make_var(pred, target.pos);
      target.contract.requires_.push_back(v);
      target.has_contract = true;
    }
  }

  out.unit.file = unit.unit.file;
  for (size_t i = 0; i < copy.decls.size(); ++i) {
    out.unit.decls.push_back(copy.decls[i]);
    if (auto it = inserted_after.find(i); it != inserted_after.end()) {
      for (auto& b : it->second) out.unit.decls.push_back(b);
    }
  }
  CheckOptions opts;
  opts.allow_reserved = true;
  out.typed = check(out.unit, opts);
  return out;
}

}  // namespace lemmaforge
