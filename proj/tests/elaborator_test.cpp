#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "lemmaforge/frontend/printer.hpp"
#include "support.hpp"

using namespace lemmaforge;
using lftest::checked;
using lftest::diag_of;
using lftest::elaborated;

namespace {

const char* kCorpus[] = {"strlen.c", "skip_spaces.c", "strchr.c", "strchrnul.c", "strspn.c",
                         "strcspn.c", "strnlen.c", "strpbrk.c", "range_generalization.c"};

// Dummy predicates required by a function of an elaborated unit.
std::set<std::string> imports_of(const Elaboration& e, const std::string& fn) {
  std::set<std::string> syms, out;
  for (auto& r : e.typed.function(fn)->contract().requires_) collect_logic_symbols(r, syms);
  for (auto& s : syms) {
    if (is_import_predicate(s)) out.insert(s);
  }
  return out;
}

std::string lemma(const std::string& name, const std::string& params, const std::string& clauses,
                  const std::string& body) {
  return "/*@ ghost\n  @ /@ lemma\n" + clauses + "  @  @/\n  @ void " + name + "(" + params + ")" + body + "\n  @*/\n";
}

std::string trivial_lemma(const std::string& name, const std::string& body = " { }") {
  return lemma(name, "int n", "  @  @ requires n >= 0;\n  @  @ decreases n;\n  @  @ ensures \\true;\n", body);
}

bool contains_decl(const std::vector<DeclPtr>& v, const std::string& name) {
  return std::any_of(v.begin(), v.end(), [&](const DeclPtr& d) { return d->name == name; });
}

}  // namespace

TEST(Axiom, StrchrnulInRange) {
  TypedUnit t = checked(lftest::kStrchrnulInRange);
  GeneratedAxiom ax = generate_lemma_axiom(t, *t.function("strchrnul_in_range"));
  EXPECT_EQ(ax.name, generated_names("t.c", "strchrnul_in_range").axiom);
  EXPECT_EQ(structural_dump(ax.statement),
            structural_dump(parse_expression(
                "\\forall char *s, char c; valid_str(s) ==> s <= strchrnul(s, c) <= s + strlen(s)")));
}

TEST(Axiom, VacuousContract) {
  TypedUnit t = checked(lemma("l", "void", "  @  @ ensures \\true;\n", " { }"));
  GeneratedAxiom ax = generate_lemma_axiom(t, *t.function("l"));
  EXPECT_EQ(structural_dump(ax.statement), structural_dump(parse_expression("\\true ==> \\true")));
}

TEST(Axiom, StrchrSkipped) {
  TypedUnit t = lemmaforge::check(parse_file(lftest::corpus_path("strchr.c")));
  GeneratedAxiom ax = generate_lemma_axiom(t, *t.function("strchr_skipped"));
  EXPECT_EQ(structural_dump(ax.statement),
            structural_dump(parse_expression("\\forall char *str, char c, size_t i; "
                                             "valid_str(str) && strchr(str, c) != \\null && "
                                             "0 <= i < strchr(str, c) - str ==> str[i] != c")));
}

TEST(Axiom, NonVoidLemmaQuantifiesResult) {
  TypedUnit t = checked(
      "/*@ ghost\n  @ /@ lemma\n  @  @ ensures \\result == n;\n  @  @/\n  @ int l(int n) { return n; }\n  @*/\n");
  GeneratedAxiom ax = generate_lemma_axiom(t, *t.function("l"));
  EXPECT_EQ(structural_dump(ax.statement),
            structural_dump(parse_expression("\\forall int n; \\exists int __lf_result; \\true ==> __lf_result == n")));
}

TEST(Axiom, ImpureLemma) {
  EXPECT_EQ(diag_of([] { elaborate(lemmaforge::check(parse_file(lftest::data_path("impure_lemma_assigns.c")))); }),
            DiagKind::ImpureLemma);
}

TEST(Golden, StrchrnulInRange) {
  SourceUnit u = parse_program(lftest::slurp(lftest::data_path("strchrnul_in_range.c")), "strchrnul_in_range.c");
  Elaboration e = elaborate(lemmaforge::check(u));
  EXPECT_EQ(pretty_print(e.unit), lftest::slurp(lftest::data_path("strchrnul_in_range.elaborated.c")));
}

TEST(Names, SchemeAndStability) {
  GeneratedNames n = generated_names("dir/a.c", "f");
  EXPECT_TRUE(std::regex_match(n.hash, std::regex("[0-9a-f]{8}")));
  EXPECT_EQ(n.block, "__lf_f_" + n.hash);
  EXPECT_EQ(n.predicate, "__lf_ok_f_" + n.hash);
  EXPECT_EQ(n.axiom, "__lf_ax_f_" + n.hash);
  EXPECT_EQ(generated_names("./dir//a.c", "f").hash, n.hash);
  EXPECT_NE(generated_names("other/a.c", "f").hash, n.hash);
  EXPECT_NE(generated_names("dir/a.c", "g").hash, n.hash);
}

TEST(Names, SameLemmaInTwoFiles) {
  Elaboration a = elaborated(lftest::kStrchrnulInRange, "one/lemmas.c");
  Elaboration b = elaborated(lftest::kStrchrnulInRange, "two/lemmas.c");
  EXPECT_NE(a.names.at("strchrnul_in_range").block, b.names.at("strchrnul_in_range").block);
  EXPECT_NE(a.names.at("strchrnul_in_range").axiom, b.names.at("strchrnul_in_range").axiom);
}

TEST(ImportBlock, Shape) {
  TypedUnit t = checked(lftest::kStrchrnulInRange, "x.c");
  const FunctionInfo& fn = *t.function("strchrnul_in_range");
  GeneratedAxiom ax = generate_lemma_axiom(t, fn);
  ImportBlock b = synthesize_import_block("x.c", fn, ax);
  GeneratedNames n = generated_names("x.c", "strchrnul_in_range");
  EXPECT_EQ(b.predicate, n.predicate);
  ASSERT_EQ(b.block->kind, DeclKind::AxiomaticBlock);
  EXPECT_EQ(b.block->name, n.block);
  ASSERT_EQ(b.block->members.size(), 2u);
  EXPECT_EQ(b.block->members[0]->kind, DeclKind::Predicate);
  EXPECT_EQ(b.block->members[0]->name, n.predicate);
  EXPECT_TRUE(b.block->members[0]->params.empty());
  EXPECT_EQ(structural_dump(b.block->members[0]->definition), structural_dump(parse_expression("\\true")));
  EXPECT_EQ(b.block->members[1]->kind, DeclKind::Axiom);
  EXPECT_EQ(b.block->members[1]->name, n.axiom);
  EXPECT_EQ(structural_dump(b.block->members[1]->definition), structural_dump(ax.statement));
}

TEST(Clauses, AddedToLemma) {
  TypedUnit t = checked(lftest::kStrchrnulInRange);
  Contract c = enforce_lemma_clauses(*t.function("strchrnul_in_range"));
  EXPECT_EQ(c.assigns, ClauseSet::Nothing);
  EXPECT_EQ(c.allocates, ClauseSet::Nothing);
  ASSERT_TRUE(c.terminates);
  EXPECT_EQ(structural_dump(c.terminates), structural_dump(parse_expression("\\true")));
  EXPECT_EQ(c.requires_.size(), 1u);
  EXPECT_EQ(c.ensures.size(), 1u);
}

TEST(Clauses, Idempotent) {
  TypedUnit t = checked(lemma("l", "int n",
                              "  @  @ ensures \\true;\n  @  @ assigns \\nothing;\n  @  @ allocates \\nothing;\n"
                              "  @  @ terminates \\true;\n",
                              " { }"));
  const FunctionInfo& fn = *t.function("l");
  Contract c = enforce_lemma_clauses(fn);
  SourceUnit a, b;
  auto d1 = clone(fn.definition), d2 = clone(fn.definition);
  d2->contract = c;
  a.decls = {d1};
  b.decls = {d2};
  EXPECT_TRUE(structurally_equal(a, b));
}

TEST(Clauses, AssignsGlobalConflicts) {
  EXPECT_EQ(diag_of([] { elaborate(lemmaforge::check(parse_file(lftest::data_path("conflicting_assigns.c")))); }),
            DiagKind::ConflictingClause);
}

TEST(Injection, LemmaThenCode) {
  Elaboration e = elaborated(trivial_lemma("L1") + "int f(int x) { return x; }\n");
  EXPECT_EQ(imports_of(e, "f"), std::set<std::string>{e.names.at("L1").predicate});
  EXPECT_TRUE(imports_of(e, "L1").empty());
}

TEST(Injection, CodeThenLemma) {
  std::string text = "int f(int x) { return x; }\n" + trivial_lemma("L1");
  Elaboration e = elaborated(text);
  EXPECT_TRUE(imports_of(e, "f").empty());
  EXPECT_TRUE(e.typed.function("f")->contract().empty());
}

TEST(Injection, MutualLemmasThenCode) {
  std::string text = trivial_lemma("L1", " { if (n > 0) L2(n - 1); }") +
                     trivial_lemma("L2", " { if (n > 0) L1(n - 1); }") + "int f(int x) { return x; }\n";
  Elaboration e = elaborated(text);
  EXPECT_TRUE(imports_of(e, "L1").empty());
  EXPECT_TRUE(imports_of(e, "L2").empty());
  EXPECT_EQ(imports_of(e, "f"),
            (std::set<std::string>{e.names.at("L1").predicate, e.names.at("L2").predicate}));
}

TEST(Injection, LaterLemmaSeesEarlier) {
  Elaboration e = elaborated(trivial_lemma("L1") + trivial_lemma("L2"));
  EXPECT_TRUE(imports_of(e, "L1").empty());
  EXPECT_EQ(imports_of(e, "L2"), std::set<std::string>{e.names.at("L1").predicate});
}

TEST(Injection, NoLemmasIsNoOp) {
  const char* text = "int g;\n//@ ensures \\result == x;\nint f(int x) { g = x; return x; }\n";
  SourceUnit u = parse_program(text);
  Elaboration e = elaborate(lemmaforge::check(u));
  EXPECT_TRUE(structurally_equal(e.unit, u));
}

TEST(Ordering, ChainDefinedBottomUp) {
  std::string text = trivial_lemma("C") + trivial_lemma("B", " { C(n); }") + trivial_lemma("A", " { B(n); }");
  TypedUnit t = checked(text);
  OrderingGraph g = order_lemma_components(t);
  ASSERT_EQ(g.components.size(), 3u);
  EXPECT_EQ(g.components[0].members, std::vector<std::string>{"C"});
  EXPECT_EQ(g.components[1].members, std::vector<std::string>{"B"});
  EXPECT_EQ(g.components[2].members, std::vector<std::string>{"A"});
  std::set<std::pair<std::string, std::string>> edges(g.edges.begin(), g.edges.end());
  EXPECT_EQ(edges, (std::set<std::pair<std::string, std::string>>{{"A", "B"}, {"B", "C"}}));
}

TEST(Ordering, MutualAnchoredAtFirstDefinition) {
  std::string text = lemma("A", "int n", "", ";") +
                     trivial_lemma("B", " { if (n > 0) A(n - 1); }") +
                     trivial_lemma("A", " { if (n > 0) B(n - 1); }") + "int f(int x) { return x; }\n";
  TypedUnit t = checked(text);
  OrderingGraph g = order_lemma_components(t);
  ASSERT_EQ(g.components.size(), 1u);
  EXPECT_EQ(g.components[0].members, (std::vector<std::string>{"B", "A"}));
  EXPECT_EQ(g.components[0].anchor, function_anchor(t, *t.function("B")));
  EXPECT_EQ(g.component_of.at("A"), g.component_of.at("B"));
  EXPECT_LT(function_anchor(t, *t.function("B")), function_anchor(t, *t.function("A")));

  Elaboration e = elaborate(t);
  EXPECT_TRUE(imports_of(e, "A").empty());
  EXPECT_TRUE(imports_of(e, "B").empty());
  EXPECT_EQ(imports_of(e, "f").size(), 2u);
}

TEST(Ordering, ForwardLemmaUse) {
  try {
    order_lemma_components(lemmaforge::check(parse_file(lftest::data_path("forward_lemma_use.c"))));
    FAIL() << "expected ForwardLemmaUse";
  } catch (const DiagnosticError& err) {
    EXPECT_EQ(err.kind(), DiagKind::ForwardLemmaUse);
    EXPECT_FALSE(err.diagnostics()[0].related.empty());
  }
  EXPECT_NO_THROW(elaborate(lemmaforge::check(parse_file(lftest::data_path("lemma_use_after.c")))));
}

TEST(Ordering, AnchorsIncreaseInCorpus) {
  for (const char* file : kCorpus) {
    TypedUnit t = lemmaforge::check(parse_file(lftest::corpus_path(file)));
    OrderingGraph g = order_lemma_components(t);
    for (size_t i = 1; i < g.components.size(); ++i) {
      EXPECT_LT(g.components[i - 1].anchor, g.components[i].anchor) << file;
    }
    // Topological: every edge goes to the same or an earlier component.
    for (auto& [from, to] : g.edges) EXPECT_GE(g.component_of.at(from), g.component_of.at(to)) << file;
  }
}

TEST(Elaborate, RejectsElaboratedInput) {
  Elaboration e = elaborated(lftest::kStrchrnulInRange);
  SourceUnit again = parse_program(pretty_print(e.unit), "t.c");
  TypedUnit t = lemmaforge::check(again, CheckOptions{true});
  EXPECT_EQ(diag_of([&] { elaborate(t); }), DiagKind::AlreadyElaborated);
  EXPECT_EQ(diag_of([&] { driver::elaborate_source(again); }), DiagKind::AlreadyElaborated);
}

TEST(Elaborate, Deterministic) {
  for (const char* file : kCorpus) {
    std::string a = pretty_print(driver::elaborate_file(lftest::corpus_path(file)).unit);
    std::string b = pretty_print(driver::elaborate_file(lftest::corpus_path(file)).unit);
    EXPECT_EQ(a, b) << file;
  }
}

TEST(Closure, SelfExclusionAndLaterAvailability) {
  for (const char* file : kCorpus) {
    Elaboration e = driver::elaborate_file(lftest::corpus_path(file));
    for (auto& [lname, names] : e.names) {
      // Component anchor in the elaborated unit's ordinals.
      const auto& first = e.order.components[e.order.component_of.at(lname)].members.front();
      size_t anchor = function_anchor(e.typed, *e.typed.function(first));
      EXPECT_FALSE(contains_decl(compute_import_closure(e.typed, lname), names.block)) << file << " " << lname;
      for (auto& [fname, f] : e.typed.functions) {
        bool peer = e.order.component_of.count(fname) &&
                    e.order.component_of.at(fname) == e.order.component_of.at(lname);
        if (peer || function_anchor(e.typed, f) <= anchor) continue;
        EXPECT_TRUE(contains_decl(compute_import_closure(e.typed, fname), names.block))
            << file << " " << fname << " after " << lname;
      }
    }
  }
}

TEST(Closure, Examples) {
  Elaboration e = elaborated(lftest::kStrchrnulInRange +
                             std::string("//@ ensures \\result == x;\nint id(int x) { return x; }\n"
                                         "//@ requires valid_str(s);\nint g(char *s);\n"));
  // The lemma's block comes with the definitions its axiom mentions.
  std::vector<std::string> of_id;
  for (auto& d : compute_import_closure(e.typed, "id")) of_id.push_back(d->name);
  EXPECT_EQ(of_id, (std::vector<std::string>{"ValidStr", "StrLen", "StrChrNul",
                                             e.names.at("strchrnul_in_range").block}));

  auto of_lemma = compute_import_closure(e.typed, "strchrnul_in_range");
  std::set<std::string> names;
  for (auto& d : of_lemma) names.insert(d->name);
  EXPECT_EQ(names, (std::set<std::string>{"ValidStr", "StrLen", "StrChrNul"}));

  Elaboration plain = elaborated("int id(int x) { return x; }\n");
  EXPECT_TRUE(compute_import_closure(plain.typed, "id").empty());
}

namespace {

// Kleene iteration over top-level declarations, written independently of
// the library's worklist.
std::set<std::string> naive_closure(const TypedUnit& t, const std::set<std::string>& seeds) {
  auto all = t.all_decls();
  auto defines = [](const Decl& d) {
    std::set<std::string> out;
    if (d.kind == DeclKind::AxiomaticBlock) {
      for (auto& m : d.members) {
        if (m->kind != DeclKind::Axiom) out.insert(m->name);
      }
    } else if (d.kind == DeclKind::LogicFunction || d.kind == DeclKind::Predicate) {
      out.insert(d.name);
    }
    return out;
  };
  auto uses = [](const Decl& d) {
    std::set<std::string> out;
    std::vector<DeclPtr> parts = d.kind == DeclKind::AxiomaticBlock ? d.members : std::vector<DeclPtr>{};
    if (d.definition) collect_logic_symbols(d.definition, out);
    for (auto& m : parts) {
      if (m->definition) collect_logic_symbols(m->definition, out);
    }
    return out;
  };
  std::set<std::string> symbols = seeds, taken;
  for (;;) {
    std::set<std::string> next = seeds, next_taken;
    for (auto& d : all) {
      auto def = defines(*d);
      if (std::none_of(def.begin(), def.end(), [&](const std::string& s) { return symbols.count(s) > 0; })) continue;
      next_taken.insert(d->name);
      auto u = uses(*d);
      next.insert(u.begin(), u.end());
      next.insert(def.begin(), def.end());
    }
    next.insert(symbols.begin(), symbols.end());
    if (next == symbols && next_taken == taken) return taken;
    symbols = next;
    taken = next_taken;
  }
}

}  // namespace

TEST(Closure, MatchesNaiveFixpoint) {
  std::mt19937 rng(11);
  for (const char* file : kCorpus) {
    Elaboration e = driver::elaborate_file(lftest::corpus_path(file));
    std::vector<std::string> universe;
    for (auto& [name, sym] : e.typed.logic) universe.push_back(name);
    for (int round = 0; round < 25; ++round) {
      std::set<std::string> seeds;
      int k = static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) seeds.insert(universe[rng() % universe.size()]);
      std::set<std::string> got;
      for (auto& d : import_closure_of(e.typed, seeds)) got.insert(d->name);
      EXPECT_EQ(got, naive_closure(e.typed, seeds)) << file;
    }
  }
}
