#include <gtest/gtest.h>

#include "lemmaforge/oracle/oracle.hpp"
#include "support.hpp"

using namespace lemmaforge;
using namespace lemmaforge::oracle;
using lftest::checked;

namespace {

// A unit defining `probe(params) = expr`, so that `expr` gets typed.
struct Probe {
  TypedUnit unit;
  ExprPtr term;

  Probe(const std::string& result, const std::string& params, const std::string& expr)
      : unit(checked("/*@ logic " + result + " probe(" + params + ") = " + expr + "; */\n")),
        term(unit.logic.at("probe").decl->definition) {}

  Value at(const ConcreteState& st, std::map<std::string, Value> vars) const {
    LogicFrame f;
    f.state = &st;
    f.vars = std::move(vars);
    return eval_logic(unit, term, f);
  }
};

std::vector<int> bytes(const std::string& s) { return std::vector<int>(s.begin(), s.end()); }

// Every byte string of length 1..max over {0, a, b, c}.
std::vector<std::vector<int>> small_blocks(int max) {
  std::vector<std::vector<int>> out, layer{{}};
  const int alphabet[] = {0, 'a', 'b', 'c'};
  for (int len = 1; len <= max; ++len) {
    std::vector<std::vector<int>> next;
    for (auto& prefix : layer) {
      for (int ch : alphabet) {
        auto b = prefix;
        b.push_back(ch);
        next.push_back(b);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::optional<int> ref_strlen(const std::vector<int>& b) {
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) return static_cast<int>(i);
  }
  return std::nullopt;
}

int ref_strchrnul(const std::vector<int>& b, int c) {
  size_t i = 0;
  while (b[i] != c && b[i] != 0) ++i;
  return static_cast<int>(i);
}

}  // namespace

TEST(Eval, StrchrnulFirstCharacter) {
  Probe p("char *", "char *s", "strchrnul(s, 'b')");
  ConcreteState st;
  Value s = st.add_block({'b', 0});
  EXPECT_EQ(p.at(st, {{"s", s}}), s);
}

TEST(Eval, StrchrnulStopsAtTerminator) {
  Probe p("char *", "char *s", "strchrnul(s, 'b')");
  ConcreteState st;
  Value s = st.add_block({'a', 0});
  EXPECT_EQ(p.at(st, {{"s", s}}), Value::pointer(s.block, 1));
}

TEST(Eval, Strlen) {
  Probe p("integer", "char *s", "strlen(s)");
  ConcreteState st;
  Value s = st.add_block(bytes(std::string("abc") + '\0'));
  EXPECT_EQ(p.at(st, {{"s", s}}), Value::integer(3));
}

TEST(Eval, InvalidReadTraps) {
  Probe p("integer", "char *s", "strlen(s)");
  ConcreteState st;
  Value s = st.add_block({'a', 'b'});
  try {
    p.at(st, {{"s", s}});
    FAIL() << "expected a trap";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::Trap);
  }
}

// The prelude definitions against plain C++ loops, on every small block.
TEST(Eval, DefinitionsMatchReference) {
  Probe valid("boolean", "char *s", "valid_str(s)");
  Probe len("integer", "char *s", "strlen(s)");
  Probe nul("char *", "char *s, char c", "strchrnul(s, c)");
  Probe range("boolean", "char *s, char c", "valid_str(s) ==> s <= strchrnul(s, c) <= s + strlen(s)");
  for (auto& b : small_blocks(4)) {
    ConcreteState st;
    Value s = st.add_block(b);
    auto n = ref_strlen(b);
    EXPECT_EQ(valid.at(st, {{"s", s}}).truthy(), n.has_value());
    if (!n) continue;
    EXPECT_EQ(len.at(st, {{"s", s}}), Value::integer(*n));
    for (int c : {0, int('a'), int('b'), int('c')}) {
      Value ch = Value::integer(c);
      EXPECT_EQ(nul.at(st, {{"s", s}, {"c", ch}}), Value::pointer(s.block, ref_strchrnul(b, c)));
      EXPECT_TRUE(range.at(st, {{"s", s}, {"c", ch}}).truthy());
    }
  }
}

TEST(Exec, StrchrnulInRangeTerminates) {
  TypedUnit t = checked(lftest::kStrchrnulInRange);
  ConcreteState st;
  Value s = st.add_block({'a', 'b', 0});
  ExecResult r = exec(t, "strchrnul_in_range", {s, Value::integer('b')}, st);
  EXPECT_FALSE(r.result.has_value());
  EXPECT_EQ(r.state.heap, st.heap);
}

TEST(Exec, InvalidDereferenceTraps) {
  TypedUnit t = checked("int f(char *p) { return *p; }");
  ConcreteState st;
  try {
    exec(t, "f", {Value::null()}, st);
    FAIL() << "expected a trap";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::Trap);
  }
}

TEST(Exec, Strlen) {
  TypedUnit t = lemmaforge::check(parse_file(lftest::corpus_path("strlen.c")));
  ConcreteState st;
  Value s = st.add_block({'a', 'b', 'c', 0});
  ExecResult r = exec(t, "strlen", {s}, st);
  ASSERT_TRUE(r.result);
  EXPECT_EQ(*r.result, Value::integer(3));
}

TEST(Exec, GhostCodeLeavesRealStateAlone) {
  const char* with_ghost = R"(/*@ ghost int gc; */
int g;
void f(char *p) {
  *p = 'x';
  //@ ghost gc = 1;
  g = 2;
  //@ ghost gc = gc + 1;
}
)";
  const char* without = R"(/*@ ghost int gc; */
int g;
void f(char *p) {
  *p = 'x';
  g = 2;
}
)";
  ConcreteState st;
  Value p = st.add_block({'a', 0});
  st.vars["g"] = Value::integer(0);
  st.vars["gc"] = Value::integer(0);
  ExecResult a = exec(checked(with_ghost), "f", {p}, st);
  ExecResult b = exec(checked(without), "f", {p}, st);
  EXPECT_EQ(a.state.heap, b.state.heap);
  EXPECT_EQ(a.state.alloc, b.state.alloc);
  EXPECT_EQ(a.state.vars.at("g"), b.state.vars.at("g"));
  EXPECT_EQ(a.state.vars.at("gc"), Value::integer(2));
}

TEST(Falsify, StrchrSkippedHolds) {
  TypedUnit t = lemmaforge::check(parse_file(lftest::corpus_path("strchr.c")));
  SearchSpace space;
  space.max_len = 3;
  space.alphabet = {'a', 'b'};
  EXPECT_FALSE(falsify(t, driver::falsify_target(t, "strchr_skipped"), space));
}

TEST(Falsify, MutatedBoundGivesEmptyString) {
  TypedUnit t = lemmaforge::check(parse_file(lftest::data_path("mutated_strchrnul.c")));
  auto cex = falsify(t, driver::falsify_target(t, "strchrnul_in_range"), SearchSpace{});
  ASSERT_TRUE(cex);
  ASSERT_EQ(cex->bindings[0].first, "s");
  Value s = cex->bindings[0].second;
  EXPECT_EQ(s.num, 0);
  EXPECT_EQ(cex->state.block_length(s.block), 1);
  EXPECT_EQ(cex->state.heap.at({s.block, 0}), 0);
}

TEST(Falsify, TrueHasNoCounterexample) {
  TypedUnit t = checked("/*@ lemma triv: \\true; */\n");
  EXPECT_FALSE(falsify(t, driver::falsify_target(t, "triv"), SearchSpace{}));
}

TEST(Falsify, StrlenNonnegAxiom) {
  TypedUnit t = checked("");
  EXPECT_FALSE(falsify(t, driver::falsify_target(t, "strlen_nonneg"), SearchSpace{}));
}

TEST(Falsify, CorpusLemmasSurvive) {
  for (const char* file : {"strchrnul.c", "strlen.c"}) {
    TypedUnit t = lemmaforge::check(parse_file(lftest::corpus_path(file)));
    for (auto& [name, fn] : t.functions) {
      if (!fn.is_lemma()) continue;
      SearchSpace space;
      space.max_len = 3;
      EXPECT_FALSE(falsify(t, driver::falsify_target(t, name), space)) << file << " " << name;
    }
  }
}

// A returned counterexample makes the hypothesis true and the conclusion
// false when evaluated on its own.
TEST(Falsify, CounterexamplesReplay) {
  const char* statements[] = {
      "\\forall char *s, char c; valid_str(s) ==> s <= strchrnul(s, c) < s + strlen(s)",
      "\\forall char *s; valid_str(s) ==> strlen(s) < 2",
      "\\forall char *s, char c; valid_str(s) ==> strchr(s, c) == \\null",
      "\\forall char *s, char *t; valid_str(s) && valid_str(t) ==> strspn(s, t) == 0",
      "\\forall integer i; 0 <= i ==> i * i < 9",
  };
  int n = 0;
  for (const char* stmt : statements) {
    std::string name = "l" + std::to_string(n++);
    TypedUnit t = checked("/*@ lemma " + name + ": " + stmt + "; */\n");
    ExprPtr f = t.logic.at(name).decl->definition;
    auto cex = falsify(t, f, SearchSpace{});
    ASSERT_TRUE(cex) << stmt;
    ExprPtr body = f;
    while (body->kind == ExprKind::Quant) body = body->args[0];
    ASSERT_EQ(body->kind, ExprKind::Binary);
    ASSERT_EQ(body->binop, BinOp::Implies);
    LogicFrame frame;
    frame.state = &cex->state;
    for (auto& [name, v] : cex->bindings) frame.vars[name] = v;
    EXPECT_TRUE(eval_logic(t, body->args[0], frame).truthy()) << stmt << "\n" << cex->render();
    EXPECT_FALSE(eval_logic(t, body->args[1], frame).truthy()) << stmt << "\n" << cex->render();
  }
}

TEST(Crosscheck, StrchrnulInRange) {
  // Elaborated, so that the recursive call carries assigns \nothing.
  TypedUnit t = lftest::elaborated(lftest::kStrchrnulInRange).typed;
  SearchSpace space;
  space.max_len = 2;
  Agreement a = crosscheck_wp(t, "strchrnul_in_range", space);
  EXPECT_GT(a.states, 0u);
  EXPECT_TRUE(a.disagreements.empty()) << a.disagreements.front();
}

TEST(Crosscheck, EnsuresFalse) {
  TypedUnit t = checked("/*@ requires x > 0;\n  @ ensures \\false;\n  @*/\nint f(int x, int y) { return x; }\n");
  SearchSpace space;
  space.int_lo = 0;
  space.int_hi = 3;
  Agreement a = crosscheck_wp(t, "f", space);
  EXPECT_GT(a.states, 0u);
  EXPECT_LT(a.holds, a.states);
  EXPECT_TRUE(a.disagreements.empty());
}

TEST(Crosscheck, RandomFunctions) {
  SearchSpace space;
  space.int_lo = 0;
  space.int_hi = 3;
  for (unsigned seed = 0; seed < 100; ++seed) {
    std::string text = random_function(seed);
    TypedUnit t = checked(text);
    Agreement a = crosscheck_wp(t, "f", space);
    EXPECT_TRUE(a.disagreements.empty()) << text << a.disagreements.front();
  }
}

TEST(Crosscheck, RandomFunctionsAreDeterministic) {
  EXPECT_EQ(random_function(42), random_function(42));
  EXPECT_NE(random_function(1), random_function(2));
}
