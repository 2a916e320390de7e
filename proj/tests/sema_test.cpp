#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace lemmaforge;
using lftest::checked;
using lftest::diag_of;

TEST(Sema, StrchrnulInRangeChecks) {
  TypedUnit t = checked(lftest::kStrchrnulInRange);
  const FunctionInfo* f = t.function("strchrnul_in_range");
  ASSERT_NE(f, nullptr);
  EXPECT_TRUE(f->is_lemma());
  EXPECT_EQ(f->callees, std::vector<std::string>{"strchrnul_in_range"});
  EXPECT_TRUE(effects(t, "strchrnul_in_range").empty());
}

TEST(Sema, ExpressionsAreTyped) {
  TypedUnit t = checked(lftest::kStrchrnulInRange);
  const auto& d = t.function("strchrnul_in_range")->definition;
  EXPECT_EQ(d->contract.decreases->type.kind, TypeKind::Integer);
  EXPECT_EQ(d->contract.ensures[0]->type.kind, TypeKind::Boolean);
  EXPECT_EQ(d->contract.requires_[0]->args[0]->ref, RefKind::Param);
}

TEST(Sema, LogicSymbolInCode) {
  EXPECT_EQ(diag_of([] { checked("int f(char *s) { if (valid_str(s)) return 1; return 0; }"); }),
            DiagKind::LogicInCode);
}

TEST(Sema, CFunctionInAnnotation) {
  EXPECT_EQ(diag_of([] { checked("int g(int x) { return x; }\n//@ ensures \\result == g(x);\nint f(int x) { return x; }"); }),
            DiagKind::TypeError);
}

TEST(Sema, CodeAndLogicStrlenCoexist) {
  const char* text = R"(/*@ requires valid_str(s);
  @ ensures \result == strlen(s);
  @*/
size_t strlen(const char *s);
size_t twice(const char *s) { return strlen(s); }
)";
  EXPECT_NO_THROW(checked(text));
}

TEST(Sema, LemmaWritingGlobal) {
  EXPECT_EQ(diag_of([] { lemmaforge::check(parse_file(lftest::data_path("impure_lemma.c"))); }),
            DiagKind::GhostWritesReal);
}

TEST(Sema, CodeCallingGhost) {
  const char* text = R"(/*@ ghost
  @ int id(int x) { return x; }
  @*/
int f(int x) { return id(x); }
)";
  EXPECT_EQ(diag_of([&] { checked(text); }), DiagKind::GhostInCode);
}

TEST(Sema, GhostCallingCode) {
  const char* text = R"(int g(int x) { return x; }
/*@ ghost
  @ int h(int x) { return g(x); }
  @*/
)";
  EXPECT_EQ(diag_of([&] { checked(text); }), DiagKind::GhostWritesReal);
}

TEST(Sema, UnresolvedAndDuplicate) {
  EXPECT_EQ(diag_of([] { checked("int f(int x) { return y; }"); }), DiagKind::UnresolvedName);
  EXPECT_EQ(diag_of([] { checked("int f(int x) { int x = 1; return x; }"); }), DiagKind::DuplicateName);
  EXPECT_EQ(diag_of([] { checked("int __lf_x;"); }), DiagKind::ReservedName);
  EXPECT_FALSE(diag_of([] { lemmaforge::check(parse_program("int __lf_x;"), CheckOptions{true}); }));
}

TEST(Sema, RecursionNeedsDecreases) {
  EXPECT_EQ(diag_of([] { checked("int f(int x) { if (x > 0) return f(x - 1); return 0; }"); }),
            DiagKind::MissingDecreases);
}

TEST(Sema, LemmaWithoutBody) {
  const char* text = R"(/*@ ghost
  @ /@ lemma
  @  @ ensures \true;
  @  @/
  @ void l(int x);
  @*/
)";
  EXPECT_EQ(diag_of([&] { checked(text); }), DiagKind::LemmaWithoutBody);
}

TEST(Sema, InputUnitUntouched) {
  SourceUnit u = parse_program(lftest::kStrchrnulInRange);
  std::string before = structural_dump(u);
  lemmaforge::check(u);
  EXPECT_EQ(structural_dump(u), before);
}

namespace {

// Random call graph over n functions, each writing some globals and maybe
// the heap. The expected closure is computed by breadth-first search over
// the generated graph.
struct RandomProgram {
  int n = 0, globals = 0;
  std::vector<std::vector<int>> calls;
  std::vector<std::set<int>> writes;
  std::vector<bool> heap;

  std::string text() const {
    std::string s;
    for (int g = 0; g < globals; ++g) s += "int g" + std::to_string(g) + ";\n";
    for (int f = 0; f < n; ++f) {
      s += "//@ decreases 0;\nvoid f" + std::to_string(f) + "(char *p) {\n";
      for (int g : writes[f]) s += "  g" + std::to_string(g) + " = 1;\n";
      if (heap[f]) s += "  *p = 'a';\n";
      for (int c : calls[f]) s += "  f" + std::to_string(c) + "(p);\n";
      s += "}\n";
    }
    return s;
  }

  Effects expected(int f) const {
    Effects e;
    std::vector<bool> seen(n, false);
    std::vector<int> work{f};
    seen[f] = true;
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      for (int g : writes[x]) e.globals.insert("g" + std::to_string(g));
      e.heap = e.heap || heap[x];
      for (int c : calls[x]) {
        if (!seen[c]) {
          seen[c] = true;
          work.push_back(c);
        }
      }
    }
    return e;
  }
};

}  // namespace

TEST(Effects, ClosureMatchesReachability) {
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    RandomProgram p;
    p.n = 2 + static_cast<int>(rng() % 7);
    p.globals = static_cast<int>(rng() % 4);
    p.calls.resize(p.n);
    p.writes.resize(p.n);
    p.heap.resize(p.n);
    for (int f = 0; f < p.n; ++f) {
      for (int c = 0; c < p.n; ++c) {
        if (rng() % 4 == 0) p.calls[f].push_back(c);
      }
      for (int g = 0; g < p.globals; ++g) {
        if (rng() % 5 == 0) p.writes[f].insert(g);
      }
      p.heap[f] = rng() % 6 == 0;
    }
    TypedUnit t = checked(p.text());
    for (int f = 0; f < p.n; ++f) {
      EXPECT_EQ(effects(t, "f" + std::to_string(f)), p.expected(f)) << p.text() << "function f" << f;
    }
  }
}

TEST(Effects, BodilessFunctionUsesAssigns) {
  const char* text = R"(int g;
int h;
//@ assigns g;
void w(void);
void v(void);
void a(void) { w(); }
void b(void) { v(); }
)";
  TypedUnit t = checked(text);
  Effects ea = effects(t, "a");
  EXPECT_EQ(ea.globals, std::set<std::string>{"g"});
  EXPECT_FALSE(ea.heap);
  Effects eb = effects(t, "b");
  EXPECT_EQ(eb.globals, (std::set<std::string>{"g", "h"}));
  EXPECT_TRUE(eb.heap);
}

TEST(Effects, CorpusLemmasArePure) {
  for (const char* file : {"strchr.c", "strchrnul.c", "strlen.c", "strspn.c", "strnlen.c"}) {
    TypedUnit t = lemmaforge::check(parse_file(lftest::corpus_path(file)));
    for (auto& [name, fn] : t.functions) {
      if (fn.is_lemma()) EXPECT_TRUE(effects(t, name).empty()) << file << " " << name;
    }
  }
}
