#include <gtest/gtest.h>

#include "lemmaforge/vcgen/vcgen.hpp"
#include "support.hpp"

using namespace lemmaforge;
using lftest::diag_of;
using lftest::elaborated;

namespace {

std::vector<VC> vcs_of(const std::string& text, const std::string& fn, VcOptions options = {}) {
  Elaboration e = elaborated(text);
  return vcs_for_function(e.typed, fn, options);
}

std::vector<std::string> names(const std::vector<VC>& vcs) {
  std::vector<std::string> out;
  for (auto& v : vcs) out.push_back(v.name);
  return out;
}

size_t count_kind(const std::vector<VC>& vcs, ir::VcKind k) {
  return std::count_if(vcs.begin(), vcs.end(), [&](const VC& v) { return v.kind == k; });
}

const VC& find(const std::vector<VC>& vcs, const std::string& name) {
  for (auto& v : vcs) {
    if (v.name == name) return v;
  }
  throw std::runtime_error("no VC " + name);
}

}  // namespace

TEST(Vcgen, StrchrnulInRangeObligations) {
  auto vcs = vcs_of(lftest::kStrchrnulInRange, "strchrnul_in_range");
  EXPECT_EQ(count_kind(vcs, ir::VcKind::RecDecrease), 1u);
  EXPECT_EQ(count_kind(vcs, ir::VcKind::CallPre), 1u);
  EXPECT_EQ(count_kind(vcs, ir::VcKind::Terminates), 1u);
  EXPECT_GE(count_kind(vcs, ir::VcKind::Post), 2u);
  EXPECT_GE(count_kind(vcs, ir::VcKind::Assigns), 1u);
  EXPECT_EQ(count_kind(vcs, ir::VcKind::Safety), 2u);  // the two reads of *s

  // strlen(s + 1) < strlen(s) && strlen(s) >= 0 under *s != 0, *s != c.
  const VC& rec = find(vcs, "strchrnul_in_range.RecDecrease.0");
  EXPECT_EQ(ir::to_string(rec.goal),
            "(and (<= 0 (strlen mem.heap.pre mem.alloc s.pre)) "
            "(< (strlen mem.heap.pre mem.alloc (mk-ptr (blk s.pre) (+ (off s.pre) 1))) "
            "(strlen mem.heap.pre mem.alloc s.pre)))");
  std::set<std::string> hyps;
  for (auto& h : rec.hypotheses) hyps.insert(ir::to_string(h));
  EXPECT_TRUE(hyps.count("(valid_str mem.heap.pre mem.alloc s.pre)"));
  EXPECT_TRUE(hyps.count("(not (= (select mem.heap.pre s.pre) 0))"));
  EXPECT_TRUE(hyps.count("(not (= (select mem.heap.pre s.pre) c.pre))"));

  std::vector<std::string> imported;
  for (auto& d : rec.imports) imported.push_back(d->name);
  EXPECT_EQ(imported, (std::vector<std::string>{"ValidStr", "StrLen", "StrChrNul"}));
}

TEST(Vcgen, NamesAreCanonical) {
  auto vcs = vcs_of(lftest::kStrchrnulInRange, "strchrnul_in_range");
  std::map<std::string, int> next;
  for (auto& v : vcs) {
    std::string kind = ir::to_string(v.kind);
    EXPECT_EQ(v.name, "strchrnul_in_range." + kind + "." + std::to_string(next[kind]++));
  }
  for (size_t i = 1; i < vcs.size(); ++i) {
    auto a = vcs[i - 1].pos, b = vcs[i].pos;
    EXPECT_TRUE(a.line < b.line || (a.line == b.line && a.column <= b.column));
  }
}

TEST(Vcgen, NamesStableUnderUnrelatedEdits) {
  std::string f = "//@ requires x < 100; ensures \\result == x + 1;\nint f(int x) { return x + 1; }\n";
  std::string g = "int g(int y) { if (y > 0) return y; return 0; }\n";
  EXPECT_EQ(names(vcs_of(f, "f")), names(vcs_of(g + f, "f")));
  EXPECT_EQ(names(vcs_of(f, "f")), names(vcs_of(f + g, "f")));
}

TEST(Vcgen, EmptyLemmaBody) {
  auto vcs = vcs_of("/*@ ghost\n  @ /@ lemma\n  @  @ ensures \\true;\n  @  @/\n  @ void l(void) { }\n  @*/\n", "l");
  ASSERT_EQ(count_kind(vcs, ir::VcKind::Post), 1u);
  EXPECT_EQ(ir::to_string(find(vcs, "l.Post.0").goal), "true");
  EXPECT_EQ(count_kind(vcs, ir::VcKind::Safety), 0u);
}

TEST(Vcgen, RangeGeneralizationLoop) {
  Elaboration e = driver::elaborate_file(lftest::corpus_path("range_generalization.c"));
  auto vcs = vcs_for_function(e.typed, "nonzero_range");
  for (auto k : {ir::VcKind::LoopInvInit, ir::VcKind::LoopInvPreserve, ir::VcKind::VariantDecrease,
                 ir::VcKind::VariantNonneg, ir::VcKind::CallPre}) {
    EXPECT_GE(count_kind(vcs, k), 1u) << ir::to_string(k);
  }
  EXPECT_EQ(count_kind(vcs, ir::VcKind::LoopInvInit), 2u);
}

TEST(Vcgen, Dereference) {
  auto vcs = vcs_of("int f(char *p) { return *p; }", "f");
  ASSERT_EQ(count_kind(vcs, ir::VcKind::Safety), 1u);
  EXPECT_EQ(ir::to_string(find(vcs, "f.Safety.0").goal),
            "(and (<= 0 (off p.pre)) (< (off p.pre) (select mem.alloc (blk p.pre))))");
}

TEST(Vcgen, ConstantHasNoSafety) {
  EXPECT_EQ(count_kind(vcs_of("int f(void) { return 0; }", "f"), ir::VcKind::Safety), 0u);
}

TEST(Vcgen, OverflowFlag) {
  const char* text = "int f(int x) { return x + 1; }";
  EXPECT_EQ(count_kind(vcs_of(text, "f"), ir::VcKind::Safety), 1u);
  EXPECT_EQ(count_kind(vcs_of(text, "f", VcOptions{false}), ir::VcKind::Safety), 0u);
}

TEST(Vcgen, LoopWithoutInvariant) {
  const char* text = "int f(int x) { while (x > 0) x = x - 1; return x; }";
  EXPECT_EQ(diag_of([&] { vcs_of(text, "f"); }), DiagKind::MissingLoopInvariant);
}

TEST(Vcgen, LoopWithoutVariant) {
  const char* text = "int f(int x) {\n  //@ loop invariant x >= 0;\n  while (x > 0) x = x - 1;\n  return x;\n}";
  EXPECT_EQ(diag_of([&] { vcs_of(text, "f"); }), DiagKind::MissingLoopVariant);
}

TEST(Vcgen, DecreasesZero) {
  Elaboration e = driver::elaborate_file(lftest::data_path("decreases_zero.c"));
  auto vcs = vcs_for_function(e.typed, "strchrnul_in_range");
  EXPECT_EQ(ir::to_string(find(vcs, "strchrnul_in_range.RecDecrease.0").goal), "false");  // 0 <= 0 && 0 < 0
}

TEST(Vcgen, UnitOrder) {
  Elaboration e = driver::elaborate_file(lftest::corpus_path("strchrnul.c"));
  auto all = generate_vcs(e.typed);
  std::vector<std::string> got;
  for (auto& u : all) got.push_back(u.name);
  EXPECT_EQ(got, (std::vector<std::string>{"strchrnul_in_range", "strchrnul_stops", "strchrnul_valid",
                                           "strchrnul_strchr", "strchrnul_skipped", "strchrnul"}));
}

TEST(Vcgen, ObligationSplitsIntoVcs) {
  Elaboration e = elaborated(lftest::kStrchrnulInRange);
  auto whole = function_obligation(e.typed, "strchrnul_in_range");
  EXPECT_TRUE(ir::contains_label(whole));
  EXPECT_EQ(names(split_obligation("strchrnul_in_range", whole)),
            names(vcs_for_function(e.typed, "strchrnul_in_range")));
}
