#include <gtest/gtest.h>

#include <filesystem>

#include <json.hpp>

#include "lemmaforge/smt/encoder.hpp"
#include "lemmaforge/smt/report.hpp"
#include "support.hpp"

using namespace lemmaforge;
using lftest::elaborated;

namespace {

std::string script_for(ir::TermPtr goal, std::vector<ir::TermPtr> hyps = {}) {
  static TypedUnit empty = lftest::checked("");
  VC vc;
  vc.function = "t";
  vc.name = "t.Post.0";
  vc.goal = std::move(goal);
  vc.hypotheses = std::move(hyps);
  return smt::encode(empty, vc);
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lemmaforge_smt_" + name + "_" + std::to_string(getpid()));
  std::filesystem::remove_all(p);
  return p;
}

smt::Report prove(const std::string& text, const std::string& cache = "") {
  Elaboration e = elaborated(text);
  smt::DischargeOptions o;
  o.cache_dir = cache;
  return smt::discharge_all(e.typed, generate_vcs(e.typed), o);
}

}  // namespace

TEST(Solver, TrueIsProved) {
  auto v = smt::run_solver(script_for(ir::mk_implies(ir::bool_const(true), ir::bool_const(true))), {});
  EXPECT_EQ(v.status, smt::Status::Proved) << v.detail;
}

TEST(Solver, SatisfiableNegationIsRefutedWithModel) {
  auto x = ir::sym("x", ir::Sort::Int);
  auto v = smt::run_solver(script_for(ir::mk_le(ir::int_const(0), x)), {});
  EXPECT_EQ(v.status, smt::Status::Refuted);
  EXPECT_NE(v.model.find("x"), std::string::npos) << v.model;
}

TEST(Solver, Timeout) {
  smt::SolverConfig c;
  c.command = "sh -c \"sleep 5\"";
  c.timeout_s = 0.2;
  auto v = smt::run_solver(script_for(ir::bool_const(true)), c);
  EXPECT_EQ(v.status, smt::Status::Timeout);
  EXPECT_LT(v.time_s, 2.0);
}

TEST(Solver, MissingSolver) {
  smt::SolverConfig c;
  c.command = "lemmaforge-no-such-solver";
  auto v = smt::run_solver(script_for(ir::bool_const(true)), c);
  EXPECT_EQ(v.status, smt::Status::SolverError);
  EXPECT_FALSE(v.detail.empty());
}

TEST(Encode, ScriptShape) {
  std::string s = script_for(ir::bool_const(true));
  EXPECT_NE(s.find("(set-logic ALL)"), std::string::npos);
  EXPECT_NE(s.find("(assert (not true))"), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - 12), "(check-sat)\n");
}

TEST(Encode, LemmaContextExcludesOwnAxiom) {
  Elaboration e = elaborated(lftest::kStrchrnulInRange);
  const GeneratedNames& n = e.names.at("strchrnul_in_range");
  for (auto& vc : vcs_for_function(e.typed, "strchrnul_in_range")) {
    std::string s = smt::encode(e.typed, vc);
    EXPECT_EQ(s.find(n.axiom), std::string::npos) << vc.name;
    EXPECT_EQ(s.find(n.predicate), std::string::npos) << vc.name;
  }
}

TEST(Encode, LaterFunctionGetsAxiom) {
  Elaboration e = driver::elaborate_file(lftest::data_path("lemma_use_after.c"));
  const GeneratedNames& n = e.names.at("strchrnul_in_range");
  auto vcs = vcs_for_function(e.typed, "use_after");
  ASSERT_FALSE(vcs.empty());
  std::string s = smt::encode(e.typed, vcs[0]);
  EXPECT_NE(s.find(n.axiom), std::string::npos);
}

TEST(Discharge, StrchrnulInRangeProved) {
  smt::Report r = prove(lftest::kStrchrnulInRange);
  ASSERT_EQ(r.functions.size(), 1u);
  EXPECT_TRUE(r.all_proved()) << smt::render_text(r);
  EXPECT_EQ(r.vc_count(), 11u);
  auto j = nlohmann::json::parse(smt::render_json(r));
  EXPECT_TRUE(j.is_object());
}

TEST(Discharge, FramePreservedAcrossNothingCall) {
  const char* text = R"(int g;
//@ assigns \nothing;
void h(char *p);
/*@ requires g == 1 && \valid(p) && *p == 'x';
  @ ensures g == 1 && *p == 'x';
  @*/
void f(char *p) { h(p); }
)";
  EXPECT_TRUE(prove(text).all_proved());
}

TEST(Discharge, HavocWithoutAssigns) {
  const char* text = R"(int g;
void h(void);
/*@ requires g == 1;
  @ ensures g == 1;
  @*/
void f(void) { h(); }
)";
  smt::Report r = prove(text);
  EXPECT_FALSE(r.all_proved());
}

TEST(Discharge, MutatedBoundNotProved) {
  Elaboration e = driver::elaborate_file(lftest::data_path("mutated_strchrnul.c"));
  smt::Report r = smt::discharge_all(e.typed, generate_vcs(e.typed), {});
  EXPECT_FALSE(r.all_proved());
  size_t failing = 0;
  for (auto& vc : r.functions[0].vcs) failing += vc.verdict.status != smt::Status::Proved;
  EXPECT_GE(failing, 1u);
}

TEST(Discharge, CacheIsDeterministic) {
  auto dir = scratch("cache");
  smt::Report a = prove(lftest::kStrchrnulInRange, dir.string());
  size_t files = std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator());
  EXPECT_EQ(files, a.vc_count());
  smt::Report b = prove(lftest::kStrchrnulInRange, dir.string());
  EXPECT_EQ(smt::render_json(a), smt::render_json(b));
  EXPECT_EQ(smt::render_text(a), smt::render_text(b));
  std::filesystem::remove_all(dir);
}

TEST(Discharge, ParallelMatchesSerial) {
  Elaboration e = driver::elaborate_file(lftest::corpus_path("strchrnul.c"));
  auto vcs = generate_vcs(e.typed);
  smt::DischargeOptions serial, parallel;
  parallel.jobs = 4;
  smt::Report a = smt::discharge_all(e.typed, vcs, serial);
  smt::Report b = smt::discharge_all(e.typed, vcs, parallel);
  ASSERT_EQ(a.functions.size(), b.functions.size());
  for (size_t i = 0; i < a.functions.size(); ++i) {
    ASSERT_EQ(a.functions[i].vcs.size(), b.functions[i].vcs.size());
    for (size_t k = 0; k < a.functions[i].vcs.size(); ++k) {
      EXPECT_EQ(a.functions[i].vcs[k].name, b.functions[i].vcs[k].name);
      EXPECT_EQ(a.functions[i].vcs[k].verdict.status, b.functions[i].vcs[k].verdict.status);
    }
  }
}
