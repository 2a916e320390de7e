#include <gtest/gtest.h>

#include <filesystem>

#include <json.hpp>

#include "support.hpp"

using namespace lemmaforge;
using namespace lemmaforge::driver;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("lemmaforge_driver_" + name + "_" + std::to_string(getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunConfig config(Mode m, std::vector<std::string> inputs) {
  RunConfig c;
  c.mode = m;
  c.inputs = std::move(inputs);
  return c;
}

}  // namespace

TEST(Run, CheckReportsLogicInCode) {
  auto dir = scratch("check");
  write(dir / "bad.c", "int f(char *s) { if (valid_str(s)) return 1; return 0; }\n");
  RunResult r = run(config(Mode::Check, {(dir / "bad.c").string()}));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("LogicInCode"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  fs::remove_all(dir);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run(config(Mode::Prove, {lftest::data_path("lemma_use_after.c")})).exit_code, 0);
  EXPECT_EQ(run(config(Mode::Prove, {lftest::data_path("mutated_strchrnul.c")})).exit_code, 1);
  EXPECT_EQ(run(config(Mode::Prove, {lftest::data_path("conflicting_assigns.c")})).exit_code, 2);
  EXPECT_EQ(run(config(Mode::Elaborate, {lftest::data_path("forward_lemma_use.c")})).exit_code, 2);
  EXPECT_EQ(run(config(Mode::Check, {lftest::data_path("missing.c")})).exit_code, 2);
}

TEST(Run, ElaborateWithoutLemmasIsIdentity) {
  auto dir = scratch("identity");
  const char* text = "int g;\n//@ requires x >= 0; ensures \\result == x;\nint f(int x) { g = 1; return x; }\n";
  write(dir / "plain.c", text);
  RunConfig c = config(Mode::Elaborate, {(dir / "plain.c").string()});
  c.emit_elaborated = (dir / "out").string();
  ASSERT_EQ(run(c).exit_code, 0);
  SourceUnit back = parse_file((dir / "out" / "plain.c").string());
  EXPECT_TRUE(structurally_equal(back, parse_program(text)));
  fs::remove_all(dir);
}

TEST(Run, ProveEmbedsVcgenSet) {
  std::string input = lftest::corpus_path("strchrnul.c");
  RunConfig v = config(Mode::Vcgen, {input});
  v.report = "json";
  RunConfig p = config(Mode::Prove, {input});
  p.report = "json";
  auto vj = nlohmann::json::parse(run(v).out);
  RunResult pr = run(p);
  EXPECT_EQ(pr.exit_code, 0) << pr.out;
  auto pj = nlohmann::json::parse(pr.out);
  auto collect = [](const nlohmann::json& j) {
    std::vector<std::string> names;
    for (auto& f : j.at("functions")) {
      for (auto& vc : f.at("vcs")) names.push_back(vc.at("name"));
    }
    return names;
  };
  EXPECT_EQ(collect(vj), collect(pj));
  EXPECT_FALSE(collect(vj).empty());
}

TEST(Run, FalsifyMode) {
  RunConfig c = config(Mode::Falsify, {lftest::data_path("mutated_strchrnul.c")});
  c.falsify = "strchrnul_in_range";
  RunResult r = run(c);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("counterexample"), std::string::npos);
  c.inputs = {lftest::data_path("strchrnul_in_range.c")};
  EXPECT_EQ(run(c).exit_code, 0);
}

TEST(Corpus, ManifestMatchesSource) {
  Manifest m = load_manifest(lftest::corpus_path("manifest.json"));
  ASSERT_EQ(m.entries.size(), 8u);
  int ghost = 0, lemma = 0;
  for (auto& e : m.entries) {
    SourceCounts c = count_functions(parse_file((fs::path(m.dir) / e.file).string()));
    EXPECT_EQ(c.ghost, e.ghost) << e.function;
    EXPECT_EQ(c.lemma, e.lemma) << e.function;
    ghost += c.ghost;
    lemma += c.lemma;
  }
  EXPECT_EQ(ghost, 9);
  EXPECT_EQ(lemma, 31);
}

TEST(Corpus, EmptyManifest) {
  auto dir = scratch("empty");
  write(dir / "manifest.json", "{\"functions\": []}\n");
  Manifest m = load_manifest((dir / "manifest.json").string());
  auto rows = run_corpus(m, RunConfig{});
  EXPECT_TRUE(rows.empty());
  std::string report = corpus_report(rows);
  EXPECT_NE(report.find("Total"), std::string::npos);
  EXPECT_NE(report.find("0/0 proved"), std::string::npos) << report;
  auto j = nlohmann::json::parse(corpus_report_json(rows));
  EXPECT_EQ(j.at("total").at("ghost"), 0);
  EXPECT_EQ(j.at("total").at("lemma"), 0);
  fs::remove_all(dir);
}

TEST(Corpus, DeletedLemmaFlagsMismatch) {
  auto dir = scratch("deleted");
  std::string second = R"(/*@ ghost
  @ /@ lemma
  @  @ ensures \true;
  @  @/
  @ void other(void) { }
  @*/
)";
  write(dir / "manifest.json",
        R"({"functions": [{"function": "strchrnul", "file": "lemmas.c", "ghost": 0, "lemma": 2}]})");
  write(dir / "lemmas.c", std::string(lftest::kStrchrnulInRange) + second);
  Manifest m = load_manifest((dir / "manifest.json").string());
  auto rows = run_corpus(m, RunConfig{});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].mismatch());
  EXPECT_TRUE(rows[0].fully_proved());
  EXPECT_EQ(rows[0].status(), "Proved");

  write(dir / "lemmas.c", lftest::kStrchrnulInRange);
  rows = run_corpus(m, RunConfig{});
  EXPECT_TRUE(rows[0].mismatch());
  EXPECT_EQ(rows[0].counts.lemma, 1);
  EXPECT_NE(rows[0].status().find("count mismatch"), std::string::npos) << rows[0].status();
  EXPECT_NE(corpus_report(rows).find("count mismatch"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Modes, ParseNames) {
  for (Mode m : {Mode::Check, Mode::Elaborate, Mode::Vcgen, Mode::Prove, Mode::Falsify, Mode::Corpus}) {
    Mode back;
    ASSERT_TRUE(parse_mode(to_string(m), back));
    EXPECT_EQ(back, m);
  }
  Mode x;
  EXPECT_FALSE(parse_mode("frobnicate", x));
}
