#pragma once

#include <string>
#include <vector>

#include "lemmaforge/elaborator/elaborator.hpp"
#include "lemmaforge/oracle/oracle.hpp"
#include "lemmaforge/smt/report.hpp"

namespace lemmaforge::driver {

enum class Mode { Check, Elaborate, Vcgen, Prove, Falsify, Corpus };

const char* to_string(Mode m);
bool parse_mode(const std::string& text, Mode& out);

struct RunConfig {
  Mode mode = Mode::Prove;
  std::vector<std::string> inputs;  // source files; the manifest in corpus mode
  std::string solver = "z3 -in -smt2";
  double timeout_s = 10;
  int jobs = 1;
  std::string emit_smt;
  std::string emit_vcs;
  std::string emit_elaborated;
  std::string cache_dir;
  std::string report = "text";  // text | json
  bool overflow = true;
  std::string falsify;  // lemma function, lemma or axiom name
  oracle::SearchSpace space;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 failed VC or counterexample, 2 diagnostics
  std::string out;    // report
  std::string err;    // rendered diagnostics
};

RunResult run(const RunConfig& cfg);

// parse -> (already elaborated?) -> check -> elaborate.
Elaboration elaborate_file(const std::string& path);
Elaboration elaborate_source(const SourceUnit& unit);

// The formula enumerated by `falsify NAME`: a lemma function's generated
// axiom, or the statement of a lemma/axiom.
ExprPtr falsify_target(const TypedUnit& unit, const std::string& name);

struct SourceCounts {
  int ghost = 0;  // ghost functions that are not lemma functions
  int lemma = 0;
};

SourceCounts count_functions(const SourceUnit& unit);

struct ManifestEntry {
  std::string function;
  std::string file;  // relative to the manifest
  int ghost = 0;
  int lemma = 0;
};

struct Manifest {
  std::string dir;
  std::vector<ManifestEntry> entries;
};

// {"functions":[{"function":…,"file":…,"ghost":…,"lemma":…}, …]}
Manifest load_manifest(const std::string& path);

struct CorpusRow {
  ManifestEntry expected;
  SourceCounts counts;
  bool counted = false;  // the file parsed
  std::string stage;     // last stage reached: parse, check, elaborate, vcgen, prove
  size_t vcs = 0;
  size_t proved = 0;
  double time_s = 0;
  std::string error;

  bool mismatch() const { return counted && (counts.ghost != expected.ghost || counts.lemma != expected.lemma); }
  bool fully_proved() const { return stage == "prove" && vcs == proved; }
  std::string status() const;
};

std::vector<CorpusRow> run_corpus(const Manifest& manifest, const RunConfig& cfg);
std::string corpus_report(const std::vector<CorpusRow>& rows);
std::string corpus_report_json(const std::vector<CorpusRow>& rows);

}  // namespace lemmaforge::driver
