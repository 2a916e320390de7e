#include "lemmaforge/driver/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lemmaforge/frontend/parser.hpp"
#include "lemmaforge/frontend/printer.hpp"
#include "lemmaforge/smt/encoder.hpp"

namespace lemmaforge::driver {

namespace fs = std::filesystem;

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Check: return "check";
    case Mode::Elaborate: return "elaborate";
    case Mode::Vcgen: return "vcgen";
    case Mode::Prove: return "prove";
    case Mode::Falsify: return "falsify";
    case Mode::Corpus: return "corpus";
  }
  return "?";
}

bool parse_mode(const std::string& text, Mode& out) {
  for (Mode m : {Mode::Check, Mode::Elaborate, Mode::Vcgen, Mode::Prove, Mode::Falsify, Mode::Corpus}) {
    if (text == to_string(m)) {
      out = m;
      return true;
    }
  }
  return false;
}

Elaboration elaborate_source(const SourceUnit& unit) {
  TypedUnit typed;
  try {
    typed = check(unit);
  } catch (const DiagnosticError& e) {
    if (e.kind() != DiagKind::ReservedName) throw;
    // Generated names are reserved; elaborating our own output is reported
    // as such rather than as a naming error.
    CheckOptions relaxed;
    relaxed.allow_reserved = true;
    TypedUnit again;
    try {
      again = check(unit, relaxed);
    } catch (const DiagnosticError&) {
      throw e;
    }
    elaborate(again);
    throw;
  }
  return elaborate(typed);
}

Elaboration elaborate_file(const std::string& path) { return elaborate_source(parse_file(path)); }

ExprPtr falsify_target(const TypedUnit& unit, const std::string& name) {
  if (const FunctionInfo* fn = unit.function(name); fn && fn->is_lemma()) {
    return generate_lemma_axiom(unit, *fn).statement;
  }
  if (auto it = unit.logic.find(name); it != unit.logic.end()) {
    const Decl& d = *it->second.decl;
    if (d.kind == DeclKind::Lemma || d.kind == DeclKind::Axiom) return d.definition;
  }
  fail(DiagKind::UnresolvedName, SourcePos{unit.unit.file, 0, 0},
       "'" + name + "' is neither a lemma function nor a lemma or axiom");
}

SourceCounts count_functions(const SourceUnit& unit) {
  SourceCounts c;
  for (auto& d : unit.decls) {
    if (!d->body) continue;
    if (d->kind == DeclKind::LemmaFunction) ++c.lemma;
    if (d->kind == DeclKind::GhostFunction) ++c.ghost;
  }
  return c;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(DiagKind::IoError, SourcePos{path.string(), 0, 0}, "cannot write file");
  out << text;
}

std::string stem(const std::string& file) { return fs::path(file).stem().string(); }

smt::DischargeOptions discharge_options(const RunConfig& cfg) {
  smt::DischargeOptions o;
  o.solver.command = cfg.solver;
  o.solver.timeout_s = cfg.timeout_s;
  o.jobs = cfg.jobs;
  o.cache_dir = cfg.cache_dir;
  return o;
}

void emit(const RunConfig& cfg, const std::string& file, const Elaboration& elab, const std::vector<UnitVcs>& vcs) {
  if (!cfg.emit_elaborated.empty()) {
    write_file(fs::path(cfg.emit_elaborated) / fs::path(file).filename(), pretty_print(elab.unit));
  }
  for (auto& f : vcs) {
    for (auto& vc : f.vcs) {
      if (!cfg.emit_smt.empty()) {
        write_file(fs::path(cfg.emit_smt) / stem(file) / (vc.name + ".smt2"), smt::encode(elab.typed, vc));
      }
      if (!cfg.emit_vcs.empty()) write_file(fs::path(cfg.emit_vcs) / stem(file) / (vc.name + ".vc"), render_vc(vc));
    }
  }
}

std::string vcgen_text(const std::vector<UnitVcs>& all) {
  std::ostringstream out;
  for (auto& f : all) {
    for (auto& vc : f.vcs) {
      out << vc.name << "  " << vc.pos.str() << "  " << vc.description << "\n";
    }
  }
  return out.str();
}

std::string vcgen_json(const std::vector<std::pair<std::string, std::vector<UnitVcs>>>& files) {
  nlohmann::ordered_json j;
  j["functions"] = nlohmann::ordered_json::array();
  for (auto& [file, all] : files) {
    for (auto& f : all) {
      nlohmann::ordered_json jf;
      jf["name"] = f.name;
      jf["file"] = file;
      jf["vcs"] = nlohmann::ordered_json::array();
      for (auto& vc : f.vcs) {
        nlohmann::ordered_json jv;
        jv["name"] = vc.name;
        jv["kind"] = ir::to_string(vc.kind);
        jv["pos"] = vc.pos.str();
        jf["vcs"].push_back(jv);
      }
      j["functions"].push_back(jf);
    }
  }
  return j.dump(2) + "\n";
}

void record(RunResult& r, const DiagnosticError& e) {
  for (auto& d : e.diagnostics()) r.err += d.render() + "\n";
  r.exit_code = 2;
}

void record_io(RunResult& r, const std::string& what) {
  r.err += "error[IoError]: " + what + "\n";
  r.exit_code = 2;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult r;
  if (cfg.mode == Mode::Corpus) {
    if (cfg.inputs.size() != 1) {
      r.err = "corpus mode takes exactly one manifest\n";
      r.exit_code = 2;
      return r;
    }
    try {
      auto rows = run_corpus(load_manifest(cfg.inputs[0]), cfg);
      r.out = cfg.report == "json" ? corpus_report_json(rows) : corpus_report(rows);
      for (auto& row : rows) {
        if (!row.error.empty()) r.err += row.expected.file + ": " + row.error + "\n";
        if (!row.fully_proved() || row.mismatch()) r.exit_code = std::max(r.exit_code, 1);
      }
    } catch (const DiagnosticError& e) {
      record(r, e);
    }
    return r;
  }

  smt::Report report;
  std::vector<std::pair<std::string, std::vector<UnitVcs>>> generated;
  bool failed = false;
  for (auto& file : cfg.inputs) {
    try {
      if (cfg.mode == Mode::Check) {
        check(parse_file(file));
        r.out += file + ": ok\n";
        continue;
      }
      if (cfg.mode == Mode::Falsify) {
        TypedUnit unit = check(parse_file(file));
        ExprPtr target = falsify_target(unit, cfg.falsify);
        auto cx = oracle::falsify(unit, target, cfg.space);
        if (cx) {
          r.out += file + ": counterexample for '" + cfg.falsify + "'\n" + cx->render();
          failed = true;
        } else {
          r.out += file + ": no counterexample for '" + cfg.falsify + "'\n";
        }
        continue;
      }
      Elaboration elab = elaborate_file(file);
      if (cfg.mode == Mode::Elaborate) {
        if (cfg.emit_elaborated.empty()) r.out += pretty_print(elab.unit);
        emit(cfg, file, elab, {});
        continue;
      }
      VcOptions vo;
      vo.overflow = cfg.overflow;
      auto vcs = generate_vcs(elab.typed, vo);
      emit(cfg, file, elab, vcs);
      if (cfg.mode == Mode::Vcgen) {
        if (cfg.report != "json") r.out += vcgen_text(vcs);
        generated.emplace_back(file, std::move(vcs));
        continue;
      }
      auto part = smt::discharge_all(elab.typed, vcs, discharge_options(cfg));
      for (auto& f : part.functions) report.functions.push_back(std::move(f));
    } catch (const DiagnosticError& e) {
      record(r, e);
    } catch (const oracle::OracleError& e) {
      r.err += file + ": error[Oracle]: " + e.what() + "\n";
      r.exit_code = 2;
    } catch (const fs::filesystem_error& e) {
      record_io(r, e.what());
    }
  }
  if (cfg.mode == Mode::Vcgen && cfg.report == "json") r.out += vcgen_json(generated);
  if (cfg.mode == Mode::Prove) {
    r.out += cfg.report == "json" ? smt::render_json(report) : smt::render_text(report);
    failed = !report.all_proved();
  }
  if (r.exit_code == 0 && failed) r.exit_code = 1;
  return r;
}

// ---- corpus ---------------------------------------------------------------------

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(DiagKind::IoError, SourcePos{path, 0, 0}, "cannot open manifest");
  Manifest m;
  m.dir = fs::path(path).parent_path().string();
  try {
    auto j = nlohmann::json::parse(in);
    for (auto& e : j.at("functions")) {
      m.entries.push_back({e.at("function").get<std::string>(), e.at("file").get<std::string>(),
                           e.at("ghost").get<int>(), e.at("lemma").get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(DiagKind::IoError, SourcePos{path, 0, 0}, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::string CorpusRow::status() const {
  std::string s;
  if (fully_proved()) {
    s = "Proved";
  } else if (stage == "prove") {
    s = "Failed (" + std::to_string(proved) + "/" + std::to_string(vcs) + " VCs)";
  } else {
    s = "Stopped at " + stage;
  }
  if (mismatch()) {
    s += " [count mismatch: manifest " + std::to_string(expected.ghost) + "/" + std::to_string(expected.lemma) + "]";
  }
  return s;
}

std::vector<CorpusRow> run_corpus(const Manifest& manifest, const RunConfig& cfg) {
  std::vector<CorpusRow> rows;
  for (auto& e : manifest.entries) {
    CorpusRow row;
    row.expected = e;
    std::string path = (fs::path(manifest.dir) / e.file).string();
    row.stage = "parse";
    try {
      SourceUnit src = parse_file(path);
      row.counts = count_functions(src);
      row.counted = true;
      row.stage = "check";
      TypedUnit typed = check(src);
      row.stage = "elaborate";
      Elaboration elab = elaborate(typed);
      row.stage = "vcgen";
      VcOptions vo;
      vo.overflow = cfg.overflow;
      auto vcs = generate_vcs(elab.typed, vo);
      emit(cfg, path, elab, vcs);
      for (auto& f : vcs) row.vcs += f.vcs.size();
      auto report = smt::discharge_all(elab.typed, vcs, discharge_options(cfg));
      row.stage = "prove";
      for (auto& f : report.functions) {
        row.time_s += f.time_s();
        for (auto& v : f.vcs) row.proved += v.verdict.status == smt::Status::Proved;
      }
    } catch (const DiagnosticError& err) {
      for (auto& d : err.diagnostics()) row.error += d.render() + "\n";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string pad(const std::string& s, size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

}  // namespace

std::string corpus_report(const std::vector<CorpusRow>& rows) {
  std::vector<std::vector<std::string>> table = {{"Function Name", "Ghost Functions", "Lemma Functions", "Status"}};
  int ghost = 0, lemma = 0;
  size_t proved = 0;
  for (auto& r : rows) {
    table.push_back({r.expected.function, std::to_string(r.counts.ghost), std::to_string(r.counts.lemma), r.status()});
    ghost += r.counts.ghost;
    lemma += r.counts.lemma;
    proved += r.fully_proved();
  }
  table.push_back({"Total", std::to_string(ghost), std::to_string(lemma),
                   std::to_string(proved) + "/" + std::to_string(rows.size()) + " proved"});
  std::vector<size_t> width(4, 0);
  for (auto& row : table) {
    for (size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream out;
  for (size_t k = 0; k < table.size(); ++k) {
    auto& row = table[k];
    out << pad(row[0], width[0]) << " | " << pad(row[1], width[1]) << " | " << pad(row[2], width[2]) << " | " << row[3]
        << "\n";
    if (k == 0 || k + 2 == table.size()) {
      out << std::string(width[0], '-') << "-+-" << std::string(width[1], '-') << "-+-" << std::string(width[2], '-')
          << "-+-" << std::string(width[3], '-') << "\n";
    }
  }
  return out.str();
}

std::string corpus_report_json(const std::vector<CorpusRow>& rows) {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  int ghost = 0, lemma = 0;
  for (auto& r : rows) {
    nlohmann::ordered_json jr;
    jr["function"] = r.expected.function;
    jr["file"] = r.expected.file;
    jr["ghost"] = r.counts.ghost;
    jr["lemma"] = r.counts.lemma;
    jr["mismatch"] = r.mismatch();
    jr["stage"] = r.stage;
    jr["vcs"] = r.vcs;
    jr["proved"] = r.proved;
    jr["time_s"] = std::round(r.time_s * 1000) / 1000;
    jr["status"] = r.status();
    j["rows"].push_back(jr);
    ghost += r.counts.ghost;
    lemma += r.counts.lemma;
  }
  j["total"] = {{"ghost", ghost}, {"lemma", lemma}};
  return j.dump(2) + "\n";
}

}  // namespace lemmaforge::driver
