#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lemmaforge/driver/driver.hpp"

using namespace lemmaforge;

int main(int argc, char** argv) {
  CLI::App app{"lemmaforge: deductive verifier for annotated mini-C with lemma functions"};
  driver::RunConfig cfg;
  std::string mode;
  std::string overflow = "on";
  std::string alphabet = "abc";

  app.add_option("mode", mode, "check | elaborate | vcgen | prove | falsify | corpus")->required();
  app.add_option("inputs", cfg.inputs, "source files (the manifest in corpus mode)")->required();
  app.add_option("--solver", cfg.solver, "solver command reading SMT-LIB2 on stdin")
      ->envname("LEMMAFORGE_SOLVER")
      ->capture_default_str();
  app.add_option("--timeout", cfg.timeout_s, "per-VC timeout in seconds")
      ->envname("LEMMAFORGE_TIMEOUT")
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "parallel solver jobs")->envname("LEMMAFORGE_JOBS")->capture_default_str();
  app.add_option("--emit-smt", cfg.emit_smt, "write one .smt2 file per VC")->envname("LEMMAFORGE_EMIT_SMT");
  app.add_option("--emit-vcs", cfg.emit_vcs, "write one readable file per VC")->envname("LEMMAFORGE_EMIT_VCS");
  app.add_option("--emit-elaborated", cfg.emit_elaborated, "write elaborated sources")
      ->envname("LEMMAFORGE_EMIT_ELABORATED");
  app.add_option("--cache", cfg.cache_dir, "directory caching solver answers")->envname("LEMMAFORGE_CACHE");
  app.add_option("--report", cfg.report, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("LEMMAFORGE_REPORT")
      ->capture_default_str();
  app.add_option("--overflow-vcs", overflow, "arithmetic overflow VCs")
      ->check(CLI::IsMember({"on", "off"}))
      ->envname("LEMMAFORGE_OVERFLOW_VCS")
      ->capture_default_str();
  app.add_option("--falsify", cfg.falsify, "lemma function, lemma or axiom to falsify");
  app.add_option("--max-len", cfg.space.max_len, "longest string tried by falsify")
      ->envname("LEMMAFORGE_MAX_LEN")
      ->capture_default_str();
  app.add_option("--alphabet", alphabet, "characters tried by falsify (0 is always included)")
      ->envname("LEMMAFORGE_ALPHABET")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!driver::parse_mode(mode, cfg.mode)) {
    std::cerr << "unknown mode '" << mode << "'\n";
    return 2;
  }
  if (cfg.mode == driver::Mode::Falsify && cfg.falsify.empty()) {
    std::cerr << "falsify mode needs --falsify NAME\n";
    return 2;
  }
  if (cfg.mode == driver::Mode::Prove && cfg.solver.empty()) {
    std::cerr << "prove mode needs a solver command\n";
    return 2;
  }
  cfg.overflow = overflow == "on";
  cfg.space.alphabet.assign(alphabet.begin(), alphabet.end());

  auto r = driver::run(cfg);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
