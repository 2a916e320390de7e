#pragma once

#include <string>
#include <vector>

namespace lemmaforge::smt {

enum class Status { Proved, Refuted, Unknown, Timeout, SolverError };

const char* to_string(Status s);

struct Verdict {
  Status status = Status::SolverError;
  double time_s = 0;
  std::string model;   // solver output after "sat"
  std::string detail;  // error text for SolverError
};

struct SolverConfig {
  std::string command = "z3 -in -smt2";  // script is written to stdin
  double timeout_s = 10;
};

// Runs one script. A `(get-model)` command is appended on stdin so that a
// satisfiable goal comes back with its model.
Verdict run_solver(const std::string& script, const SolverConfig& config);

struct DischargeOptions {
  SolverConfig solver;
  int jobs = 1;
  std::string cache_dir;  // empty: no cache
};

// Runs every script (up to `jobs` at a time); results are in input order.
// Cached outputs are keyed by the solver command and the script text.
std::vector<Verdict> discharge(const std::vector<std::string>& scripts, const DischargeOptions& options);

}  // namespace lemmaforge::smt
