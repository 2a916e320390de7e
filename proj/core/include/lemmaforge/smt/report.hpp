#pragma once

#include <string>
#include <vector>

#include "lemmaforge/smt/solver.hpp"
#include "lemmaforge/vcgen/vcgen.hpp"

namespace lemmaforge::smt {

struct VcResult {
  std::string name;
  ir::VcKind kind = ir::VcKind::Post;
  SourcePos pos;
  std::string description;
  Verdict verdict;
};

struct FunctionResult {
  std::string name;
  std::string file;
  std::vector<VcResult> vcs;

  bool proved() const;
  double time_s() const;
};

struct Report {
  std::vector<FunctionResult> functions;

  bool all_proved() const;
  size_t vc_count() const;
};

// Encodes and discharges every VC; never stops at the first failure.
Report discharge_all(const TypedUnit& unit, const std::vector<UnitVcs>& vcs, const DischargeOptions& options);

std::string render_text(const Report& report);
std::string render_json(const Report& report);

}  // namespace lemmaforge::smt
