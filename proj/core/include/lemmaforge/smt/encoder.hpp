#pragma once

#include <string>

#include "lemmaforge/vcgen/vcgen.hpp"

namespace lemmaforge::smt {

// Self-contained SMT-LIB2 script: memory model, imported definitions and
// axioms, free symbols, hypotheses, negated goal and check-sat.
std::string encode(const TypedUnit& unit, const VC& vc);

}  // namespace lemmaforge::smt
