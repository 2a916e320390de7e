#pragma once

#include <string>

#include "lemmaforge/frontend/ast.hpp"

namespace lemmaforge {

// Renders a unit back to source text that parses to a structurally equal
// unit. Contracts are printed in the order requires, ensures, assigns,
// allocates, decreases, terminates.
std::string pretty_print(const SourceUnit& unit);
std::string pretty_print(const DeclPtr& decl);
std::string pretty_print(const ExprPtr& expr);

}  // namespace lemmaforge
