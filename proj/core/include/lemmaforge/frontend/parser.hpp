#pragma once

#include <string>
#include <string_view>

#include "lemmaforge/frontend/ast.hpp"

namespace lemmaforge {

// Parses mini-C with ACSL-style annotations. Throws DiagnosticError
// (SyntaxError or UnknownClause) on malformed input.
SourceUnit parse_program(std::string_view text, const std::string& file = "<input>");

// Parses a single annotation-language expression (term or formula).
ExprPtr parse_expression(std::string_view text, const std::string& file = "<expr>");

SourceUnit parse_file(const std::string& path);

}  // namespace lemmaforge
