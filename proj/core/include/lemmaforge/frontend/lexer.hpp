#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lemmaforge/bigint.hpp"
#include "lemmaforge/diagnostics.hpp"

namespace lemmaforge {

enum class TokKind {
  Eof,
  Ident,      // identifiers and keywords
  BackIdent,  // \forall, \result, \null, ...
  Int,
  Char,
  Punct,
  AnnotBegin,  // `/*@`, `//@`, or nested `/@`
  AnnotEnd,    // `*/`, end of line, or nested `@/`
};

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  SourcePos pos;
  BigInt value = 0;  // Int / Char
};

// Splits source text into tokens. Ordinary comments and preprocessor lines are
// dropped; annotation comments become AnnotBegin ... AnnotEnd brackets, inside
// which `@` is blank.
std::vector<Token> tokenize(std::string_view text, const std::string& file);

}  // namespace lemmaforge
