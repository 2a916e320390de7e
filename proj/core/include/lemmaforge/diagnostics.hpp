#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace lemmaforge {

struct SourcePos {
  std::string file;
  int line = 0;
  int column = 0;

  std::string str() const;
  bool operator==(const SourcePos&) const = default;
};

enum class DiagKind {
  SyntaxError,
  UnknownClause,
  TypeError,
  LogicInCode,
  GhostWritesReal,
  GhostInCode,
  UnresolvedName,
  DuplicateName,
  ReservedName,
  LemmaWithoutBody,
  ImpureLemma,
  ConflictingClause,
  ForwardLemmaUse,
  MissingDecreases,
  MissingLoopInvariant,
  MissingLoopVariant,
  AlreadyElaborated,
  UnsupportedConstruct,
  IoError,
};

const char* to_string(DiagKind kind);

struct Diagnostic {
  DiagKind kind = DiagKind::SyntaxError;
  SourcePos pos;
  std::string message;
  std::vector<SourcePos> related;

  // "file:line:col: error[Kind]: message"
  std::string render() const;
};

// Thrown by every pipeline stage. Carries at least one diagnostic.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic diag);
  explicit DiagnosticError(std::vector<Diagnostic> diags);

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  DiagKind kind() const { return diags_.front().kind; }

 private:
  std::vector<Diagnostic> diags_;
};

[[noreturn]] void fail(DiagKind kind, const SourcePos& pos, std::string message);

}  // namespace lemmaforge
