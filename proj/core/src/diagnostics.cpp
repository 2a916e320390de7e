#include "lemmaforge/diagnostics.hpp"

#include <algorithm>

#include "lemmaforge/bigint.hpp"

namespace lemmaforge {

std::string SourcePos::str() const {
  return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" +
         std::to_string(column);
}

const char* to_string(DiagKind kind) {
  switch (kind) {
    case DiagKind::SyntaxError: return "SyntaxError";
    case DiagKind::UnknownClause: return "UnknownClause";
    case DiagKind::TypeError: return "TypeError";
    case DiagKind::LogicInCode: return "LogicInCode";
    case DiagKind::GhostWritesReal: return "GhostWritesReal";
    case DiagKind::GhostInCode: return "GhostInCode";
    case DiagKind::UnresolvedName: return "UnresolvedName";
    case DiagKind::DuplicateName: return "DuplicateName";
    case DiagKind::ReservedName: return "ReservedName";
    case DiagKind::LemmaWithoutBody: return "LemmaWithoutBody";
    case DiagKind::ImpureLemma: return "ImpureLemma";
    case DiagKind::ConflictingClause: return "ConflictingClause";
    case DiagKind::ForwardLemmaUse: return "ForwardLemmaUse";
    case DiagKind::MissingDecreases: return "MissingDecreases";
    case DiagKind::MissingLoopInvariant: return "MissingLoopInvariant";
    case DiagKind::MissingLoopVariant: return "MissingLoopVariant";
    case DiagKind::AlreadyElaborated: return "AlreadyElaborated";
    case DiagKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case DiagKind::IoError: return "IoError";
  }
  return "Unknown";
}

std::string Diagnostic::render() const {
  std::string out = pos.str() + ": error[" + to_string(kind) + "]: " + message;
  for (const auto& r : related) out += "\n  " + r.str() + ": note: related location";
  return out;
}

namespace {
std::string join_messages(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.render();
  }
  return out;
}
}  // namespace

DiagnosticError::DiagnosticError(Diagnostic diag)
    : DiagnosticError(std::vector<Diagnostic>{std::move(diag)}) {}

DiagnosticError::DiagnosticError(std::vector<Diagnostic> diags)
    : std::runtime_error(join_messages(diags)), diags_(std::move(diags)) {}

void fail(DiagKind kind, const SourcePos& pos, std::string message) {
  throw DiagnosticError(Diagnostic{kind, pos, std::move(message), {}});
}

std::string to_string(BigInt value) {
  if (value == 0) return "0";
  bool neg = value < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(value + 1)) + 1
                              : static_cast<unsigned __int128>(value);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::optional<BigInt> parse_bigint(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  if (text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  if (text.empty()) return std::nullopt;
  BigInt value = 0;
  for (char ch : text) {
    int digit;
    if (ch >= '0' && ch <= '9') digit = ch - '0';
    else if (base == 16 && ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
    else if (base == 16 && ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
    else return std::nullopt;
    value = value * base + digit;
    if (value > (static_cast<BigInt>(1) << 100)) return std::nullopt;
  }
  return neg ? -value : value;
}

}  // namespace lemmaforge
