#include "lemmaforge/frontend/lexer.hpp"

#include <array>
#include <cctype>

namespace lemmaforge {

namespace {

enum class Mode { Code, BlockAnnot, LineAnnot, NestedAnnot };

constexpr std::array<std::string_view, 22> kPuncts = {
    "<==>", "==>", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=",
    "(",    ")",   "{",  "}",  "[",  "]",  ";",  ",",  ":",  "?"};
constexpr std::string_view kSinglePuncts = "+-*/%<>=!&";

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    while (true) {
      skip_blanks();
      if (at_end()) break;
      lex_one();
    }
    if (modes_.size() > 1) {
      if (modes_.back() == Mode::LineAnnot) {
        push(TokKind::AnnotEnd, "", pos());
      } else {
        fail(DiagKind::SyntaxError, pos(), "unterminated annotation comment");
      }
    }
    push(TokKind::Eof, "", pos());
    return std::move(tokens_);
  }

 private:
  std::string_view text_;
  std::string file_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool line_start_ = true;
  std::vector<Mode> modes_{Mode::Code};
  std::vector<Token> tokens_;

  bool at_end() const { return i_ >= text_.size(); }
  char peek(size_t k = 0) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }
  bool starts(std::string_view s) const { return text_.substr(i_, s.size()) == s; }
  SourcePos pos() const { return {file_, line_, col_}; }
  Mode mode() const { return modes_.back(); }
  bool in_annot() const { return mode() != Mode::Code; }

  void advance(size_t n = 1) {
    for (size_t k = 0; k < n && !at_end(); ++k) {
      if (text_[i_] == '\n') {
        ++line_;
        col_ = 1;
        line_start_ = true;
      } else {
        ++col_;
        if (!std::isspace(static_cast<unsigned char>(text_[i_]))) line_start_ = false;
      }
      ++i_;
    }
  }

  void push(TokKind kind, std::string text, SourcePos p, BigInt value = 0) {
    tokens_.push_back(Token{kind, std::move(text), std::move(p), value});
  }

  void skip_blanks() {
    while (!at_end()) {
      char c = peek();
      if (c == '\n' && mode() == Mode::LineAnnot) {
        push(TokKind::AnnotEnd, "", pos());
        modes_.pop_back();
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (in_annot() && c == '@' && !(peek(1) == '/' && mode() == Mode::NestedAnnot)) {
        advance();
        continue;
      }
      if (mode() == Mode::Code && c == '#' && line_start_) {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (starts("//") && peek(2) != '@') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (starts("/*") && peek(2) != '@') {
        SourcePos start = pos();
        advance(2);
        while (!at_end() && !starts("*/")) advance();
        if (at_end()) fail(DiagKind::SyntaxError, start, "unterminated comment");
        advance(2);
        continue;
      }
      break;
    }
  }

  void lex_one() {
    SourcePos p = pos();
    if (mode() == Mode::Code && starts("/*@")) {
      advance(3);
      modes_.push_back(Mode::BlockAnnot);
      push(TokKind::AnnotBegin, "/*@", p);
      return;
    }
    if (mode() == Mode::Code && starts("//@")) {
      advance(3);
      modes_.push_back(Mode::LineAnnot);
      push(TokKind::AnnotBegin, "//@", p);
      return;
    }
    if (in_annot()) {
      if (mode() == Mode::BlockAnnot && starts("*/")) {
        advance(2);
        modes_.pop_back();
        push(TokKind::AnnotEnd, "*/", p);
        return;
      }
      if (mode() == Mode::NestedAnnot && starts("@/")) {
        advance(2);
        modes_.pop_back();
        push(TokKind::AnnotEnd, "@/", p);
        return;
      }
      if (mode() != Mode::NestedAnnot && starts("/@")) {
        advance(2);
        modes_.push_back(Mode::NestedAnnot);
        push(TokKind::AnnotBegin, "/@", p);
        return;
      }
    } else if (starts("*/")) {
      fail(DiagKind::SyntaxError, p, "stray end of comment");
    }

    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      push(TokKind::Ident, std::string(text_.substr(start, i_ - start)), p);
      return;
    }
    if (c == '\\' && std::isalpha(static_cast<unsigned char>(peek(1)))) {
      size_t start = i_;
      advance();
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      push(TokKind::BackIdent, std::string(text_.substr(start, i_ - start)), p);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (std::isalnum(static_cast<unsigned char>(peek()))) advance();
      std::string_view spelled = text_.substr(start, i_ - start);
      std::string_view digits = spelled;
      while (!digits.empty() && (digits.back() == 'u' || digits.back() == 'U' ||
                                 digits.back() == 'l' || digits.back() == 'L')) {
        digits.remove_suffix(1);
      }
      auto value = parse_bigint(digits);
      if (!value) fail(DiagKind::SyntaxError, p, "malformed integer literal '" + std::string(spelled) + "'");
      push(TokKind::Int, std::string(spelled), p, *value);
      return;
    }
    if (c == '\'') {
      lex_char(p);
      return;
    }
    for (auto punct : kPuncts) {
      if (starts(punct)) {
        advance(punct.size());
        push(TokKind::Punct, std::string(punct), p);
        return;
      }
    }
    if (kSinglePuncts.find(c) != std::string_view::npos) {
      advance();
      push(TokKind::Punct, std::string(1, c), p);
      return;
    }
    fail(DiagKind::SyntaxError, p, std::string("unexpected character '") + c + "'");
  }

  void lex_char(const SourcePos& p) {
    advance();  // opening quote
    int code;
    if (peek() == '\\') {
      advance();
      char e = peek();
      switch (e) {
        case '0': code = 0; break;
        case 'n': code = '\n'; break;
        case 't': code = '\t'; break;
        case 'r': code = '\r'; break;
        case 'v': code = '\v'; break;
        case 'f': code = '\f'; break;
        case '\\': code = '\\'; break;
        case '\'': code = '\''; break;
        case '"': code = '"'; break;
        case 'x': {
          advance();
          int v = 0, n = 0;
          while (n < 2 && std::isxdigit(static_cast<unsigned char>(peek()))) {
            char h = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
            v = v * 16 + (std::isdigit(static_cast<unsigned char>(h)) ? h - '0' : h - 'a' + 10);
            advance();
            ++n;
          }
          if (n == 0) fail(DiagKind::SyntaxError, p, "malformed \\x escape");
          code = static_cast<signed char>(v);
          if (peek() != '\'') fail(DiagKind::SyntaxError, p, "unterminated character literal");
          advance();
          push(TokKind::Char, "'", p, code);
          return;
        }
        default: fail(DiagKind::SyntaxError, p, std::string("unknown escape '\\") + e + "'");
      }
      advance();
    } else {
      if (peek() == '\'' || peek() == '\n' || at_end()) {
        fail(DiagKind::SyntaxError, p, "empty character literal");
      }
      code = static_cast<signed char>(peek());
      advance();
    }
    if (peek() != '\'') fail(DiagKind::SyntaxError, p, "unterminated character literal");
    advance();
    push(TokKind::Char, "'", p, code);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
  return Lexer(text, file).run();
}

}  // namespace lemmaforge
