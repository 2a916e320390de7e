#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "lemmaforge/driver/driver.hpp"
#include "lemmaforge/elaborator/elaborator.hpp"
#include "lemmaforge/frontend/parser.hpp"
#include "lemmaforge/sema/sema.hpp"

namespace lftest {

inline std::string data_path(const std::string& name) { return std::string(LEMMAFORGE_TEST_DATA) + "/" + name; }
inline std::string corpus_path(const std::string& name) { return std::string(LEMMAFORGE_CORPUS_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline lemmaforge::TypedUnit checked(const std::string& text, const std::string& file = "t.c") {
  return lemmaforge::check(lemmaforge::parse_program(text, file));
}

inline lemmaforge::Elaboration elaborated(const std::string& text, const std::string& file = "t.c") {
  return lemmaforge::elaborate(checked(text, file));
}

// Kind of the first diagnostic raised by `f`, or nullopt when it succeeds.
template <class F>
std::optional<lemmaforge::DiagKind> diag_of(F&& f) {
  try {
    f();
  } catch (const lemmaforge::DiagnosticError& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline const char* kStrchrnulInRange = R"(/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures s <= strchrnul(s, c) <= s + strlen(s);
  @  @/
  @ void strchrnul_in_range(char *s, char c)
  @ {
  @   if (*s != '\0' && *s != c)
  @     strchrnul_in_range(s + 1, c);
  @ }
  @*/
)";

}  // namespace lftest
