#include <random>
#include <sstream>

#include "lemmaforge/oracle/oracle.hpp"

namespace lemmaforge::oracle {

namespace {

class Generator {
 public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  std::string function() {
    std::ostringstream out;
    out << "/*@ requires " << formula(false) << ";\n";
    out << "  @ ensures " << formula(true) << ";\n";
    if (pick(2)) out << "  @ assigns \\nothing;\n";
    out << "  @*/\n";
    out << "int f(int x, int y) {\n";
    block(out, 1, 3);
    out << "  return " << expr(2) << ";\n";
    out << "}\n";
    return out.str();
  }

 private:
  std::mt19937 rng_;
  std::vector<std::string> locals_;
  int counter_ = 0;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string leaf() {
    int k = pick(4 + static_cast<int>(locals_.size()));
    if (k == 0) return "x";
    if (k == 1) return "y";
    if (k < 4) return std::to_string(pick(4));
    return locals_[k - 4];
  }

  std::string expr(int depth) {
    if (depth == 0 || pick(3) == 0) return leaf();
    static const char* ops[] = {"+", "-", "*", "/", "%"};
    return "(" + expr(depth - 1) + " " + ops[pick(5)] + " " + expr(depth - 1) + ")";
  }

  std::string condition(int depth) {
    static const char* rel[] = {"<", "<=", "==", "!=", ">", ">="};
    if (depth > 0 && pick(4) == 0) {
      return "(" + condition(depth - 1) + (pick(2) ? " && " : " || ") + condition(depth - 1) + ")";
    }
    if (pick(8) == 0) return "!(" + condition(0) + ")";
    return expr(1) + " " + rel[pick(6)] + " " + expr(1);
  }

  std::string term(bool post) {
    int k = pick(post ? 7 : 5);
    switch (k) {
      case 0: return "x";
      case 1: return "y";
      case 2: return std::to_string(pick(4));
      case 3: return "(x + y)";
      case 4: return "(x - y)";
      case 5: return "\\result";
      default: return "\\old(x)";
    }
  }

  std::string atom(bool post) {
    static const char* rel[] = {"<", "<=", "==", "!=", ">", ">="};
    std::string lhs = post && pick(2) ? "\\result" : term(post);
    return lhs + " " + rel[pick(6)] + " " + term(post);
  }

  std::string formula(bool post) {
    if (!post && pick(4) == 0) return "\\true";
    switch (pick(5)) {
      case 0: return atom(post) + " && " + atom(post);
      case 1: return atom(post) + " || " + atom(post);
      case 2: return "(" + atom(post) + " ==> " + atom(post) + ")";
      default: return atom(post);
    }
  }

  void block(std::ostringstream& out, int indent, int budget) {
    std::string pad(2 * indent, ' ');
    int n = pick(budget + 1);
    for (int i = 0; i < n; ++i) {
      switch (pick(indent < 3 ? 6 : 5)) {
        case 0: {
          std::string name = "t" + std::to_string(counter_++);
          out << pad << "int " << name << " = " << expr(2) << ";\n";
          if (indent == 1) locals_.push_back(name);
          break;
        }
        case 1: out << pad << (pick(2) ? "x" : "y") << " = " << expr(2) << ";\n"; break;
        case 2: out << pad << (pick(2) ? "x" : "y") << (pick(2) ? " += " : " -= ") << expr(1) << ";\n"; break;
        case 3: out << pad << (pick(2) ? "x" : "y") << (pick(2) ? "++" : "--") << ";\n"; break;
        case 4: out << pad << "if (" << condition(1) << ") return " << expr(2) << ";\n"; break;
        default: {
          out << pad << "if (" << condition(1) << ") {\n";
          auto saved = locals_;
          block(out, indent + 1, budget - 1);
          locals_ = saved;
          out << pad << "} else {\n";
          block(out, indent + 1, budget - 1);
          locals_ = saved;
          out << pad << "}\n";
          break;
        }
      }
    }
  }
};

}  // namespace

std::string random_function(unsigned seed) { return Generator(seed).function(); }

}  // namespace lemmaforge::oracle
