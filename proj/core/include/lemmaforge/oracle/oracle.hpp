#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lemmaforge/sema/sema.hpp"
#include "lemmaforge/vcgen/ir.hpp"

namespace lemmaforge::oracle {

struct Value {
  enum class Kind { Int, Bool, Ptr };
  Kind kind = Kind::Int;
  BigInt num = 0;    // integer, 0/1 for Bool, offset for Ptr
  BigInt block = 0;  // Ptr only; block 0 is NULL's block

  static Value integer(BigInt v) { return {Kind::Int, v, 0}; }
  static Value boolean(bool b) { return {Kind::Bool, b ? 1 : 0, 0}; }
  static Value pointer(BigInt block, BigInt offset) { return {Kind::Ptr, offset, block}; }
  static Value null() { return pointer(0, 0); }

  bool truthy() const { return kind == Kind::Ptr ? (block != 0 || num != 0) : num != 0; }
  bool operator==(const Value&) const = default;
  std::string str() const;
};

using Heap = std::map<std::pair<BigInt, BigInt>, BigInt>;  // (block, offset) -> byte

struct ConcreteState {
  std::map<BigInt, BigInt> alloc;  // block -> size
  Heap heap;
  std::map<std::string, Value> vars;  // globals (and parameters when useful)

  bool valid(const Value& p) const;
  BigInt block_length(BigInt block) const;
  size_t heap_size() const { return heap.size(); }
  // Allocates a fresh block holding `bytes`; returns a pointer to its start.
  Value add_block(const std::vector<int>& bytes);
  std::string dump() const;
};

class OracleError : public std::runtime_error {
 public:
  enum class Kind { Trap, FuelExhausted, Unsupported };
  OracleError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Values tried for quantifiers nested inside a formula: a bounded stand-in
// for unbounded domains, derived from the state.
struct QuantDomain {
  std::vector<BigInt> integers;
  std::vector<Value> pointers;
};

QuantDomain quant_domain(const ConcreteState& st);

// Evaluation context for annotations.
struct LogicFrame {
  const ConcreteState* state = nullptr;
  const ConcreteState* pre = nullptr;   // state of \old / \at(_, Pre)
  std::map<std::string, Value> vars;    // overrides (parameters, locals)
  std::map<std::string, Value> old_vars;
  std::optional<Value> result;
};

// Evaluates a typed annotation term. Recursion depth is bounded by
// fuel = heap cells + 1.
Value eval_logic(const TypedUnit& unit, const ExprPtr& term, const LogicFrame& frame);

struct ExecOptions {
  bool overflow = true;
  long steps = 100000;  // loop iterations and calls
  bool check_preconditions = true;  // trap when a call violates the callee's requires
};

struct ExecResult {
  std::optional<Value> result;
  ConcreteState state;
};

// Runs a function body (calls execute callee bodies). Throws OracleError
// (Trap / FuelExhausted) on runtime errors. The caller's own requires are not
// checked.
ExecResult exec(const TypedUnit& unit, const std::string& function, const std::vector<Value>& args,
                const ConcreteState& st, const ExecOptions& options = {});

// Evaluation of IR formulas; free symbols are looked up in `env`.
struct IrValue {
  ir::Sort sort = ir::Sort::Int;
  Value value;
  std::shared_ptr<const Heap> heap;
  std::shared_ptr<const std::map<BigInt, BigInt>> alloc;
};

IrValue eval_ir(const TypedUnit& unit, const ir::TermPtr& t, const std::map<std::string, IrValue>& env,
                const QuantDomain& domain, long fuel);

struct SearchSpace {
  int max_len = 4;
  std::vector<int> alphabet = {'a', 'b', 'c'};  // 0 is always added
  BigInt int_lo = -1;
  BigInt int_hi = 4;
};

struct Counterexample {
  std::vector<std::pair<std::string, Value>> bindings;
  ConcreteState state;
  std::string render() const;
};

// Enumerates the outer universal binders of `statement` (a formula
// `\forall ...; body`, possibly nested) over the space and returns the first
// assignment where the body is false. States where evaluation traps are
// skipped.
std::optional<Counterexample> falsify(const TypedUnit& unit, const ExprPtr& statement, const SearchSpace& space);

struct Agreement {
  size_t states = 0;
  size_t skipped = 0;  // requires or ensures could not be evaluated
  size_t holds = 0;    // states where the obligation holds
  std::vector<std::string> disagreements;
};

// Compares the WP obligation of `function` against execution on every state
// of the space.
Agreement crosscheck_wp(const TypedUnit& unit, const std::string& function, const SearchSpace& space,
                        bool overflow = true);

// Random loop-free, call-free function `f(int x, int y)` with a contract.
std::string random_function(unsigned seed);

}  // namespace lemmaforge::oracle
