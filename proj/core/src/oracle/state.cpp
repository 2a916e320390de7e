#include <algorithm>
#include <set>
#include <sstream>

#include "lemmaforge/oracle/oracle.hpp"

namespace lemmaforge::oracle {

std::string Value::str() const {
  switch (kind) {
    case Kind::Int: return to_string(num);
    case Kind::Bool: return num ? "\\true" : "\\false";
    case Kind::Ptr:
      if (block == 0 && num == 0) return "NULL";
      return "b" + to_string(block) + "+" + to_string(num);
  }
  return "?";
}

bool ConcreteState::valid(const Value& p) const {
  return p.kind == Value::Kind::Ptr && p.num >= 0 && p.num < block_length(p.block);
}

BigInt ConcreteState::block_length(BigInt block) const {
  auto it = alloc.find(block);
  return it == alloc.end() ? 0 : it->second;
}

Value ConcreteState::add_block(const std::vector<int>& bytes) {
  BigInt id = alloc.empty() ? 1 : std::max<BigInt>(1, alloc.rbegin()->first + 1);
  alloc[id] = static_cast<BigInt>(bytes.size());
  for (size_t i = 0; i < bytes.size(); ++i) heap[{id, static_cast<BigInt>(i)}] = bytes[i];
  return Value::pointer(id, 0);
}

namespace {

std::string byte(BigInt v) {
  if (v > 32 && v < 127 && v != '\'' && v != '\\') return std::string("'") + static_cast<char>(v) + "'";
  return to_string(v);
}

}  // namespace

std::string ConcreteState::dump() const {
  std::ostringstream out;
  for (auto& [b, size] : alloc) {
    if (b == 0) continue;
    out << "b" << to_string(b) << "[" << to_string(size) << "] =";
    for (BigInt i = 0; i < size; ++i) {
      auto it = heap.find({b, i});
      out << " " << (it == heap.end() ? "?" : byte(it->second));
    }
    out << "\n";
  }
  for (auto& [name, v] : vars) out << name << " = " << v.str() << "\n";
  return out.str();
}

QuantDomain quant_domain(const ConcreteState& st) {
  QuantDomain d;
  BigInt m = 0;
  for (auto& [b, size] : st.alloc) m = std::max(m, size);
  std::set<BigInt> ints;
  for (BigInt i = -2; i <= m + 2; ++i) ints.insert(i);
  for (auto& [_, v] : st.heap) ints.insert(v);
  ints.insert(127);  // a character occurring in no string
  d.integers.assign(ints.begin(), ints.end());
  d.pointers.push_back(Value::null());
  for (auto& [b, size] : st.alloc) {
    if (b == 0) continue;
    for (BigInt i = 0; i <= size; ++i) d.pointers.push_back(Value::pointer(b, i));
  }
  return d;
}

std::string Counterexample::render() const {
  std::ostringstream out;
  for (auto& [name, v] : bindings) {
    out << name << " = " << v.str();
    if (v.kind == Value::Kind::Int && v.num > 32 && v.num < 127) out << " ('" << static_cast<char>(v.num) << "')";
    out << "\n";
  }
  out << "heap:\n" << state.dump();
  return out.str();
}

}  // namespace lemmaforge::oracle
