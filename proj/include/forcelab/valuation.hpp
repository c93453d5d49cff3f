#pragma once

// The Boolean value [[.]] of atomic and compound statements about names.
// Equality and membership are defined by joint recursion over the name DAG:
//
//   [[x in y]] = join over (w, v) in entries(y) of  v ^ [[x = w]]
//   [[x = y]]  = meet over (w, v) in entries(x) of (v => [[w in y]])
//              ^ meet over (w, v) in entries(y) of (v => [[w in x]])
//
// Connectives map to the algebra operations, quantifiers to big joins and
// meets over the (finite) universe, and bounded quantifiers range over the
// entries of the bounding name. Results are memoized per ordered index pair;
// the cache is transparent (turning it off cannot change any value).

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"

namespace forcelab {

// Variable bindings, innermost last.
class Env {
public:
  void bind(const std::string& var, int name_index) { binds_.emplace_back(var, name_index); }
  void unbind() { binds_.pop_back(); }
  std::optional<int> lookup(const std::string& var) const;
  bool empty() const { return binds_.empty(); }
  std::string to_string() const;  // e.g. "{x=#0, y=#1}" with name indices

private:
  std::vector<std::pair<std::string, int>> binds_;
};

struct TraceEntry {
  enum class Op { Eq, Mem, Subset };
  Op op;
  int x;
  int y;
  Elem result;
};

class ValuationContext {
public:
  // The universe must outlive the context.
  explicit ValuationContext(const NameUniverse& universe, bool memoize = true);

  const NameUniverse& universe() const { return universe_; }
  bool memoize() const { return memoize_; }

  Elem val_eq(int x, int y);
  Elem val_mem(int x, int y);
  Elem val_subset(int x, int y);  // meet over entries of x of (v => [[w in y]])

  // Desugars first; the formula must be closed under `env`.
  Elem val_formula(const Formula& f);
  Elem val_formula(const Formula& f, Env& env);

  void set_trace(bool on) { trace_on_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

private:
  Elem eval(const Formula& f, Env& env);
  int resolve(const Term& term, const Env& env) const;
  void check_index(int i) const;

  const NameUniverse& universe_;
  bool memoize_;
  bool trace_on_ = false;
  std::vector<TraceEntry> trace_;
  std::unordered_map<std::uint64_t, std::uint32_t> eq_memo_;
  std::unordered_map<std::uint64_t, std::uint32_t> mem_memo_;
};

}  // namespace forcelab
