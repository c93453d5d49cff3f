#pragma once

// Forcing over posets of conditions. The running example is the Cohen poset
// of finite partial functions from a rows x cols grid of cells into {0, 1},
// ordered by reverse inclusion: q <= p when q extends p. It comes in two
// builds: a fully materialized finite truncation (bounded columns) and a
// lazy form whose columns are unbounded and whose dense sets act as
// constructive extenders.
//
// A condition p forces a sentence when its image under the completion
// embedding sits below the sentence's Boolean value.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forcelab/errors.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/order.hpp"
#include "forcelab/valuation.hpp"

namespace forcelab {

// A finite partial function from grid cells to bits.
class Condition {
public:
  using Cell = std::pair<int, int>;  // (row, col)

  Condition() = default;  // the empty condition (weakest)

  const std::map<Cell, int>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::optional<int> at(int row, int col) const;
  bool defined_at(int row, int col) const { return at(row, col).has_value(); }
  void set(int row, int col, int bit);  // throws on rebinding with a different bit
  bool extends(const Condition& weaker) const;  // this >= weaker as functions
  int max_col() const;                          // -1 when empty

  // `{(r0,0)->1,(r1,2)->0}` with rows shown via their labels; `{}` when empty.
  std::string to_string(const std::vector<std::string>& row_labels) const;
  static Condition parse(std::string_view text, const std::vector<std::string>& row_labels);

  friend bool operator==(const Condition& a, const Condition& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const Condition& a, const Condition& b) {
    return a.entries_ < b.entries_;
  }

private:
  std::map<Cell, int> entries_;
};

// Union of a compatible family of conditions; throws when two members
// disagree on a cell (the family was not directed).
Condition union_conditions(const std::vector<Condition>& conditions);

// ---------------------------------------------------------------------------
// Finite truncation

struct FiniteCohenPoset {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> row_labels;  // "r0", "r1", ...
  PosetPtr poset;                       // all 3^(rows*cols) conditions
  std::vector<Condition> conditions;    // aligned with poset indices

  int index_of(const Condition& c) const;
  const Condition& condition_of(int index) const { return conditions[index]; }
};

// rows * cols is capped at 12 (3^12 conditions).
FiniteCohenPoset cohen_poset_finite(int rows, int cols);

// Conditions defined at one cell. Dense in every truncation.
DenseSet dense_point(const FiniteCohenPoset& poset, int row, int col);

// Conditions separating two rows at some column. This family is dense in the
// unbounded poset but never in a finite truncation, so the result carries
// either the validated dense set or a counterexample condition that no
// member extends.
struct DistinctReport {
  std::vector<int> members;                 // candidate set, sorted
  std::optional<DenseSet> dense;            // set when the candidate is dense
  std::optional<Condition> counterexample;  // set when it is not
};
DistinctReport dense_distinct(const FiniteCohenPoset& poset, int row1, int row2);

// Descending chain through a family of dense sets over an arbitrary finite
// poset. Starts at a maximal element; each step moves to a weakest member of
// the next dense set below the current condition, with ties broken by the
// seeded generator. The up-set of the final condition is a filter meeting
// every set of the family.
struct HitResult {
  std::vector<int> chain;  // starts at the start element, one entry per step
  Filter filter;
};
HitResult hit_dense_sets(const PosetPtr& poset, const std::vector<DenseSet>& family,
                         std::uint64_t seed);

Condition union_of_filter(const FiniteCohenPoset& poset, const Filter& filter);

// ---------------------------------------------------------------------------
// Lazy (unbounded columns)

struct LazyCohenPoset {
  int rows = 0;
  std::vector<std::string> row_labels;
};

LazyCohenPoset cohen_poset_lazy(int rows);

// A dense set of the lazy poset, given constructively: `contains` tests
// membership and `extend` returns a member at or below any condition.
class LazyDense {
public:
  enum class Kind { Point, Distinct };

  Kind kind() const { return kind_; }
  bool contains(const Condition& c) const;
  Condition extend(const Condition& c, std::mt19937& rng) const;
  std::string describe(const std::vector<std::string>& row_labels) const;

private:
  friend LazyDense dense_point(const LazyCohenPoset&, int row, int col);
  friend LazyDense dense_distinct(const LazyCohenPoset&, int row1, int row2);
  LazyDense(Kind kind, int a, int b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  int a_;  // Point: row;  Distinct: first row
  int b_;  // Point: col;  Distinct: second row
};

LazyDense dense_point(const LazyCohenPoset& poset, int row, int col);
LazyDense dense_distinct(const LazyCohenPoset& poset, int row1, int row2);

struct LazyHitResult {
  std::vector<Condition> chain;  // chain.front() is the start condition
  const Condition& final_condition() const { return chain.back(); }
};
LazyHitResult hit_dense_sets(const LazyCohenPoset& poset, const std::vector<LazyDense>& family,
                             std::uint64_t seed);

// The union of the up-set filter generated by the final chain condition,
// which is just that condition; re-checks that the chain really descends.
Condition union_of_chain(const LazyHitResult& result);

// ---------------------------------------------------------------------------
// Forcing relation: p forces f iff embed(p) <= [[f]].

bool forces(const Completion& completion, int condition, const Formula& sentence,
            ValuationContext& ctx);
bool forces(const Completion& completion, const std::string& condition_id,
            const Formula& sentence, ValuationContext& ctx);

}  // namespace forcelab
