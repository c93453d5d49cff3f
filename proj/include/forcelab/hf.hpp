#pragma once

// Hereditarily finite sets in canonical form: element lists are recursively
// canonicalized, sorted and deduplicated, so structural equality is set
// equality and string forms are unique.

#include <string>
#include <string_view>
#include <vector>

#include "forcelab/errors.hpp"

namespace forcelab {

class HFSet {
public:
  HFSet() = default;                           // the empty set
  explicit HFSet(std::vector<HFSet> elements);  // canonicalizes

  const std::vector<HFSet>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  int rank() const;  // 0 for {}, otherwise 1 + max rank of an element
  bool contains(const HFSet& x) const;

  // Nested brace form, e.g. "{{},{{}}}". Unique per set.
  std::string to_string() const;
  static HFSet parse(std::string_view text);

  // Every set of rank <= k, in canonical order. k <= 4 (the next level has
  // 2^65536 sets).
  static std::vector<HFSet> all_up_to_rank(int k);

  // Total order on canonical sets: lexicographic over the element lists.
  static int compare(const HFSet& a, const HFSet& b);

  friend bool operator==(const HFSet& a, const HFSet& b) { return compare(a, b) == 0; }
  friend bool operator!=(const HFSet& a, const HFSet& b) { return compare(a, b) != 0; }
  friend bool operator<(const HFSet& a, const HFSet& b) { return compare(a, b) < 0; }

private:
  std::vector<HFSet> elems_;
};

}  // namespace forcelab
