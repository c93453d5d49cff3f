#pragma once

// Independent checking paths, kept deliberately naive. Everything here
// recomputes from first principles: classical two-valued truth over small
// structures, exhaustive enumeration of dense sets / filters / regular opens
// / ultrafilters, and a catalog of all small posets up to isomorphism. None
// of it shares algorithms with the main modules, so agreement between the
// two paths is meaningful evidence.
//
// The bridge to the Boolean-valued side: reading a name atom by atom yields
// an ordinary hereditarily finite set (the atom's "section"), and a sentence
// holds in the section structure at atom a exactly when a lies below the
// sentence's Boolean value.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"
#include "forcelab/order.hpp"

namespace forcelab::oracle {

// A finite model of the membership language: carrier {0..n-1}, one binary
// relation, named constants.
struct FiniteStructure {
  int carrier_size = 0;
  std::set<std::pair<int, int>> membership;  // (x, y) meaning x is in y
  std::map<std::string, int> constants;

  bool related(int x, int y) const { return membership.count({x, y}) > 0; }
};

// Plain Tarski truth by structural recursion; quantifiers walk the whole
// carrier, bounded ones walk the predecessors of the bound.
bool tarski_eval(const Formula& f, const FiniteStructure& s,
                 std::vector<std::pair<std::string, int>>& env);
bool holds(const FiniteStructure& s, const Formula& sentence);

// The hereditarily finite set a name denotes when every algebra element is
// read as "true iff it contains the given atom".
HFSet section(const NameUniverse& universe, int name, int atom);

// All sections of a universe at one atom, deduplicated into a carrier with
// real membership between the sets; every name id appears as a constant.
FiniteStructure section_structure(const NameUniverse& universe, int atom);

// [[sentence]] recomputed classically: the element whose atoms are exactly
// those whose section structure satisfies the sentence.
Elem classical_value(const NameUniverse& universe, const Formula& sentence);

// Exhaustive enumerations (members sorted, results in mask/lexicographic
// order). Each refuses posets larger than `max_elements`.
std::vector<std::vector<int>> enumerate_dense(const PosetPtr& poset, int max_elements = 15);
std::vector<std::vector<int>> enumerate_filters(const PosetPtr& poset, int max_elements = 15);

// Regular open subsets of the down-set topology, as element masks.
std::vector<std::uint32_t> enumerate_regular_opens(const PosetPtr& poset, int max_elements = 16);

// Every subset of the algebra satisfying the ultrafilter laws, found by
// checking all subsets; capped at 4 atoms (65536 subsets).
std::vector<std::vector<Elem>> enumerate_ultrafilters_bruteforce(const AlgebraPtr& algebra,
                                                                 int max_atoms = 4);

// All posets with exactly n (or up to n) elements, one per isomorphism
// class, built by enumerating downward-closed labelings and deduplicating
// through the minimum relation-matrix encoding over all permutations.
// Capped at n = 6 (318 classes).
std::vector<PosetPtr> all_posets(int n);
std::vector<PosetPtr> all_posets_up_to(int n);

}  // namespace forcelab::oracle
