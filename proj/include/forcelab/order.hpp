#pragma once

// Finite partial orders of forcing conditions. `q <= p` reads "q is stronger
// than p" (q carries at least as much information). Completion turns a poset
// into the Boolean algebra of regular open subsets of its down-set topology,
// re-expressed as a plain powerset-of-atoms algebra.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"

namespace forcelab {

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

class Poset : public std::enable_shared_from_this<Poset> {
public:
  // Builds from a generating relation; computes the reflexive-transitive
  // closure and rejects cycles (antisymmetry violations). `le_pairs` entries
  // (a, b) assert a <= b.
  static PosetPtr make(std::vector<std::string> ids,
                       const std::vector<std::pair<int, int>>& le_pairs);

  // Line format: `elem <id>`, `le <id> <id>` (first <= second), `#` comments
  // and blank lines. Ids match [A-Za-z0-9_()>,-]+.
  static PosetPtr parse(std::string_view text);

  // Trusted constructor for generated posets whose `below` lists are already
  // reflexive and transitively closed; only antisymmetry is re-checked.
  static PosetPtr from_closed(std::vector<std::string> ids,
                              std::vector<std::vector<int>> below);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int i) const { return ids_[i]; }
  int index_of(const std::string& id) const;        // throws on unknown id
  std::optional<int> find(const std::string& id) const;

  bool leq(int a, int b) const;                     // a <= b
  const std::vector<int>& below(int p) const { return below_[p]; }  // sorted, includes p
  bool is_minimal(int p) const { return below_[p].size() == 1; }
  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  bool compatible(int p, int q) const;              // common lower bound exists

private:
  Poset() = default;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> below_;
};

// D is dense when every condition has a member of D at or below it.
bool is_dense(const Poset& poset, const std::vector<int>& members);

// F is a filter when it is closed upward and any two members have a common
// lower bound inside F. (The empty set passes both clauses vacuously.)
bool is_filter(const Poset& poset, const std::vector<int>& members);

// Validated wrappers; `make` throws when the defining property fails.
class DenseSet {
public:
  static DenseSet make(PosetPtr poset, std::vector<int> members);
  const PosetPtr& poset() const { return poset_; }
  const std::vector<int>& members() const { return members_; }
  bool contains(int p) const;

private:
  DenseSet(PosetPtr poset, std::vector<int> members)
      : poset_(std::move(poset)), members_(std::move(members)) {}
  PosetPtr poset_;
  std::vector<int> members_;  // sorted
};

class Filter {
public:
  static Filter make(PosetPtr poset, std::vector<int> members);
  static Filter upset(PosetPtr poset, int p);  // principal filter of p
  const PosetPtr& poset() const { return poset_; }
  const std::vector<int>& members() const { return members_; }
  bool contains(int p) const;

private:
  Filter(PosetPtr poset, std::vector<int> members)
      : poset_(std::move(poset)), members_(std::move(members)) {}
  PosetPtr poset_;
  std::vector<int> members_;  // sorted
};

// F meets every dense set of the family.
bool is_generic(const Filter& filter, const std::vector<DenseSet>& family);

// F meets every dense subset of its poset, checked by exhaustive
// enumeration; refuses posets with more than `max_elements` conditions.
bool is_generic_all(const Filter& filter, int max_elements = 15);

// Named dense families: `dense <name> = <id> <id> ...` lines, `#` comments.
// Each listed set is validated for density.
std::vector<std::pair<std::string, DenseSet>> parse_dense_family(const PosetPtr& poset,
                                                                 std::string_view text);

// Result of completing a poset: a powerset algebra whose atoms are the
// minimal regular open sets, together with the dense embedding.
//
// Invariants (established at construction):
//   * order-preserving: q <= p implies embed(q) <= embed(p);
//   * incompatibility-preserving: p, q have no common lower bound iff
//     meet(embed(p), embed(q)) = 0;
//   * dense image: every nonzero b has some p with embed(p) <= b.
struct Completion {
  PosetPtr source;
  AlgebraPtr target;
  std::vector<Elem> embed;  // indexed by poset element

  const Elem& embed_of(int p) const { return embed[p]; }
  const Elem& embed_of(const std::string& id) const { return embed[source->index_of(id)]; }
};

Completion complete(const PosetPtr& poset, int max_elements = 16);

}  // namespace forcelab
