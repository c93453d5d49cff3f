#pragma once

// B-valued names and finite name universes. A name is a finite map from
// earlier names to algebra elements; a universe is an ordered list of names
// closed under children (every entry points at a smaller index), so the
// membership structure is a DAG by construction. Universes are immutable:
// extension returns a new universe.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/hf.hpp"

namespace forcelab {

struct NameEntry {
  int child;   // index of an earlier name in the universe
  Elem value;  // may be 0; zero entries are kept, not pruned
};

struct Name {
  std::string id;                  // identifier usable as a formula constant
  std::vector<NameEntry> entries;  // sorted by child, children distinct
};

class NameUniverse {
public:
  explicit NameUniverse(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  int size() const { return static_cast<int>(names_.size()); }
  const Name& name(int i) const;
  int rank(int i) const;
  int index_of(const std::string& id) const;  // throws on unknown id
  std::optional<int> find(const std::string& id) const;

  // Validates the name (fresh id, identifier syntax, children in range,
  // values from this universe's algebra) and returns the extended universe.
  NameUniverse with_name(Name name) const;

  // Smallest "<stem><k>" not in use.
  std::string fresh_id(const std::string& stem) const;

private:
  friend std::pair<NameUniverse, int> check_name(const NameUniverse&, const HFSet&);
  friend std::pair<NameUniverse, int> powerset_name(const NameUniverse&, int, std::uint64_t);
  friend NameUniverse load_names(const AlgebraPtr&, std::string_view);
  friend NameUniverse universe_up_to_rank(const AlgebraPtr&, int, std::uint64_t);
  friend NameUniverse random_universe(const AlgebraPtr&, std::uint64_t, int, int);

  // In-place variant of with_name; builders use it on universes they have
  // not shared yet.
  void add(Name name);
  static int intern_check_name(NameUniverse& universe, const HFSet& set);

  AlgebraPtr algebra_;
  std::vector<Name> names_;
  std::vector<int> ranks_;
  std::unordered_map<std::string, int> index_;
  std::map<std::string, int> check_cache_;  // canonical HF string -> index
};

// Interns the canonical name of an hereditarily finite set: every entry has
// value 1 and children are the check-names of the elements. Deduplicated by
// set equality, so the map s -> index is injective within one universe.
std::pair<NameUniverse, int> check_name(const NameUniverse& universe, const HFSet& set);

// The name playing the role of the power set of `x`: one entry per function
// from the children of x into the algebra, each materialized as a fresh
// name, valued by how much of it sits inside x. Errors when |B|^|dom(x)|
// exceeds the cap.
std::pair<NameUniverse, int> powerset_name(const NameUniverse& universe, int x,
                                           std::uint64_t max_entries = 4096);

// Line format: `name <id> { <child> : <element-expr>, ... }`, `#` comments.
// Children must be declared earlier in the file.
NameUniverse load_names(const AlgebraPtr& algebra, std::string_view text);

// Every name of rank <= max_rank, enumerated canonically and without
// duplicates as functions. Errors when the total would exceed the cap.
NameUniverse universe_up_to_rank(const AlgebraPtr& algebra, int max_rank,
                                 std::uint64_t max_names = 100000);

// Seeded universe with `rank1_count` names of rank 1 and `rank2_count` of
// rank <= 2 on top of the empty name. Used by the self-check command and the
// test corpora.
NameUniverse random_universe(const AlgebraPtr& algebra, std::uint64_t seed, int rank1_count,
                             int rank2_count);

}  // namespace forcelab
