#pragma once

// Shared fixtures for the test suite: deterministic sentence corpora and the
// small universes most tests revolve around.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"

namespace forcelab::testing {

inline std::vector<std::string> universe_ids(const NameUniverse& universe) {
  std::vector<std::string> ids;
  for (int i = 0; i < universe.size(); ++i) {
    ids.push_back(universe.name(i).id);
  }
  return ids;
}

// Distinct sentences (by canonical print) over the given constants. May
// return fewer than `count` when the sentence space runs dry.
inline std::vector<FormulaPtr> sentence_corpus(std::uint64_t seed, int count,
                                               const std::vector<std::string>& constants,
                                               int max_depth = 3) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  SentenceGenOptions options;
  options.constants = constants;
  options.max_depth = max_depth;
  std::vector<FormulaPtr> corpus;
  std::set<std::string> seen;
  for (int tries = 0; static_cast<int>(corpus.size()) < count && tries < count * 60; ++tries) {
    FormulaPtr f = random_sentence(rng, options);
    if (seen.insert(to_string(*f)).second) {
      corpus.push_back(std::move(f));
    }
  }
  return corpus;
}

// The running two-name example: the empty name z and u = {z -> a0}.
inline NameUniverse half_member_universe(const AlgebraPtr& algebra) {
  NameUniverse universe(algebra);
  universe = universe.with_name({"z", {}});
  universe = universe.with_name({"u", {{0, algebra->atom(0)}}});
  return universe;
}

}  // namespace forcelab::testing
