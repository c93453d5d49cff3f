#pragma once

// Quotient of a name universe by an ultrafilter U: names are identified when
// [[x = y]] lands in U, and the induced membership relation holds when
// [[x in y]] does. Well-definedness (independence of representatives) is
// re-checked during construction. `truth` evaluates sentences classically
// over the classes; `mostowski_collapse` reads the classes back as honest
// hereditarily finite sets when the membership digraph is well-founded and
// extensional.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"

namespace forcelab {

class QuotientModel {
public:
  static QuotientModel build(NameUniverse universe, Ultrafilter ultrafilter);

  const NameUniverse& universe() const { return universe_; }
  const Ultrafilter& ultrafilter() const { return ultrafilter_; }

  int class_count() const { return static_cast<int>(members_.size()); }
  int class_of(int name_index) const;
  const std::vector<std::vector<int>>& class_members() const { return members_; }
  // Earliest member in universe order.
  int representative(int cls) const { return members_[cls].front(); }

  bool has_edge(int from_cls, int to_cls) const;  // from in to
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  // Classical evaluation; quantifiers range over the classes. The formula
  // must be a sentence.
  bool truth(const Formula& sentence) const;

  // One hereditarily finite set per class. Throws on membership cycles and
  // on extensionality failures (two classes with equal collapse).
  std::vector<HFSet> mostowski_collapse() const;

private:
  QuotientModel(NameUniverse universe, Ultrafilter ultrafilter)
      : universe_(std::move(universe)), ultrafilter_(std::move(ultrafilter)) {}

  bool truth_eval(const Formula& f, std::vector<std::pair<std::string, int>>& env) const;
  int resolve(const Term& term, const std::vector<std::pair<std::string, int>>& env) const;

  NameUniverse universe_;
  Ultrafilter ultrafilter_;
  std::vector<int> class_of_;             // name index -> class
  std::vector<std::vector<int>> members_;  // class -> sorted name indices
  std::set<std::pair<int, int>> edges_;
};

}  // namespace forcelab
