#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"
#include "forcelab/oracle.hpp"
#include "forcelab/quotient.hpp"
#include "forcelab/valuation.hpp"
#include "testutil.hpp"

using namespace forcelab;
using forcelab::testing::half_member_universe;
using forcelab::testing::sentence_corpus;
using forcelab::testing::universe_ids;

TEST_SUITE("quotient") {
  TEST_CASE("the half-member example splits by the chosen ultrafilter") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = half_member_universe(algebra);

    // Under U(a0) the entry value a0 counts as true: u becomes {z}.
    QuotientModel keep = QuotientModel::build(universe, Ultrafilter(algebra, 0));
    CHECK(keep.class_count() == 2);
    CHECK(keep.class_of(0) != keep.class_of(1));
    CHECK(keep.has_edge(keep.class_of(0), keep.class_of(1)));
    CHECK_FALSE(keep.has_edge(keep.class_of(1), keep.class_of(0)));
    std::vector<HFSet> collapsed = keep.mostowski_collapse();
    CHECK(collapsed[keep.class_of(0)].to_string() == "{}");
    CHECK(collapsed[keep.class_of(1)].to_string() == "{{}}");

    // Under U(a1) it counts as false: u collapses onto z.
    QuotientModel drop = QuotientModel::build(universe, Ultrafilter(algebra, 1));
    CHECK(drop.class_count() == 1);
    CHECK(drop.class_of(0) == drop.class_of(1));
    CHECK(drop.edges().empty());
    CHECK(drop.mostowski_collapse()[0].to_string() == "{}");
    CHECK(drop.representative(0) == 0);
  }

  TEST_CASE("build rejects an ultrafilter from a different algebra") {
    auto algebra = Algebra::make(2);
    auto other = Algebra::make(3);
    NameUniverse universe = half_member_universe(algebra);
    CHECK_THROWS_AS(QuotientModel::build(universe, Ultrafilter(other, 0)), DomainError);
  }

  TEST_CASE("sentences hold in the quotient exactly when their value lands in the ultrafilter") {
    for (int atoms = 1; atoms <= 3; ++atoms) {
      auto algebra = Algebra::make(atoms);
      NameUniverse universe = random_universe(algebra, 200 + atoms, 3, 5);
      ValuationContext ctx(universe);
      auto corpus = sentence_corpus(700 + atoms, 120, universe_ids(universe));
      REQUIRE(corpus.size() >= 80);
      for (const Ultrafilter& uf : ultrafilters(algebra)) {
        QuotientModel model = QuotientModel::build(universe, uf);
        for (const FormulaPtr& f : corpus) {
          CHECK(model.truth(*f) == uf.contains(ctx.val_formula(*f)));
        }
      }
    }
  }

  TEST_CASE("truth rejects open formulas") {
    auto algebra = Algebra::make(1);
    QuotientModel model =
        QuotientModel::build(half_member_universe(algebra), Ultrafilter(algebra, 0));
    CHECK_THROWS_AS(model.truth(*Formula::mem(Term::var("x"), Term::constant("u"))), DomainError);
    CHECK_THROWS_AS(model.truth(*parse_formula("nosuch = z")), DomainError);
  }

  TEST_CASE("collapse matches the per-atom reading of every name") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = random_universe(algebra, 9, 4, 6);
    for (const Ultrafilter& uf : ultrafilters(algebra)) {
      QuotientModel model = QuotientModel::build(universe, uf);
      std::vector<HFSet> collapsed = model.mostowski_collapse();
      REQUIRE(static_cast<int>(collapsed.size()) == model.class_count());
      for (int i = 0; i < universe.size(); ++i) {
        HFSet read = oracle::section(universe, i, uf.generator_atom());
        CHECK(collapsed[model.class_of(i)] == read);
      }
      // Distinct classes collapse to distinct sets.
      std::map<std::string, int> seen;
      for (int cls = 0; cls < model.class_count(); ++cls) {
        auto [it, fresh] = seen.emplace(collapsed[cls].to_string(), cls);
        CHECK(fresh);
      }
    }
  }

  TEST_CASE("class members are grouped by Boolean equality") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = random_universe(algebra, 31, 4, 5);
    ValuationContext ctx(universe);
    for (const Ultrafilter& uf : ultrafilters(algebra)) {
      QuotientModel model = QuotientModel::build(universe, uf);
      for (int x = 0; x < universe.size(); ++x) {
        for (int y = 0; y < universe.size(); ++y) {
          CHECK((model.class_of(x) == model.class_of(y)) == uf.contains(ctx.val_eq(x, y)));
          bool edge = model.has_edge(model.class_of(x), model.class_of(y));
          CHECK(edge == uf.contains(ctx.val_mem(x, y)));
        }
      }
    }
  }
}
