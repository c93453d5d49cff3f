#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"
#include "forcelab/oracle.hpp"
#include "forcelab/order.hpp"
#include "forcelab/valuation.hpp"
#include "testutil.hpp"

using namespace forcelab;
using forcelab::testing::sentence_corpus;
using forcelab::testing::universe_ids;

TEST_SUITE("forcing") {
  TEST_CASE("conditions behave as partial functions") {
    Condition c;
    CHECK(c.empty());
    CHECK(c.max_col() == -1);
    c.set(0, 2, 1);
    c.set(1, 0, 0);
    CHECK(c.at(0, 2) == 1);
    CHECK_FALSE(c.defined_at(0, 0));
    CHECK(c.max_col() == 2);
    CHECK_NOTHROW(c.set(0, 2, 1));  // same bit again is fine
    CHECK_THROWS_AS(c.set(0, 2, 0), DomainError);
    CHECK_THROWS_AS(c.set(-1, 0, 0), DomainError);
    CHECK_THROWS_AS(c.set(0, -1, 0), DomainError);
    CHECK_THROWS_AS(c.set(0, 0, 2), DomainError);

    Condition weaker;
    weaker.set(0, 2, 1);
    CHECK(c.extends(weaker));
    CHECK_FALSE(weaker.extends(c));
    CHECK(c.extends(Condition{}));
  }

  TEST_CASE("condition text form round trips") {
    std::vector<std::string> labels{"r0", "r1"};
    Condition c;
    c.set(1, 3, 0);
    c.set(0, 0, 1);
    CHECK(c.to_string(labels) == "{(r0,0)->1,(r1,3)->0}");
    CHECK(Condition::parse("{(r0,0)->1,(r1,3)->0}", labels) == c);
    CHECK(Condition::parse(" { ( r0 , 0 ) -> 1 , ( r1 , 3 ) -> 0 } ", labels) == c);
    CHECK(Condition::parse("{}", labels).empty());
    CHECK(Condition{}.to_string(labels) == "{}");

    CHECK_THROWS_AS(Condition::parse("{(r7,0)->1}", labels), SyntaxError);
    CHECK_THROWS_AS(Condition::parse("{(r0,0)->3}", labels), SyntaxError);
    CHECK_THROWS_AS(Condition::parse("{(r0,0)->1", labels), SyntaxError);
    CHECK_THROWS_AS(Condition::parse("{(r0,0)->1,(r0,0)->0}", labels), DomainError);
  }

  TEST_CASE("union of conditions requires agreement") {
    Condition a, b, clash;
    a.set(0, 0, 1);
    b.set(0, 1, 0);
    b.set(0, 0, 1);
    clash.set(0, 0, 0);
    Condition u = union_conditions({a, b});
    CHECK(u.at(0, 0) == 1);
    CHECK(u.at(0, 1) == 0);
    CHECK(union_conditions({}).empty());
    CHECK_THROWS_AS(union_conditions({a, clash}), DomainError);
  }

  TEST_CASE("finite truncations have one condition per cell assignment") {
    FiniteCohenPoset tiny = cohen_poset_finite(1, 1);
    CHECK(tiny.poset->size() == 3);
    FiniteCohenPoset small = cohen_poset_finite(1, 2);
    CHECK(small.poset->size() == 9);
    FiniteCohenPoset grid = cohen_poset_finite(2, 2);
    CHECK(grid.poset->size() == 81);
    CHECK(grid.poset->maximal_elements() == std::vector<int>{0});
    CHECK(grid.condition_of(0).empty());
    CHECK(grid.poset->minimal_elements().size() == 16);  // all four cells defined

    // Poset order is reverse inclusion of the condition maps.
    for (int p = 0; p < grid.poset->size(); p += 7) {
      for (int q = 0; q < grid.poset->size(); q += 5) {
        CHECK(grid.poset->leq(q, p) ==
              grid.condition_of(q).extends(grid.condition_of(p)));
      }
    }
    // Indices round trip and ids avoid brace characters.
    for (int p = 0; p < grid.poset->size(); ++p) {
      CHECK(grid.index_of(grid.condition_of(p)) == p);
      CHECK(grid.poset->id(p).find('{') == std::string::npos);
    }
    CHECK_THROWS_AS(cohen_poset_finite(13, 1), DomainError);
    CHECK_THROWS_AS(cohen_poset_finite(0, 1), DomainError);

    Condition outside;
    outside.set(0, 5, 1);
    CHECK_THROWS_AS(grid.index_of(outside), DomainError);
  }

  TEST_CASE("point sets are dense, row separation is not dense in a truncation") {
    FiniteCohenPoset grid = cohen_poset_finite(2, 1);
    DenseSet points = dense_point(grid, 1, 0);
    CHECK(is_dense(*grid.poset, points.members()));
    CHECK_THROWS_AS(dense_point(grid, 2, 0), DomainError);
    CHECK_THROWS_AS(dense_point(grid, 0, 1), DomainError);

    DistinctReport report = dense_distinct(grid, 0, 1);
    REQUIRE_FALSE(report.dense.has_value());
    REQUIRE(report.counterexample.has_value());
    CHECK(report.counterexample->to_string(grid.row_labels) == "{(r0,0)->0,(r1,0)->0}");
    for (int member : report.members) {
      CHECK_FALSE(grid.condition_of(member).extends(*report.counterexample));
    }

    // More columns do not help: a fully defined condition with equal rows
    // still has no separating extension inside the grid.
    FiniteCohenPoset wide = cohen_poset_finite(2, 2);
    DistinctReport two_cols = dense_distinct(wide, 0, 1);
    CHECK_FALSE(two_cols.dense.has_value());
    REQUIRE(two_cols.counterexample.has_value());
    CHECK_FALSE(is_dense(*wide.poset, two_cols.members));
    CHECK(two_cols.members.size() == 32);  // 81 conditions, 7*7 never separate
    CHECK_THROWS_AS(dense_distinct(wide, 0, 0), DomainError);
  }

  TEST_CASE("hitting a dense family yields a generic-for-the-family filter") {
    FiniteCohenPoset grid = cohen_poset_finite(2, 2);
    std::vector<DenseSet> family;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        family.push_back(dense_point(grid, r, c));
      }
    }

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      HitResult result = hit_dense_sets(grid.poset, family, seed);
      REQUIRE_FALSE(result.chain.empty());
      CHECK(result.chain.front() == 0);  // the empty condition is the single start
      for (size_t i = 1; i < result.chain.size(); ++i) {
        CHECK(grid.poset->leq(result.chain[i], result.chain[i - 1]));
      }
      CHECK(is_generic(result.filter, family));
      CHECK(result.filter.contains(result.chain.back()));

      // Hitting all four point sets makes the union a total function.
      Condition merged = union_of_filter(grid, result.filter);
      CHECK(merged == grid.condition_of(result.chain.back()));
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          CHECK(merged.defined_at(r, c));
        }
      }
    }

    // Same seed, same chain.
    HitResult a = hit_dense_sets(grid.poset, family, 5);
    HitResult b = hit_dense_sets(grid.poset, family, 5);
    CHECK(a.chain == b.chain);
  }

  TEST_CASE("hitting every dense set of a small poset gives a generic filter") {
    auto poset = Poset::make({"top", "l", "r", "ll"}, {{1, 0}, {2, 0}, {3, 1}});
    std::vector<DenseSet> family;
    for (const std::vector<int>& members : oracle::enumerate_dense(poset)) {
      family.push_back(DenseSet::make(poset, members));
    }
    HitResult result = hit_dense_sets(poset, family, 1);
    CHECK(is_generic_all(result.filter));
    CHECK(poset->is_minimal(result.chain.back()));
  }

  TEST_CASE("lazy dense sets extend any condition into themselves") {
    LazyCohenPoset lazy = cohen_poset_lazy(3);
    std::mt19937 rng(99);
    LazyDense point = dense_point(lazy, 2, 4);
    LazyDense distinct = dense_distinct(lazy, 0, 1);
    CHECK_THROWS_AS(dense_point(lazy, 3, 0), DomainError);
    CHECK_THROWS_AS(dense_distinct(lazy, 1, 1), DomainError);

    Condition start;
    start.set(0, 0, 1);
    CHECK_FALSE(point.contains(start));
    Condition pointed = point.extend(start, rng);
    CHECK(point.contains(pointed));
    CHECK(pointed.extends(start));
    CHECK(pointed.at(2, 4).has_value());
    CHECK(point.extend(pointed, rng) == pointed);  // already inside

    Condition split = distinct.extend(start, rng);
    CHECK(distinct.contains(split));
    CHECK(split.extends(start));
    bool separated = false;
    for (int col = 0; col <= split.max_col(); ++col) {
      auto x = split.at(0, col);
      auto y = split.at(1, col);
      separated = separated || (x && y && *x != *y);
    }
    CHECK(separated);

    CHECK(point.describe(lazy.row_labels) == "defined at (r2,4)");
    CHECK(distinct.describe(lazy.row_labels) == "rows r0 and r1 differ at some column");
  }

  TEST_CASE("lazy chains stay within fresh columns and reach every set") {
    LazyCohenPoset lazy = cohen_poset_lazy(3);
    std::vector<LazyDense> family;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 2; ++c) {
        family.push_back(dense_point(lazy, r, c));
      }
    }
    family.push_back(dense_distinct(lazy, 0, 1));
    family.push_back(dense_distinct(lazy, 0, 2));
    family.push_back(dense_distinct(lazy, 1, 2));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      LazyHitResult result = hit_dense_sets(lazy, family, seed);
      REQUIRE(result.chain.size() == family.size() + 1);
      CHECK(result.chain.front().empty());
      for (size_t i = 1; i < result.chain.size(); ++i) {
        CHECK(result.chain[i].extends(result.chain[i - 1]));
        CHECK(family[i - 1].contains(result.chain[i]));
      }
      Condition merged = union_of_chain(result);
      CHECK(merged == result.final_condition());
    }

    LazyHitResult broken = hit_dense_sets(lazy, family, 0);
    std::swap(broken.chain.front(), broken.chain.back());
    CHECK_THROWS_AS(union_of_chain(broken), DomainError);
  }

  TEST_CASE("a condition forces a sentence when its image sits below the value") {
    FiniteCohenPoset grid = cohen_poset_finite(1, 1);
    Completion completion = complete(grid.poset);
    auto algebra = completion.target;

    // Names z (empty) and g plugging the completed poset's own bits: g holds z
    // exactly where cell (0,0) is 1.
    Condition one_bit;
    one_bit.set(0, 0, 1);
    NameUniverse universe(algebra);
    universe = universe.with_name({"z", {}});
    universe = universe.with_name({"g", {{0, completion.embed_of(grid.index_of(one_bit))}}});
    ValuationContext ctx(universe);

    FormulaPtr holds = parse_formula("z in g");
    FormulaPtr fails = parse_formula("~z in g");
    int set_one = grid.index_of(one_bit);
    Condition zero_bit;
    zero_bit.set(0, 0, 0);
    int set_zero = grid.index_of(zero_bit);

    CHECK(forces(completion, set_one, *holds, ctx));
    CHECK_FALSE(forces(completion, 0, *holds, ctx));  // empty condition undecided
    CHECK_FALSE(forces(completion, 0, *fails, ctx));
    CHECK(forces(completion, set_zero, *fails, ctx));
    CHECK(forces(completion, grid.poset->id(set_one), *holds, ctx));
    CHECK_THROWS_AS(forces(completion, 99, *holds, ctx), DomainError);
    CHECK_THROWS_AS(
        forces(completion, 0, *Formula::mem(Term::var("x"), Term::constant("z")), ctx),
        DomainError);
  }

  TEST_CASE("the forcing relation satisfies the textbook laws on a corpus") {
    FiniteCohenPoset grid = cohen_poset_finite(2, 1);
    Completion completion = complete(grid.poset);
    NameUniverse universe = random_universe(completion.target, 77, 3, 4);
    ValuationContext ctx(universe);
    auto corpus = sentence_corpus(900, 40, universe_ids(universe), 2);
    REQUIRE(corpus.size() >= 25);

    for (const FormulaPtr& f : corpus) {
      FormulaPtr negated = Formula::negation(f);
      for (int p = 0; p < grid.poset->size(); ++p) {
        bool direct = forces(completion, p, *f, ctx);
        // No condition forces both a sentence and its negation.
        bool contradictory = direct && forces(completion, p, *negated, ctx);
        CHECK_FALSE(contradictory);
        // Forcing persists under strengthening.
        if (direct) {
          for (int q = 0; q < grid.poset->size(); ++q) {
            if (grid.poset->leq(q, p)) {
              CHECK(forces(completion, q, *f, ctx));
            }
          }
        }
      }
      for (const FormulaPtr& g : corpus) {
        // p forces f & g exactly when it forces both.
        FormulaPtr both = Formula::conj(f, g);
        for (int p = 0; p < grid.poset->size(); p += 3) {
          CHECK(forces(completion, p, *both, ctx) ==
                (forces(completion, p, *f, ctx) && forces(completion, p, *g, ctx)));
        }
      }
    }
  }
}
