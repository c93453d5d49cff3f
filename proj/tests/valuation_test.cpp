#include <doctest.h>

#include <string>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"
#include "forcelab/oracle.hpp"
#include "forcelab/valuation.hpp"
#include "testutil.hpp"

using namespace forcelab;
using forcelab::testing::half_member_universe;
using forcelab::testing::sentence_corpus;
using forcelab::testing::universe_ids;

namespace {

Elem value_of(ValuationContext& ctx, const std::string& text) {
  return ctx.val_formula(*parse_formula(text));
}

}  // namespace

TEST_SUITE("valuation") {
  TEST_CASE("the half-member example takes the expected values") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = half_member_universe(algebra);
    ValuationContext ctx(universe);

    CHECK(value_of(ctx, "z = z") == algebra->one());
    CHECK(value_of(ctx, "u = z") == parse_element(algebra, "a1"));
    CHECK(value_of(ctx, "z in u") == parse_element(algebra, "a0"));
    CHECK(value_of(ctx, "u in u") == algebra->zero());
    CHECK(value_of(ctx, "z in z") == algebra->zero());
    CHECK(value_of(ctx, "exists x . x in u") == parse_element(algebra, "a0"));
    CHECK(value_of(ctx, "forall x . x in u") == algebra->zero());
    CHECK(value_of(ctx, "z sub u") == algebra->one());
    CHECK(value_of(ctx, "u sub z") == parse_element(algebra, "a1"));
    CHECK(ctx.val_subset(universe.index_of("u"), universe.index_of("z")) ==
          parse_element(algebra, "a1"));
  }

  TEST_CASE("connectives land on the algebra operations") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = half_member_universe(algebra);
    ValuationContext ctx(universe);
    Elem zu = value_of(ctx, "z in u");

    CHECK(value_of(ctx, "~z in u") == complement(zu));
    CHECK(value_of(ctx, "z in u & u = z") == meet(zu, value_of(ctx, "u = z")));
    CHECK(value_of(ctx, "z in u | u = z") == join(zu, value_of(ctx, "u = z")));
    CHECK(value_of(ctx, "z in u -> u = z") == implies(zu, value_of(ctx, "u = z")));
    CHECK(value_of(ctx, "z in u <-> z in u") == algebra->one());
  }

  TEST_CASE("equality laws hold exhaustively over small universes") {
    for (int atoms = 1; atoms <= 2; ++atoms) {
      auto algebra = Algebra::make(atoms);
      NameUniverse universe = universe_up_to_rank(algebra, 1);
      ValuationContext ctx(universe);
      const int n = universe.size();
      for (int x = 0; x < n; ++x) {
        CHECK(ctx.val_eq(x, x) == algebra->one());
        for (int y = 0; y < n; ++y) {
          Elem xy = ctx.val_eq(x, y);
          CHECK(xy == ctx.val_eq(y, x));
          for (int z = 0; z < n; ++z) {
            CHECK(leq(meet(xy, ctx.val_eq(y, z)), ctx.val_eq(x, z)));
            CHECK(leq(meet(xy, ctx.val_mem(x, z)), ctx.val_mem(y, z)));
            CHECK(leq(meet(xy, ctx.val_mem(z, x)), ctx.val_mem(z, y)));
          }
        }
      }
    }
  }

  TEST_CASE("bounded quantifiers agree with their unbounded expansions") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = random_universe(algebra, 7, 3, 5);
    ValuationContext ctx(universe);
    for (int y = 0; y < universe.size(); ++y) {
      const std::string& yid = universe.name(y).id;
      for (int x = 0; x < universe.size(); ++x) {
        const std::string& xid = universe.name(x).id;
        CHECK(value_of(ctx, "forall w in " + yid + " . w in " + xid) ==
              value_of(ctx, "forall w . (w in " + yid + " -> w in " + xid + ")"));
        CHECK(value_of(ctx, "exists w in " + yid + " . w = " + xid) ==
              value_of(ctx, "exists w . (w in " + yid + " & w = " + xid + ")"));
      }
    }
  }

  TEST_CASE("memoization is transparent") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = random_universe(algebra, 11, 3, 4);
    ValuationContext memoized(universe, true);
    ValuationContext plain(universe, false);
    CHECK(memoized.memoize());
    CHECK_FALSE(plain.memoize());
    for (const FormulaPtr& f : sentence_corpus(3, 60, universe_ids(universe))) {
      CHECK(memoized.val_formula(*f) == plain.val_formula(*f));
    }
  }

  TEST_CASE("tracing records the atomic subcomputations") {
    auto algebra = Algebra::make(2);
    NameUniverse universe = half_member_universe(algebra);
    ValuationContext ctx(universe);
    ctx.set_trace(true);
    ctx.val_mem(universe.index_of("z"), universe.index_of("u"));
    REQUIRE_FALSE(ctx.trace().empty());
    bool saw_eq = false;
    bool saw_mem = false;
    for (const TraceEntry& entry : ctx.trace()) {
      if (entry.op == TraceEntry::Op::Eq && entry.x == 0 && entry.y == 0) {
        saw_eq = true;
        CHECK(entry.result == algebra->one());
      }
      if (entry.op == TraceEntry::Op::Mem && entry.x == 0 && entry.y == 1) {
        saw_mem = true;
        CHECK(entry.result == algebra->atom(0));
      }
    }
    CHECK(saw_eq);
    CHECK(saw_mem);
    ctx.clear_trace();
    CHECK(ctx.trace().empty());
  }

  TEST_CASE("values match a classical recomputation on random corpora") {
    for (int atoms = 1; atoms <= 3; ++atoms) {
      auto algebra = Algebra::make(atoms);
      NameUniverse universe = random_universe(algebra, 100 + atoms, 3, 5);
      ValuationContext ctx(universe);
      auto corpus = sentence_corpus(500 + atoms, 150, universe_ids(universe));
      REQUIRE(corpus.size() >= 100);
      for (const FormulaPtr& f : corpus) {
        CHECK(ctx.val_formula(*f) == oracle::classical_value(universe, *f));
      }
    }
  }

  TEST_CASE("evaluation rejects unknown constants and open formulas") {
    auto algebra = Algebra::make(1);
    NameUniverse universe = half_member_universe(algebra);
    ValuationContext ctx(universe);
    CHECK_THROWS_AS(value_of(ctx, "z = nosuch"), DomainError);
    CHECK_THROWS_AS(ctx.val_formula(*Formula::eq(Term::var("x"), Term::constant("z"))),
                    DomainError);
    CHECK_THROWS_AS(ctx.val_eq(0, 5), DomainError);
    CHECK_THROWS_AS(ctx.val_mem(-1, 0), DomainError);

    Env env;
    env.bind("x", universe.index_of("u"));
    CHECK(ctx.val_formula(*Formula::eq(Term::var("x"), Term::constant("u")), env) ==
          algebra->one());
    CHECK(env.to_string() == "{x=#1}");
  }
}
