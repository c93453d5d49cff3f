#include <doctest.h>

#include <set>
#include <string>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/names.hpp"

using namespace forcelab;

TEST_SUITE("names") {
  TEST_CASE("with_name validates ids, children, and element provenance") {
    auto algebra = Algebra::make(1);
    NameUniverse universe(algebra);
    universe = universe.with_name({"z", {}});
    CHECK(universe.size() == 1);
    CHECK(universe.rank(0) == 0);

    CHECK_THROWS_AS(universe.with_name({"z", {}}), DomainError);    // id taken
    CHECK_THROWS_AS(universe.with_name({"2u", {}}), DomainError);   // bad identifier
    CHECK_THROWS_AS(universe.with_name({"in", {}}), DomainError);   // reserved word
    CHECK_THROWS_AS(universe.with_name({"u", {{1, algebra->one()}}}), DomainError);
    CHECK_THROWS_AS(universe.with_name({"u", {{-1, algebra->one()}}}), DomainError);

    auto other = Algebra::make(2);
    CHECK_THROWS_AS(universe.with_name({"u", {{0, other->one()}}}), DomainError);

    universe = universe.with_name({"u", {{0, algebra->atom(0)}}});
    CHECK(universe.rank(1) == 1);
    CHECK(universe.index_of("u") == 1);
    CHECK_THROWS_AS(universe.index_of("nosuch"), DomainError);
    CHECK_FALSE(universe.find("nosuch").has_value());
    CHECK(universe.fresh_id("u") == "u0");
  }

  TEST_CASE("entries are sorted on insertion and children stay distinct") {
    auto algebra = Algebra::make(1);
    NameUniverse universe(algebra);
    universe = universe.with_name({"z", {}});
    universe = universe.with_name({"s", {{0, algebra->one()}}});
    universe = universe.with_name({"swapped", {{1, algebra->one()}, {0, algebra->one()}}});
    CHECK(universe.name(2).entries[0].child == 0);
    CHECK(universe.name(2).entries[1].child == 1);
    CHECK_THROWS_AS(universe.with_name({"bad", {{0, algebra->one()}, {0, algebra->zero()}}}),
                    DomainError);
    universe = universe.with_name({"ok", {{0, algebra->zero()}, {1, algebra->atom(0)}}});
    CHECK(universe.name(3).entries.size() == 2);  // zero-valued entries are kept
    CHECK(universe.rank(3) == 2);
  }

  TEST_CASE("check names deduplicate by set equality") {
    auto algebra = Algebra::make(2);
    NameUniverse universe(algebra);
    HFSet empty = HFSet::parse("{}");
    HFSet pair = HFSet::parse("{{}, {{}}}");

    auto [u1, empty_index] = check_name(universe, empty);
    auto [u2, pair_index] = check_name(u1, pair);
    CHECK(u2.size() == 3);  // empty, {empty}, and the pair itself
    CHECK(u2.rank(pair_index) == 2);
    for (const NameEntry& entry : u2.name(pair_index).entries) {
      CHECK(entry.value == algebra->one());
    }

    // Interning the same set again, or a subset already present, adds nothing.
    auto [u3, again] = check_name(u2, pair);
    CHECK(u3.size() == 3);
    CHECK(again == pair_index);
    auto [u4, empty_again] = check_name(u3, empty);
    CHECK(u4.size() == 3);
    CHECK(empty_again == empty_index);
  }

  TEST_CASE("power set names enumerate all element-valued functions") {
    auto algebra = Algebra::make(1);
    NameUniverse universe(algebra);
    auto [u1, z] = check_name(universe, HFSet::parse("{}"));
    auto [u2, s] = check_name(u1, HFSet::parse("{{}}"));

    auto [u3, power] = powerset_name(u2, s);
    // dom(s) = {z} and |B| = 2, so two subset candidates: z absent or present.
    REQUIRE(u3.name(power).entries.size() == 2);
    std::set<std::string> values;
    for (const NameEntry& entry : u3.name(power).entries) {
      CHECK(entry.value == algebra->one());
      REQUIRE(u3.name(entry.child).entries.size() == 1);
      values.insert(to_string(u3.name(entry.child).entries[0].value));
    }
    CHECK(values == std::set<std::string>{"{}", "1"});

    CHECK_THROWS_AS(powerset_name(u3, power, 3), DomainError);
    CHECK_THROWS_AS(powerset_name(u3, 99), DomainError);
    (void)z;
  }

  TEST_CASE("name files load and report errors by line") {
    auto algebra = Algebra::make(2);
    auto universe = load_names(algebra,
                               "# running example\n"
                               "name z {}\n"
                               "name u { z : a0 }\n"
                               "name w { z : a0 | a1, u : a1 }\n");
    CHECK(universe.size() == 3);
    CHECK(universe.rank(universe.index_of("w")) == 2);
    CHECK(universe.name(universe.index_of("u")).entries[0].value == algebra->atom(0));

    CHECK_THROWS_AS(load_names(algebra, "name u { z : a0 }\n"), DomainError);
    CHECK_THROWS_AS(load_names(algebra, "name z {}\nname z {}\n"), DomainError);
    CHECK_THROWS_AS(load_names(algebra, "name z {}\nname u { z : a7 }\n"), SyntaxError);
    CHECK_THROWS_AS(load_names(algebra, "garble\n"), DomainError);
  }

  TEST_CASE("rank-bounded universes have the predicted sizes") {
    auto b1 = Algebra::make(1);
    auto b2 = Algebra::make(2);
    // Counts follow (|B|+1)^k: each earlier name is absent or carries one of
    // |B| values. For one atom: 1, then 3, then 3^3 = 27.
    CHECK(universe_up_to_rank(b1, 0).size() == 1);
    CHECK(universe_up_to_rank(b1, 1).size() == 3);
    CHECK(universe_up_to_rank(b1, 2).size() == 27);
    CHECK(universe_up_to_rank(b2, 1).size() == 5);
    CHECK(universe_up_to_rank(b2, 2).size() == 3125);
    CHECK_THROWS_AS(universe_up_to_rank(Algebra::make(3), 2), DomainError);
    CHECK_THROWS_AS(universe_up_to_rank(b2, 3), DomainError);
  }

  TEST_CASE("seeded universes are deterministic and well formed") {
    auto algebra = Algebra::make(2);
    NameUniverse a = random_universe(algebra, 42, 4, 6);
    NameUniverse b = random_universe(algebra, 42, 4, 6);
    NameUniverse c = random_universe(algebra, 43, 4, 6);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() == 11);  // empty name + 4 + 6
    bool all_equal = true;
    bool differs_from_c = (a.size() != c.size());
    for (int i = 0; i < a.size(); ++i) {
      const Name& na = a.name(i);
      const Name& nb = b.name(i);
      if (na.id != nb.id || na.entries.size() != nb.entries.size()) {
        all_equal = false;
        break;
      }
      for (size_t e = 0; e < na.entries.size(); ++e) {
        if (na.entries[e].child != nb.entries[e].child ||
            !(na.entries[e].value == nb.entries[e].value)) {
          all_equal = false;
        }
      }
      if (!differs_from_c && i < c.size()) {
        const Name& nc = c.name(i);
        if (na.entries.size() != nc.entries.size()) {
          differs_from_c = true;
        } else {
          for (size_t e = 0; e < na.entries.size(); ++e) {
            if (na.entries[e].child != nc.entries[e].child ||
                !(na.entries[e].value == nc.entries[e].value)) {
              differs_from_c = true;
            }
          }
        }
      }
      CHECK(a.rank(i) <= 2);
    }
    CHECK(all_equal);
    CHECK(differs_from_c);
  }
}
