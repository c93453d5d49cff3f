#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/oracle.hpp"
#include "forcelab/order.hpp"

using namespace forcelab;

namespace {

// The "N" shape: c <= a, c <= b, d <= b.
PosetPtr n_poset() { return Poset::make({"a", "b", "c", "d"}, {{2, 0}, {2, 1}, {3, 1}}); }

std::vector<int> mask_members(std::uint32_t mask, int n) {
  std::vector<int> members;
  for (int i = 0; i < n; ++i) {
    if ((mask >> i & 1u) != 0) {
      members.push_back(i);
    }
  }
  return members;
}

}  // namespace

TEST_SUITE("order") {
  TEST_CASE("construction closes the relation and rejects cycles") {
    auto poset = Poset::make({"a", "b", "c"}, {{0, 1}, {1, 2}});
    CHECK(poset->leq(0, 2));
    CHECK_FALSE(poset->leq(2, 0));
    CHECK(poset->leq(1, 1));
    CHECK_THROWS_AS(Poset::make({"a", "b"}, {{0, 1}, {1, 0}}), DomainError);
    CHECK_THROWS_AS(Poset::make({"a", "a"}, {}), DomainError);
    CHECK_THROWS_AS(Poset::make({}, {}), DomainError);
  }

  TEST_CASE("file format round trip and errors") {
    auto poset = Poset::parse("# two conditions, q stronger\nelem p\nelem q\nle q p\n");
    CHECK(poset->size() == 2);
    CHECK(poset->leq(poset->index_of("q"), poset->index_of("p")));
    CHECK_THROWS_AS(Poset::parse("le p q\n"), DomainError);
    CHECK_THROWS_AS(Poset::parse("elem p\nle p nosuch\n"), DomainError);
    CHECK_THROWS_AS(Poset::parse("elem p!\n"), DomainError);
    CHECK_THROWS_AS(Poset::parse("bogus line\n"), DomainError);
  }

  TEST_CASE("structure queries on the N-shaped poset") {
    auto poset = n_poset();
    CHECK(poset->minimal_elements() == std::vector<int>{2, 3});
    CHECK(poset->maximal_elements() == std::vector<int>{0, 1});
    CHECK(poset->is_minimal(2));
    CHECK_FALSE(poset->is_minimal(0));
    CHECK(poset->compatible(0, 1));        // c lies below both
    CHECK_FALSE(poset->compatible(2, 3));  // two distinct minimal elements
    CHECK(poset->below(1) == std::vector<int>{1, 2, 3});
  }

  TEST_CASE("density and filter predicates match their enumerations") {
    for (const PosetPtr& poset : oracle::all_posets_up_to(4)) {
      auto dense_list = oracle::enumerate_dense(poset);
      auto filter_list = oracle::enumerate_filters(poset);
      std::set<std::vector<int>> dense(dense_list.begin(), dense_list.end());
      std::set<std::vector<int>> filters(filter_list.begin(), filter_list.end());
      const int n = poset->size();
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        auto members = mask_members(mask, n);
        CHECK(is_dense(*poset, members) == (dense.count(members) > 0));
        CHECK(is_filter(*poset, members) == (filters.count(members) > 0));
      }
    }
  }

  TEST_CASE("validated wrappers reject non-instances") {
    auto poset = n_poset();
    CHECK_THROWS_AS(DenseSet::make(poset, {2}), DomainError);  // misses d
    CHECK_NOTHROW(DenseSet::make(poset, {2, 3}));
    CHECK_THROWS_AS(Filter::make(poset, {0, 1, 3}), DomainError);  // 0 and 3 incompatible...
    CHECK_NOTHROW(Filter::make(poset, {0, 1, 2}));
    Filter up = Filter::upset(poset, 2);
    CHECK(up.members() == std::vector<int>{0, 1, 2});
  }

  TEST_CASE("genericity against a family and against all dense sets") {
    auto poset = n_poset();
    Filter principal = Filter::upset(poset, 2);
    std::vector<DenseSet> family{DenseSet::make(poset, {2, 3})};
    CHECK(is_generic(principal, family));
    CHECK(is_generic_all(principal));
    Filter top_only = Filter::make(poset, {1});
    CHECK_FALSE(is_generic_all(top_only));
  }

  TEST_CASE("named dense families parse and validate") {
    auto poset = n_poset();
    auto families = parse_dense_family(poset, "dense bottoms = c d\n# comment\ndense all = a b c d\n");
    REQUIRE(families.size() == 2);
    CHECK(families[0].first == "bottoms");
    CHECK(families[0].second.members() == std::vector<int>{2, 3});
    CHECK_THROWS_AS(parse_dense_family(poset, "dense bad = c\n"), DomainError);
  }

  TEST_CASE("completing an antichain yields one atom per condition") {
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::string> ids;
      for (int i = 0; i < n; ++i) {
        ids.push_back("p" + std::to_string(i));
      }
      Completion completion = complete(Poset::make(ids, {}));
      CHECK(completion.target->atom_count() == n);
      std::set<std::uint32_t> seen;
      for (int p = 0; p < n; ++p) {
        const Elem& image = completion.embed_of(p);
        CHECK(image.mask() != 0);
        CHECK((image.mask() & (image.mask() - 1)) == 0);  // an atom
        seen.insert(image.mask());
      }
      CHECK(static_cast<int>(seen.size()) == n);
    }
  }

  TEST_CASE("completing a chain collapses everything to the top") {
    Completion completion = complete(Poset::make({"a", "b", "c"}, {{0, 1}, {1, 2}}));
    CHECK(completion.target->atom_count() == 1);
    for (int p = 0; p < 3; ++p) {
      CHECK(completion.embed_of(p) == completion.target->one());
    }
  }

  TEST_CASE("completing the nonzero part of a powerset algebra recovers it") {
    // Elements {a0}, {a1}, 1 of the two-atom algebra, ordered by inclusion.
    auto poset = Poset::make({"x", "y", "top"}, {{0, 2}, {1, 2}});
    Completion completion = complete(poset);
    CHECK(completion.target->atom_count() == 2);
    CHECK(completion.embed_of("top") == completion.target->one());
    CHECK(completion.embed_of("x") != completion.embed_of("y"));
    CHECK(meet(completion.embed_of("x"), completion.embed_of("y")) ==
          completion.target->zero());
  }

  TEST_CASE("completion embeddings satisfy the contract on every small poset") {
    for (const PosetPtr& poset : oracle::all_posets_up_to(5)) {
      Completion completion = complete(poset);
      const int n = poset->size();
      for (int p = 0; p < n; ++p) {
        CHECK(completion.embed_of(p).mask() != 0);
        for (int q = 0; q < n; ++q) {
          if (poset->leq(q, p)) {
            CHECK(leq(completion.embed_of(q), completion.embed_of(p)));
          }
          bool zero_meet =
              meet(completion.embed_of(p), completion.embed_of(q)) == completion.target->zero();
          CHECK(zero_meet == !poset->compatible(p, q));
        }
      }
      for (const Elem& b : completion.target->elements()) {
        if (b.mask() == 0) {
          continue;
        }
        bool hit = false;
        for (int p = 0; p < n && !hit; ++p) {
          hit = leq(completion.embed_of(p), b);
        }
        CHECK(hit);
      }
      CHECK(oracle::enumerate_regular_opens(poset).size() ==
            static_cast<size_t>(completion.target->size()));
    }
  }

  TEST_CASE("completion refuses oversized posets") {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> le;
    for (int i = 0; i < 17; ++i) {
      ids.push_back("p" + std::to_string(i));
    }
    CHECK_THROWS_AS(complete(Poset::make(ids, le)), DomainError);
  }
}
