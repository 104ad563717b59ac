#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "topologic/errors.hpp"
#include "topologic/space.hpp"

using namespace topologic;

namespace {
PointSet S(std::initializer_list<std::size_t> m) { return PointSet::of(m); }
}  // namespace

TEST_CASE("PointSet basics and canonical order") {
  CHECK(S({0, 2}).size() == 2);
  CHECK(S({0, 2}).contains(2));
  CHECK(!S({0, 2}).contains(1));
  CHECK(S({0}).proper_subset_of(S({0, 1})));
  CHECK(S({1, 2}).complement_in(PointSet::full(3)) == S({0}));
  CHECK(S({}) < S({2}));
  CHECK(S({2}) < S({0, 1}));
  CHECK(S({0, 2}) < S({1, 2}));
  CHECK(S({0, 1}) < S({0, 2}));
  CHECK(canonical({S({0, 1}), S({}), S({0, 1}), S({0})}) == Family{S({}), S({0}), S({0, 1})});
}

TEST_CASE("make_space validates") {
  const SubsetSpace m0 = make_space(3, {S({}), S({0}), S({0, 1}), PointSet::full(3)});
  CHECK(is_topology(m0));
  const SubsetSpace tiny = make_space(1, {S({0})});
  CHECK(tiny.num_opens() == 1);
  CHECK(!is_topology(tiny));  // no empty set
  CHECK_THROWS_AS(make_space(2, {S({0})}), InputError);
  CHECK_THROWS_AS(make_space(2, {S({0, 1}), S({3})}), InputError);
  CHECK_THROWS_AS(make_space({"a", "a"}, {S({0, 1})}), InputError);
  CHECK_THROWS_AS(make_space(0, {}), InputError);
  CHECK_THROWS_AS(m0.index_of_point("7"), InputError);
  CHECK(m0.index_of(S({0, 1})) == 2u);
  CHECK(!m0.index_of(S({1})));
  CHECK(m0.below(2) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("is_topology") {
  CHECK(is_topology(fixtures::m0().space()));
  CHECK(!is_topology(make_space(3, {S({0, 1}), S({0, 2}), PointSet::full(3)})));
  CHECK(is_topology(make_space(3, {S({}), PointSet::full(3)})));
}

TEST_CASE("generate_topology") {
  CHECK(generate_topology({S({0, 1}), S({0, 2})}, 3).opens() ==
        Family{S({}), S({0}), S({0, 1}), S({0, 2}), S({0, 1, 2})});
  CHECK(generate_topology({}, 3).opens() == Family{S({}), S({0, 1, 2})});
  CHECK(generate_topology({S({0}), S({1}), S({2})}, 3).num_opens() == 8);
}

TEST_CASE("interior and Heyting implication on M0") {
  const SubsetSpace t = fixtures::m0().space();
  CHECK(interior(t, S({0, 1})) == S({0, 1}));
  CHECK(interior(t, S({1, 2})) == S({}));
  CHECK(interior(t, S({0, 2})) == S({0}));
  CHECK(heyting_implication(t, S({0, 1}), S({0})) == S({0}));
  CHECK(heyting_implication(t, S({0}), S({0})) == PointSet::full(3));
  CHECK(heyting_implication(t, PointSet::full(3), S({})) == S({}));
  CHECK_THROWS_AS(interior(make_space(3, {S({0, 1}), S({0, 2}), PointSet::full(3)}), S({0})),
                  PreconditionError);
}

TEST_CASE("property: interior and Heyting implication match scanning oracles") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const SubsetSpace t = random_topology(1 + rng() % 5, rng);
    const auto opens = oracle::opens_of(Model(t, {}));
    const std::uint64_t full = t.universe().bits();
    for (std::uint64_t s = 0; s <= full; ++s) CHECK(interior(t, PointSet(s)).bits() == oracle::interior(opens, s));
    for (PointSet u : t.opens()) {
      for (PointSet w : t.opens()) {
        const PointSet h = heyting_implication(t, u, w);
        CHECK(h.bits() == oracle::heyting(opens, u.bits(), w.bits()));
        CHECK((h & u).subset_of(w));
        // every open v with v & u <= w lies below h
        for (PointSet v : t.opens()) {
          if ((v & u).subset_of(w)) CHECK(v.subset_of(h));
        }
      }
    }
  }
}

TEST_CASE("close_under_intersection / union") {
  CHECK(close_under_intersection({S({0, 1}), S({0, 2})}) == Family{S({0}), S({0, 1}), S({0, 2})});
  const Family chain{S({0}), S({0, 1}), S({0, 1, 2})};
  CHECK(close_under_intersection(chain) == chain);
  CHECK(close_under_intersection({}).empty());
  CHECK(close_under_union({S({0}), S({1})}) == Family{S({0}), S({1}), S({0, 1})});
  CHECK(is_intersection_closed(chain));
  CHECK(!is_intersection_closed({S({0, 1}), S({0, 2})}));
}

TEST_CASE("closure_family") {
  const Model m = fixtures::m0();
  const ClosureFamily fa = closure_family(m, {"A"});
  for (PointSet s : {S({}), S({0}), S({1, 2}), PointSet::full(3)}) CHECK(family_contains(fa.sets, s));
  CHECK(fa.opens == Family{S({}), S({0}), PointSet::full(3)});
  CHECK(closure_family(m, {}).sets == Family{S({}), PointSet::full(3)});

  const SubsetSpace discrete = generate_topology({S({0}), S({1}), S({2})}, 3);
  const Model d(discrete, {{"A", S({0, 1})}});
  CHECK(closure_family(d, {"A"}).sets == Family{S({}), S({2}), S({0, 1}), PointSet::full(3)});
}

TEST_CASE("property: closure_family is closed and its opens are interiors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Model m = fixtures::random_model(rng, 5, {"A", "B"});
    const ClosureFamily c = closure_family(m, {"A", "B"});
    const PointSet x = m.space().universe();
    for (PointSet s : c.sets) {
      CHECK(family_contains(c.sets, s.complement_in(x)));
      CHECK(family_contains(c.sets, interior(m.space(), s)));
      for (PointSet t : c.sets) CHECK(family_contains(c.sets, s & t));
    }
    for (PointSet o : c.opens) CHECK(m.space().contains_open(o));
  }
}

TEST_CASE("Model valuation lookups") {
  const Model m = fixtures::m0();
  CHECK(m.value("A") == S({0}));
  CHECK_THROWS_AS(m.value("C"), InputError);
}
