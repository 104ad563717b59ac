#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "topologic/errors.hpp"
#include "topologic/semantics.hpp"

using namespace topologic;

namespace {
PointSet S(std::initializer_list<std::size_t> m) { return PointSet::of(m); }
Pair at(const Model& m, std::size_t x, PointSet u) { return {x, *m.space().index_of(u)}; }
}  // namespace

TEST_CASE("satisfaction on M0") {
  const Model m = fixtures::m0();
  const PointSet X = PointSet::full(3);
  CHECK(satisfies(m, at(m, 0, S({0, 1})), parse("K B")));
  CHECK(satisfies(m, at(m, 1, X), parse("<> K B")));
  CHECK(satisfies(m, at(m, 2, X), parse("[] L B")));
  CHECK(!satisfies(m, at(m, 2, X), parse("B")));
  CHECK_THROWS_AS(satisfies(m, at(m, 2, S({0})), parse("A")), PreconditionError);
  CHECK_THROWS_AS(satisfies(m, at(m, 0, X), parse("C")), InputError);
}

TEST_CASE("extension on M0") {
  const Model m = fixtures::m0();
  CHECK(extension(m, PointSet::full(3), parse("A")) == S({0}));
  CHECK(extension(m, PointSet::full(3), parse("K A")) == S({}));
  CHECK(extension(m, S({0}), parse("K A")) == S({0}));
}

TEST_CASE("model_valid on M0") {
  const Model m = fixtures::m0();
  CHECK(model_valid(m, parse("K A -> A")).valid);
  const Validity v = model_valid(m, parse("A -> K A"));
  REQUIRE(!v.valid);
  CHECK(*v.counterexample == at(m, 0, PointSet::full(3)));
  const Validity w = model_valid(m, parse("[] L B -> B"));
  REQUIRE(!w.valid);
  CHECK(*w.counterexample == at(m, 2, PointSet::full(3)));
}

TEST_CASE("pairs start at the whole space") {
  const auto ps = pairs(fixtures::m0().space());
  CHECK(ps.size() == 6);
  CHECK(ps.front() == Pair{0, 3});
  CHECK(ps.back() == Pair{0, 1});
}

TEST_CASE("axiom instances") {
  const Formula A = Formula::atom("A");
  CHECK(instantiate_axiom(4, {A, {}, {}}) == parse("[] A -> A"));
  CHECK(instantiate_axiom(9, {A, {}, {}}) == parse("A -> K L A"));
  CHECK(instantiate_axiom(11, {A, {}, {}}) == parse("<>[] A -> []<> A"));
  CHECK(instantiate_axiom(7, {A, {}, {}}) == parse("K A -> A"));
  CHECK(instantiate_axiom(2, {A, {}, {}}) == parse("(A -> [] A) & (~A -> [] ~A)"));
  CHECK_THROWS_AS(instantiate_axiom(2, {parse("K A"), {}, {}}), PreconditionError);
  CHECK_THROWS_AS(instantiate_axiom(13, {A, {}, {}}), PreconditionError);
  CHECK_THROWS_AS(instantiate_axiom(12, {A, A, {}}), PreconditionError);
  CHECK(scheme_uses_psi(12));
  CHECK(scheme_uses_chi(12));
  CHECK(!scheme_uses_psi(7));
}

TEST_CASE("property: table evaluation matches the naive oracle") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> names{"A", "B"};
  for (int trial = 0; trial < 200; ++trial) {
    Model m = fixtures::random_model(rng, 4, names);
    const Formula f = random_formula(rng, names, 4);
    const ExtensionTable table(m, f);
    for (Pair p : pairs(m.space())) {
      CHECK(table.holds(p) == oracle::sat(m, p.point, m.space().open(p.open).bits(), f));
    }
    CHECK(model_valid(m, f).valid == oracle::valid(m, f));
  }
}

TEST_CASE("property: desugared operators mean what their definitions say") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> names{"A", "B"};
  for (int trial = 0; trial < 100; ++trial) {
    const Model m = fixtures::random_model(rng, 4, names);
    const Formula p = random_formula(rng, names, 2);
    const Formula q = random_formula(rng, names, 2);
    for (Pair pr : pairs(m.space())) {
      const PointSet u = m.space().open(pr.open);
      const bool sp = satisfies(m, pr, p);
      const bool sq = satisfies(m, pr, q);
      CHECK(satisfies(m, pr, Formula::disj(p, q)) == (sp || sq));
      CHECK(satisfies(m, pr, Formula::implies(p, q)) == (!sp || sq));
      bool some_point = false;
      for (std::size_t y : u.members()) some_point |= satisfies(m, {y, pr.open}, p);
      CHECK(satisfies(m, pr, Formula::possible(p)) == some_point);
      bool some_open = false;
      for (std::size_t v : m.space().below(pr.open)) {
        if (m.space().open(v).contains(pr.point)) some_open |= satisfies(m, {pr.point, v}, p);
      }
      CHECK(satisfies(m, pr, Formula::diamond(p)) == some_open);
    }
  }
}

TEST_CASE("property: rules preserve validity") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> names{"A"};
  int mp_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Model m = fixtures::random_model(rng, 3, names);
    const Formula p = random_formula(rng, names, 3);
    const Formula q = random_formula(rng, names, 3);
    if (model_valid(m, p).valid) {
      CHECK(model_valid(m, Formula::knows(p)).valid);
      CHECK(model_valid(m, Formula::box(p)).valid);
      if (model_valid(m, Formula::implies(p, q)).valid) {
        ++mp_cases;
        CHECK(model_valid(m, q).valid);
      }
    }
  }
  CHECK(mp_cases > 0);
}
