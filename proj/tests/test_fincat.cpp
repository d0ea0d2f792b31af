#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spanloc/fincat.hpp"
#include "support.hpp"

using namespace spanloc;

TEST_CASE("identities are generated and composition is forced on them") {
  FinCategory c;
  int a = c.add_object("a");
  int b = c.add_object("b");
  int f = c.add_morphism("f", a, b);
  c.finalize();
  CHECK(c.morphism_index("id_a") == c.identity(a));
  CHECK(c.compose(f, c.identity(a)) == f);
  CHECK(c.compose(c.identity(b), f) == f);
  CHECK(c.is_identity(c.identity(a)));
  CHECK_FALSE(c.is_identity(f));
  CHECK(c.validate().empty());
}

TEST_CASE("validate reports totality and endpoint defects") {
  FinCategory c;
  int a = c.add_object("a");
  int b = c.add_object("b");
  int d = c.add_object("d");
  int f = c.add_morphism("f", a, b);
  int g = c.add_morphism("g", b, d);
  SUBCASE("missing composite") {
    c.finalize();
    auto bad = c.validate();
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].clause == "composition-total");
    CHECK(bad[0].witness == "g after f");
  }
  SUBCASE("composite with wrong endpoints") {
    int h = c.add_morphism("h", a, b);
    c.set_composite(g, f, h);
    c.finalize();
    bool hit = false;
    for (const auto& v : c.validate()) hit = hit || v.clause == "composition-endpoints";
    CHECK(hit);
  }
}

TEST_CASE("pullbacks in the meet poset are intersections") {
  auto doc = testsupport::fixture("meet-poset");
  const FinCategory& c = doc.cat;
  int f = c.morphism_index("inc_1_12");
  int g = c.morphism_index("inc_2_12");
  auto cone = pullback(c, f, g);
  REQUIRE(cone.has_value());
  CHECK(c.object_name(cone->apex) == "0");
  CHECK(cone->leg1 == c.morphism_index("inc_0_1"));
  CHECK(cone->leg2 == c.morphism_index("inc_0_2"));
  CHECK(is_pullback_cone(c, f, g, *cone));
  // A commuting cone that is not universal.
  PullbackCone junk{cone->apex, cone->leg1, cone->leg2};
  junk.apex = c.object_index("1");
  CHECK_FALSE(is_pullback_cone(c, f, g, junk));

  PullbackCone test{c.object_index("0"), c.morphism_index("inc_0_1"),
                    c.morphism_index("inc_0_2")};
  CHECK(mediating_morphism(c, *cone, test) == c.identity(c.object_index("0")));
  CHECK_THROWS_AS(pullback(c, f, c.morphism_index("inc_0_1")), CospanMismatch);
}

TEST_CASE("pullback cache returns one canonical cone") {
  auto doc = testsupport::fixture("meet-poset");
  PullbackCache cache(doc.cat);
  int f = doc.cat.morphism_index("inc_1_12");
  int g = doc.cat.morphism_index("inc_2_12");
  const auto& c1 = cache.get(f, g);
  const auto& c2 = cache.get(f, g);
  CHECK(&c1 == &c2);
}

TEST_CASE("functor enumeration is exhaustive and budget-guarded") {
  FinCategory arrow;
  int a = arrow.add_object("s");
  int b = arrow.add_object("t");
  arrow.add_morphism("step", a, b);
  arrow.finalize();
  auto doc = testsupport::fixture("meet-poset");
  // One functor per related pair of the poset: 9 of them.
  auto fs = enumerate_functors(arrow, doc.cat, 1000);
  CHECK(fs.size() == 9);
  for (const auto& f : fs) CHECK(f.validate().empty());
  try {
    enumerate_functors(arrow, doc.cat, 1);
    FAIL("budget should have been exceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.estimate == 16);
  }
}

TEST_CASE("inverses and equivalence checking on the walking isomorphism") {
  auto doc = testsupport::fixture("walking-iso");
  const FinCategory& c = doc.cat;
  int u = c.morphism_index("u");
  CHECK(c.is_iso(u));
  CHECK(c.inverse(u) == c.morphism_index("v"));
  CHECK(c.has_iso(c.object_index("a"), c.object_index("b")));

  FinCategory point;
  point.add_object("p");
  point.finalize();
  FinFunctor inc;
  inc.source = &point;
  inc.target = &c;
  inc.object_map = {c.object_index("a")};
  inc.morphism_map = {c.identity(c.object_index("a"))};
  CHECK(check_equivalence(inc).ok);

  FinFunctor ident = identity_functor(c);
  CHECK(check_equivalence(ident).ok);
}

TEST_CASE("equivalence check rejects a non-full functor") {
  auto doc = testsupport::fixture("parallel-pair");
  FinCategory point;
  point.add_object("p");
  point.finalize();
  FinFunctor inc;
  inc.source = &point;
  inc.target = &doc.cat;
  inc.object_map = {doc.cat.object_index("x")};
  inc.morphism_map = {doc.cat.identity(doc.cat.object_index("x"))};
  CHECK_FALSE(check_equivalence(inc).ok);
}

TEST_CASE("opposite category swaps endpoints and keeps validity") {
  auto doc = testsupport::fixture("meet-poset");
  FinCategory op = opposite(doc.cat);
  CHECK(op.validate().empty());
  int f = op.morphism_index("inc_0_12");
  CHECK(op.object_name(op.dom(f)) == "12");
  CHECK(op.object_name(op.cod(f)) == "0");
}

TEST_CASE("naturality of componentwise families") {
  auto doc = testsupport::fixture("walking-iso");
  const FinCategory& c = doc.cat;
  FinFunctor ident = identity_functor(c);
  std::vector<int> ids{c.identity(0), c.identity(1)};
  CHECK(is_natural(ident, ident, ids));
  std::vector<int> skew{c.morphism_index("u"), c.morphism_index("v")};
  CHECK_FALSE(is_natural(ident, ident, skew));
}
