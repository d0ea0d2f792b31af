#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spanloc/bicat.hpp"
#include "support.hpp"

using namespace spanloc;

TEST_CASE("unitors and associators are invertible coherence cells") {
  auto doc = testsupport::fixture("cube-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();

  Span s{c.morphism_index("inc_1_13"), c.morphism_index("inc_1_12")};
  Span2Cell lu = left_unitor(r, s);
  Span2Cell ru = right_unitor(r, s);
  CHECK(c.is_iso(lu.apex_map));
  CHECK(c.is_iso(ru.apex_map));
  CHECK(lu.tgt == s);
  CHECK(ru.tgt == s);

  Span t{c.identity(c.object_index("12")), c.morphism_index("inc_12_123")};
  Span u{c.morphism_index("inc_12_123"), c.identity(c.object_index("12"))};
  Span2Cell assoc = associator(r, s, t, u);
  CHECK(c.is_iso(assoc.apex_map));
  CHECK(assoc.src == compose_spans(r, compose_spans(r, s, t), u));
  CHECK(assoc.tgt == compose_spans(r, s, compose_spans(r, t, u)));
  // Coherence transport round trip is the identity.
  int back = c.compose(c.inverse(assoc.apex_map), assoc.apex_map);
  CHECK(c.is_identity(back));
}

TEST_CASE("whiskering an identity 2-cell is an identity 2-cell") {
  auto doc = testsupport::fixture("meet-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();
  Span s{c.morphism_index("inc_0_1"), c.morphism_index("inc_0_2")};
  Span t{c.morphism_index("inc_0_2"), c.morphism_index("inc_0_12")};
  Span2Cell id_t{t, t, c.identity(c.dom(t.left))};
  Span2Cell w = whisker_left(r, s, id_t);
  CHECK(w.src == w.tgt);
  CHECK(c.is_identity(w.apex_map));
  Span2Cell w2 = whisker_right(r, id_t, Span{c.identity(c.object_index("12")),
                                             c.identity(c.object_index("12"))});
  CHECK(c.is_identity(w2.apex_map));
}

TEST_CASE("every hypercover has a right adjoint in the span bicategory") {
  for (const char* name : {"meet-poset", "cube-poset", "walking-iso", "collapse"}) {
    auto doc = testsupport::fixture(name);
    RelativeCategory r = doc.relative();
    const FinCategory& c = doc.cat;
    for (int w = 0; w < c.num_morphisms(); ++w) {
      if (!r.in_w(w) || c.is_identity(w)) continue;
      INFO(name, ": ", c.morphism_name(w));
      CheckResult res = adjunction_check(r, w);
      INFO(res.witness);
      CHECK(res.ok);
    }
  }
}

TEST_CASE("adjunction datum for an isomorphism is the reversed span") {
  auto doc = testsupport::fixture("walking-iso");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();
  AdjunctionDatum adj = adjunction_datum(r, c.morphism_index("u"));
  CHECK(adj.left.right == c.morphism_index("u"));
  CHECK(adj.right.left == c.morphism_index("u"));
  CHECK(adjunction_check(r, c.morphism_index("u")).ok);
}

TEST_CASE("adjunction_check refuses non-hypercovers") {
  auto doc = testsupport::fixture("parallel-pair");
  RelativeCategory r = doc.relative();
  CHECK_FALSE(adjunction_check(r, doc.cat.morphism_index("f")).ok);
}

TEST_CASE("beck-chevalley comparison over cartesian squares of the cube") {
  auto doc = testsupport::fixture("cube-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();
  // f: 1 -> 13 deletes 3, g: 3 -> 13; the square over the intersection 0.
  CheckResult res = beck_chevalley_check(r, c.morphism_index("inc_1_13"),
                                         c.morphism_index("inc_3_13"),
                                         c.morphism_index("inc_0_3"),
                                         c.morphism_index("inc_0_1"));
  INFO(res.witness);
  CHECK(res.ok);

  // Identity square: trivially cartesian and trivially invertible.
  CheckResult triv = beck_chevalley_check(
      r, c.identity(c.object_index("13")), c.morphism_index("inc_3_13"),
      c.identity(c.object_index("3")), c.morphism_index("inc_3_13"));
  CHECK(triv.ok);
}

TEST_CASE("non-cartesian squares are rejected, or fail under force") {
  auto doc = testsupport::fixture("cube-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();
  // Shrinking the corner from 1 to 0 keeps the square commuting but breaks
  // universality.
  int f = c.morphism_index("inc_12_123");
  int g = c.morphism_index("inc_13_123");
  CHECK_THROWS_AS(beck_chevalley_check(r, f, g, c.morphism_index("inc_0_13"),
                                       c.morphism_index("inc_0_12")),
                  NotCartesian);
  CheckResult forced = beck_chevalley_check(r, f, g, c.morphism_index("inc_0_13"),
                                            c.morphism_index("inc_0_12"), true);
  CHECK_FALSE(forced.ok);
}
