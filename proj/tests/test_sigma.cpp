#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spanloc/sigma.hpp"
#include "spanloc/span.hpp"
#include "support.hpp"

using namespace spanloc;

TEST_CASE("sigma poset shape") {
  SigmaPoset s = build_sigma(2);
  CHECK(s.size() == 6);
  CHECK(s.pair_of(s.index(0, 2)) == std::pair<int, int>{0, 2});
  // (0,2) is the top: below everything with larger i or smaller j.
  CHECK(s.leq(s.index(0, 2), s.index(0, 0)));
  CHECK(s.leq(s.index(0, 2), s.index(1, 2)));
  CHECK(s.leq(s.index(0, 2), s.index(2, 2)));
  CHECK_FALSE(s.leq(s.index(0, 0), s.index(1, 1)));
  CHECK(s.marked(s.index(0, 2), s.index(0, 1)));
  CHECK_FALSE(s.marked(s.index(0, 2), s.index(1, 2)));
  CHECK(lambda_subposet(s).size() == 5);

  FinCategory cat = sigma_category(s);
  CHECK(cat.validate().empty());
  CHECK(cat.num_objects() == 6);
}

TEST_CASE("sigma_map rejects non-monotone index maps") {
  SigmaPoset s1 = build_sigma(1);
  SigmaPoset s2 = build_sigma(2);
  auto m = sigma_map(s1, s2, {0, 2});
  CHECK(m[s1.index(0, 1)] == s2.index(0, 2));
  CHECK(m[s1.index(1, 1)] == s2.index(2, 2));
  CHECK_THROWS_AS(sigma_map(s1, s2, {2, 0}), NonMonotone);
}

TEST_CASE("right kan extension fills apexes by pullback") {
  auto doc = testsupport::fixture("cube-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();
  SigmaPoset s = build_sigma(2);

  // Chain of spans 13 <= 1 -> 12 and 12 <= 12 -> 123.
  SpanDiagram partial;
  partial.n = 2;
  partial.obj.assign(s.size(), -1);
  partial.down.assign(s.size(), -1);
  partial.right.assign(s.size(), -1);
  partial.obj[s.index(0, 0)] = c.object_index("13");
  partial.obj[s.index(0, 1)] = c.object_index("1");
  partial.obj[s.index(1, 1)] = c.object_index("12");
  partial.obj[s.index(1, 2)] = c.object_index("12");
  partial.obj[s.index(2, 2)] = c.object_index("123");
  partial.down[s.index(0, 1)] = c.morphism_index("inc_1_13");
  partial.right[s.index(0, 1)] = c.morphism_index("inc_1_12");
  partial.down[s.index(1, 2)] = c.identity(c.object_index("12"));
  partial.right[s.index(1, 2)] = c.morphism_index("inc_12_123");

  SpanDiagram full = right_kan_extend(r, s, partial);
  CHECK(c.object_name(full.obj[s.index(0, 2)]) == "1");
  CHECK(full.down[s.index(0, 2)] == c.identity(c.object_index("1")));
  CHECK(full.right[s.index(0, 2)] == c.morphism_index("inc_1_12"));
  CHECK(validate_span_diagram(r, s, full).empty());

  DiagramConditions cond = check_diagram_conditions(r, s, full);
  CHECK(cond.all_squares);
  CHECK(cond.inner_squares);
  CHECK(cond.rke);
}

TEST_CASE("degenerate diagrams satisfy all three cartesianness conditions") {
  auto doc = testsupport::fixture("meet-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r = doc.relative();
  SigmaPoset s = build_sigma(2);
  SpanDiagram d = nerve_unit(r, c.object_index("0"),
                             {c.morphism_index("inc_0_1"), c.morphism_index("inc_1_12")});
  CHECK(validate_span_diagram(r, s, d).empty());
  DiagramConditions cond = check_diagram_conditions(r, s, d);
  CHECK(cond.all_squares);
  CHECK(cond.inner_squares);
  CHECK(cond.rke);
}

TEST_CASE("the three diagram conditions agree across all functors at n = 2") {
  auto doc = testsupport::fixture("meet-poset");
  RelativeCategory r = doc.relative();
  SigmaPoset s = build_sigma(2);
  FinCategory sc = sigma_category(s);
  auto functors = enumerate_functors(sc, doc.cat, 1000000);
  CHECK(functors.size() > 0);
  for (const auto& f : functors) {
    SpanDiagram d = diagram_from_functor(s, f);
    DiagramConditions cond = check_diagram_conditions(r, s, d);
    CHECK(cond.all_squares == cond.inner_squares);
    CHECK(cond.inner_squares == cond.rke);
  }
}
