#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "spanloc/relcat.hpp"
#include "support.hpp"

using namespace spanloc;

namespace {

bool has_clause(const std::vector<Violation>& vs, const std::string& clause) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.clause == clause; });
}

}  // namespace

TEST_CASE("identities are always hypercovers") {
  auto doc = testsupport::fixture("parallel-pair");
  RelativeCategory r = doc.relative();
  for (int o = 0; o < doc.cat.num_objects(); ++o) CHECK(r.in_w(doc.cat.identity(o)));
  CHECK(r.w_list().size() == 2);  // just the identities
}

TEST_CASE("the bundled fixtures satisfy the hypercover axioms") {
  for (const char* name : {"meet-poset", "cube-poset", "parallel-pair", "walking-iso",
                           "collapse"}) {
    auto doc = testsupport::fixture(name);
    RelativeCategory r = doc.relative();
    INFO(name);
    CHECK(doc.cat.validate().empty());
    CHECK(validate_hypercovers(r).empty());
  }
}

TEST_CASE("isomorphisms must belong to the hypercover class") {
  auto doc = testsupport::fixture("walking-iso");
  RelativeCategory r(doc.cat, {});
  CHECK(has_clause(validate_hypercovers(r), "isomorphisms-in-w"));
}

TEST_CASE("composition closure of the hypercover class") {
  auto doc = testsupport::fixture("cube-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r(c, {c.morphism_index("inc_0_3"), c.morphism_index("inc_3_13")});
  CHECK(has_clause(validate_hypercovers(r), "composition-closed"));
}

TEST_CASE("hypercovers need a pullback along every morphism") {
  auto doc = testsupport::fixture("parallel-pair");
  const FinCategory& c = doc.cat;
  RelativeCategory r(c, {c.morphism_index("f")});
  CHECK(has_clause(validate_hypercovers(r), "pullback-exists"));
}

TEST_CASE("the pulled-back projection must stay in the class") {
  auto doc = testsupport::fixture("meet-poset");
  const FinCategory& c = doc.cat;
  RelativeCategory r(c, {c.morphism_index("inc_1_12")});
  CHECK(has_clause(validate_hypercovers(r), "pullback-stable"));
}

TEST_CASE("canonical pullbacks are memoized per relative category") {
  auto doc = testsupport::fixture("cube-poset");
  RelativeCategory r = doc.relative();
  int f = doc.cat.morphism_index("inc_1_13");
  int g = doc.cat.morphism_index("inc_3_13");
  const auto& p1 = r.pullback(f, g);
  const auto& p2 = r.pullback(f, g);
  CHECK(&p1 == &p2);
  REQUIRE(p1.has_value());
  CHECK(doc.cat.object_name(p1->apex) == "0");
}

TEST_CASE("two-out-of-three closure absorbs the collapsed parallel pair") {
  auto doc = testsupport::fixture("collapse");
  RelativeCategory r = doc.relative();
  auto closure = two_out_of_three_closure(r);
  const FinCategory& c = doc.cat;
  CHECK(closure[c.morphism_index("f")]);
  CHECK(closure[c.morphism_index("g")]);
  CHECK(closure[c.morphism_index("0_x")]);
  // The closure of an already-closed class adds nothing.
  auto meet = testsupport::fixture("meet-poset");
  RelativeCategory rm = meet.relative();
  auto cm = two_out_of_three_closure(rm);
  for (int m = 0; m < meet.cat.num_morphisms(); ++m) CHECK(cm[m] == rm.in_w(m));
}
