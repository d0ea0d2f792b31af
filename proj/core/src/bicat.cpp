#include "spanloc/bicat.hpp"

#include <stdexcept>

namespace spanloc {

namespace {

const PullbackCone& cone_of(const RelativeCategory& r, int right_leg, int left_leg) {
  const auto& cone = r.pullback(right_leg, left_leg);
  if (!cone) {
    const FinCategory& c = r.base();
    throw MissingPullback("(" + c.morphism_name(right_leg) + ", " +
                              c.morphism_name(left_leg) + ")",
                          "span composite: canonical pullback missing");
  }
  return *cone;
}

int require_mediating(const FinCategory& c, const PullbackCone& uni,
                      const PullbackCone& test, const char* what) {
  int m = mediating_morphism(c, uni, test);
  if (m < 0) throw std::logic_error(std::string("no mediating morphism: ") + what);
  return m;
}

int chain(const FinCategory& c, std::initializer_list<int> maps) {
  // Composite of apex maps listed in application order.
  int acc = -1;
  for (int m : maps) {
    acc = acc < 0 ? m : c.compose(m, acc);
    if (acc < 0) throw std::logic_error("apex maps fail to compose");
  }
  return acc;
}

}  // namespace

Span identity_span(const FinCategory& c, int object) {
  return Span{c.identity(object), c.identity(object)};
}

Span2Cell whisker_left(const RelativeCategory& r, const Span& s, const Span2Cell& beta) {
  const FinCategory& c = r.base();
  const PullbackCone& p = cone_of(r, s.right, beta.src.left);
  const PullbackCone& q = cone_of(r, s.right, beta.tgt.left);
  PullbackCone test{p.apex, p.leg1, c.compose(beta.apex_map, p.leg2)};
  int m = require_mediating(c, q, test, "left whiskering");
  return Span2Cell{compose_spans(r, s, beta.src), compose_spans(r, s, beta.tgt), m};
}

Span2Cell whisker_right(const RelativeCategory& r, const Span2Cell& beta, const Span& s) {
  const FinCategory& c = r.base();
  const PullbackCone& p = cone_of(r, beta.src.right, s.left);
  const PullbackCone& q = cone_of(r, beta.tgt.right, s.left);
  PullbackCone test{p.apex, c.compose(beta.apex_map, p.leg1), p.leg2};
  int m = require_mediating(c, q, test, "right whiskering");
  return Span2Cell{compose_spans(r, beta.src, s), compose_spans(r, beta.tgt, s), m};
}

Span2Cell associator(const RelativeCategory& r, const Span& s, const Span& t,
                     const Span& u) {
  const FinCategory& c = r.base();
  const PullbackCone& st = cone_of(r, s.right, t.left);
  Span s_then_t = compose_spans(r, s, t);
  const PullbackCone& left = cone_of(r, s_then_t.right, u.left);
  const PullbackCone& tu = cone_of(r, t.right, u.left);
  Span t_then_u = compose_spans(r, t, u);
  const PullbackCone& right = cone_of(r, s.right, t_then_u.left);

  PullbackCone into_tu{left.apex, c.compose(st.leg2, left.leg1), left.leg2};
  int m1 = require_mediating(c, tu, into_tu, "associator inner leg");
  PullbackCone test{left.apex, c.compose(st.leg1, left.leg1), m1};
  int a = require_mediating(c, right, test, "associator");
  return Span2Cell{compose_spans(r, s_then_t, u), compose_spans(r, s, t_then_u), a};
}

Span2Cell left_unitor(const RelativeCategory& r, const Span& s) {
  const FinCategory& c = r.base();
  Span unit = identity_span(c, c.cod(s.left));
  const PullbackCone& p = cone_of(r, unit.right, s.left);
  return Span2Cell{compose_spans(r, unit, s), s, p.leg2};
}

Span2Cell right_unitor(const RelativeCategory& r, const Span& s) {
  const FinCategory& c = r.base();
  Span unit = identity_span(c, c.cod(s.right));
  const PullbackCone& p = cone_of(r, s.right, unit.left);
  return Span2Cell{compose_spans(r, s, unit), s, p.leg1};
}

AdjunctionDatum adjunction_datum(const RelativeCategory& r, int f) {
  const FinCategory& c = r.base();
  int d = c.dom(f), cd = c.cod(f);
  AdjunctionDatum adj;
  adj.f = f;
  adj.left = Span{c.identity(d), f};
  adj.right = Span{f, c.identity(d)};

  const PullbackCone& pff = cone_of(r, f, f);
  PullbackCone diagonal{d, c.identity(d), c.identity(d)};
  adj.unit = Span2Cell{identity_span(c, d), compose_spans(r, adj.left, adj.right),
                       require_mediating(c, pff, diagonal, "adjunction unit")};

  const PullbackCone& pid = cone_of(r, c.identity(d), c.identity(d));
  adj.counit = Span2Cell{compose_spans(r, adj.right, adj.left), identity_span(c, cd),
                         c.compose(f, pid.leg1)};
  return adj;
}

CheckResult adjunction_check(const RelativeCategory& r, int f) {
  const FinCategory& c = r.base();
  if (!r.in_w(f))
    return CheckResult{false, "adjunction: " + c.morphism_name(f) + " is not a hypercover"};
  AdjunctionDatum adj = adjunction_datum(r, f);
  const Span& l = adj.left;
  const Span& rr = adj.right;

  // (counit . l) . assoc . (l . unit) against the unitors at l.
  Span2Cell w1 = whisker_right(r, adj.unit, l);
  Span2Cell a1 = associator(r, l, rr, l);
  Span2Cell w2 = whisker_left(r, l, adj.counit);
  Span2Cell rho_l = right_unitor(r, l);
  Span2Cell lambda_l = left_unitor(r, l);
  int left_total = chain(c, {w1.apex_map, a1.apex_map, w2.apex_map, rho_l.apex_map});
  if (left_total != lambda_l.apex_map)
    return CheckResult{false,
                       "triangle identity (left) fails for " + c.morphism_name(f)};

  // (rr . counit) . assoc^{-1} . (unit . rr) against the unitors at rr.
  Span2Cell w3 = whisker_left(r, rr, adj.unit);
  Span2Cell a2 = associator(r, rr, l, rr);
  if (!c.is_iso(a2.apex_map))
    throw std::logic_error("associator apex map is not invertible");
  Span2Cell w4 = whisker_right(r, adj.counit, rr);
  Span2Cell lambda_r = left_unitor(r, rr);
  Span2Cell rho_r = right_unitor(r, rr);
  int right_total = chain(
      c, {w3.apex_map, c.inverse(a2.apex_map), w4.apex_map, lambda_r.apex_map});
  if (right_total != rho_r.apex_map)
    return CheckResult{false,
                       "triangle identity (right) fails for " + c.morphism_name(f)};
  return CheckResult{true, ""};
}

CheckResult beck_chevalley_check(const RelativeCategory& r, int f, int g, int fp,
                                 int gp, bool force) {
  const FinCategory& c = r.base();
  if (c.cod(gp) != c.dom(f) || c.cod(fp) != c.dom(g) || c.cod(f) != c.cod(g) ||
      c.dom(fp) != c.dom(gp))
    throw CospanMismatch("beck-chevalley: square has mismatched endpoints");
  if (c.compose(f, gp) != c.compose(g, fp))
    throw NotCartesian("beck-chevalley: square does not commute");
  PullbackCone given{c.dom(fp), gp, fp};
  bool cartesian = is_pullback_cone(c, f, g, given);
  if (!cartesian && !force)
    throw NotCartesian("beck-chevalley: square over (" + c.morphism_name(f) + ", " +
                       c.morphism_name(g) + ") is not cartesian");

  const PullbackCone& uni = cone_of(r, g, f);
  PullbackCone comparison{c.dom(fp), fp, gp};
  int m = mediating_morphism(c, uni, comparison);
  if (m < 0)
    return CheckResult{false, "no comparison map from " + c.object_name(c.dom(fp)) +
                                  " into the canonical pullback"};
  if (!c.is_iso(m))
    return CheckResult{false, "comparison map " + c.morphism_name(m) +
                                  " is not an isomorphism"};
  return CheckResult{true, ""};
}

}  // namespace spanloc
