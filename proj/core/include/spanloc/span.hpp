#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "spanloc/sigma.hpp"

namespace spanloc {

/// A span c <= e -> d: two morphisms out of a common apex, the left one a
/// hypercover. Endpoints are cod(left) and cod(right).
struct Span {
  int left = -1;
  int right = -1;
  bool operator==(const Span& o) const { return left == o.left && right == o.right; }
  bool operator<(const Span& o) const {
    return left != o.left ? left < o.left : right < o.right;
  }
};

using Span1Cell = Span;

/// An arrow between parallel spans: a morphism of apexes commuting with both
/// legs (endpoint components are identities).
struct Span2Cell {
  Span src;
  Span tgt;
  int apex_map = -1;
};

/// All spans of R, ordered by (left, right) morphism index.
std::vector<Span> all_spans(const RelativeCategory& r);

/// The category of spans c <= e -> d with apex morphisms commuting with both
/// legs as arrows.
struct MappingCategory {
  int c = -1, d = -1;
  FinCategory cat;
  std::vector<Span> spans;       // object k of cat is spans[k]
  std::vector<int> arrow_apex;   // morphism k of cat acts by arrow_apex[k]
  int index_of(const Span& s) const;
};

MappingCategory mapping_category(const RelativeCategory& r, int c, int d);

/// Composite span via the canonical pullback of s1's right leg along s2's
/// hypercover leg. Throws MissingPullback (unreachable on a valid R).
Span compose_spans(const RelativeCategory& r, const Span& s1, const Span& s2);

/// Level n of the Segal object: span diagrams as objects, natural
/// transformations whose (i, i) components are isomorphisms as arrows.
struct SpanLevel {
  int n = 0;
  SigmaPoset sigma;
  FinCategory cat;
  std::vector<SpanDiagram> diagrams;
  std::vector<std::vector<int>> arrow_components;  // per cat morphism
  std::vector<std::pair<int, int>> arrow_ends;     // (src diagram, tgt diagram)
  // Lookup indices, keyed by packed int bytes; populated by build_span_level.
  std::unordered_map<std::string, int> diagram_idx;
  std::unordered_map<std::string, int> arrow_idx;
  int index_of(const SpanDiagram& d) const;
  int arrow_index(int src, int tgt, const std::vector<int>& components) const;
};

/// Enumerates every relative functor on Λₙ (a chain of n composable spans),
/// Kan-extends each, then closes the diagram set under degeneracy images of
/// the lower-level enumerations so the simplicial actions stay within built
/// levels. The number of chains must not exceed the budget.
SpanLevel build_span_level(const RelativeCategory& r, int n, long long budget);

/// Precomposition with sigma_map(alpha): a functor SpanLevel_n -> SpanLevel_m
/// for monotone alpha: [m] -> [n]. Both levels must already be built.
FinFunctor simplicial_action(const RelativeCategory& r, const std::vector<int>& alpha,
                             const SpanLevel& from, const SpanLevel& to);

/// Builds the Segal functor Span_n -> Span_1 ×_{Span_0} ... ×_{Span_0} Span_1
/// (strict fiber product over the iso groupoid Span_0) and returns
/// check_equivalence of it. levels must hold levels 0..n.
CheckResult segal_check(const RelativeCategory& r, const std::vector<SpanLevel>& levels,
                        int n);

/// The degenerate diagram F(i, j) = c_i with identity marked edges, for a
/// composable chain c_0 -> ... -> c_n starting at c0.
SpanDiagram nerve_unit(const RelativeCategory& r, int c0, const std::vector<int>& chain);

/// The fibration H(c): spans out of c as objects, pairs (apex morphism over
/// c, endpoint morphism) as arrows, projecting to the base by endpoint.
struct HCategory {
  int c = -1;
  FinCategory cat;
  std::vector<Span> spans;
  std::vector<std::pair<int, int>> arrows;  // (apex map, endpoint map) per cat morphism
  std::vector<int> proj_obj;                // object -> base object
  std::vector<int> proj_mor;                // morphism -> base morphism
  /// The projection functor to the base category; built on demand so the
  /// struct stays freely movable.
  FinFunctor projection(const FinCategory& base) const;
  int index_of(const Span& s) const;
  int arrow_index(const Span& src, const Span& tgt, int apex_map, int end_map) const;
};

HCategory build_H(const RelativeCategory& r, int c);

/// The cocartesian lift (id on apex, h) of h: d -> d' at the span x over d,
/// verified by exhaustive factorization. Returns the arrow index in h_cat.
int cocartesian_lift(const RelativeCategory& r, const HCategory& h_cat, const Span& x,
                     int h);

/// The cartesian lift over a hypercover w: d' -> d at the span x over d,
/// built from the canonical pullback of x's right leg along w and verified
/// cartesian over the restriction to the walking arrow.
int cartesian_lift(const RelativeCategory& r, const HCategory& h_cat, const Span& x,
                   int w);

}  // namespace spanloc
