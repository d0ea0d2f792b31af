#pragma once

#include <string>

#include "spanloc/span.hpp"

namespace spanloc {

/// The identity 1-cell at an object: the span c <= c -> c on identities.
Span identity_span(const FinCategory& c, int object);

/// Left whiskering s * beta: for s: a -> b and beta: t => t' (both b -> c),
/// the induced 2-cell comp(s, t) => comp(s, t'). Computed as the mediating
/// morphism between the two canonical pullback cones.
Span2Cell whisker_left(const RelativeCategory& r, const Span& s, const Span2Cell& beta);

/// Right whiskering beta * s: for beta: t => t' (both a -> b) and s: b -> c,
/// the induced 2-cell comp(t, s) => comp(t', s).
Span2Cell whisker_right(const RelativeCategory& r, const Span2Cell& beta, const Span& s);

/// The coherence isomorphism comp(comp(s, t), u) => comp(s, comp(t, u)).
/// Its apex map is the unique mediating morphism between the two iterated
/// canonical pullbacks; it is always invertible.
Span2Cell associator(const RelativeCategory& r, const Span& s, const Span& t,
                     const Span& u);

/// comp(identity_span(a), s) => s; the apex map is the pullback leg into s.
Span2Cell left_unitor(const RelativeCategory& r, const Span& s);

/// comp(s, identity_span(b)) => s.
Span2Cell right_unitor(const RelativeCategory& r, const Span& s);

/// The right-adjoint data attached to a hypercover f: d -> c. The left 1-cell
/// is d <= d -> c through f, the right 1-cell is c <= d -> d, the unit is the
/// diagonal into d x_c d, and the counit is induced by f.
struct AdjunctionDatum {
  int f = -1;
  Span left;            // d -> c
  Span right;           // c -> d
  Span2Cell unit;       // identity_span(d) => comp(left, right)
  Span2Cell counit;     // comp(right, left) => identity_span(c)
};

AdjunctionDatum adjunction_datum(const RelativeCategory& r, int f);

/// Builds the adjunction datum for the hypercover f and evaluates both
/// triangle composites through the canonical coherence isomorphisms; true iff
/// each equals the corresponding unitor strictly.
CheckResult adjunction_check(const RelativeCategory& r, int f);

/// For a commuting square f . gp == g . fp with f, fp hypercovers, checks the
/// square is cartesian (throws NotCartesian otherwise unless force is set)
/// and returns whether the comparison map from dom(fp) into the canonical
/// pullback of (g, f) is an isomorphism. With force, a non-cartesian square
/// is processed anyway so the comparison can be observed to fail.
CheckResult beck_chevalley_check(const RelativeCategory& r, int f, int g, int fp,
                                 int gp, bool force = false);

}  // namespace spanloc
