#pragma once

#include <optional>
#include <vector>

#include "spanloc/relcat.hpp"

namespace spanloc {

/// The triangular poset of pairs (i, j), 0 <= i <= j <= n, ordered by
/// (i, j) <= (i', j') iff i <= i' and j >= j'. Edges (i, j) -> (i, j') are
/// marked (they carry the hypercover legs of span diagrams).
struct SigmaPoset {
  int n = 0;
  std::vector<std::pair<int, int>> elements;  // lexicographic (i, j)

  int index(int i, int j) const { return i * (2 * n + 3 - i) / 2 + (j - i); }
  std::pair<int, int> pair_of(int e) const { return elements[e]; }
  int size() const { return static_cast<int>(elements.size()); }

  bool leq(int a, int b) const {
    auto [i, j] = elements[a];
    auto [i2, j2] = elements[b];
    return i <= i2 && j >= j2;
  }
  /// Marked iff the (nonidentity) relation keeps i fixed.
  bool marked(int a, int b) const {
    return leq(a, b) && elements[a].first == elements[b].first && a != b;
  }
};

SigmaPoset build_sigma(int n);

/// Σₙ as a finite category: one morphism "(i,j)->(i',j')" per related pair.
FinCategory sigma_category(const SigmaPoset& s);

/// Element map Σ_m -> Σ_n induced by a monotone alpha: [m] -> [n],
/// (i, j) |-> (alpha(i), alpha(j)). Throws NonMonotone.
std::vector<int> sigma_map(const SigmaPoset& from, const SigmaPoset& to,
                           const std::vector<int>& alpha);

/// Elements of the Λₙ skeleton: pairs with j - i <= 1 (size 2n + 1).
std::vector<int> lambda_subposet(const SigmaPoset& s);

/// A functor Σₙ -> C recorded on objects and cover edges. down[e] is the
/// image of the marked cover (i, j) -> (i, j-1); right[e] of the cover
/// (i, j) -> (i+1, j); -1 where the cover does not exist. A partial diagram
/// (for Kan extension input) has -1 entries outside Λₙ.
struct SpanDiagram {
  int n = 0;
  std::vector<int> obj;
  std::vector<int> down;
  std::vector<int> right;

  bool operator==(const SpanDiagram& other) const {
    return n == other.n && obj == other.obj && down == other.down &&
           right == other.right;
  }
};

/// Image of the unique morphism from `from` to `to` of Σₙ, composed from
/// cover edges (down-first path). Requires from <= to.
int diagram_edge(const FinCategory& c, const SigmaPoset& s, const SpanDiagram& f,
                 int from, int to);

/// Full SpanDiagram invariants: cover squares commute, marked edges land in
/// W, and every square i < i' <= j' < j is cartesian.
std::vector<Violation> validate_span_diagram(const RelativeCategory& r,
                                             const SigmaPoset& s, const SpanDiagram& f);

/// Extends a functor on Λₙ to Σₙ by iterated canonical pullbacks
/// F(i, j) = F(i, j-1) ×_{F(i+1, j-1)} F(i+1, j), filling bands in order of
/// increasing j - i. Throws MissingPullback (with the witness cospan) when a
/// required pullback is absent.
SpanDiagram right_kan_extend(const RelativeCategory& r, const SigmaPoset& s,
                             const SpanDiagram& partial);

struct DiagramConditions {
  bool all_squares = false;
  bool inner_squares = false;
  bool rke = false;
};

/// The three equivalent cartesianness conditions, evaluated independently:
/// (1) every square is cartesian, (2) only the inner squares i' = i+1,
/// j' = j-1 are, (3) the diagram agrees with the canonical Kan extension of
/// its Λₙ restriction up to mediating isomorphisms of apexes.
DiagramConditions check_diagram_conditions(const RelativeCategory& r,
                                           const SigmaPoset& s, const SpanDiagram& f);

/// Converts a functor sigma_category(s) -> C into cover-edge form.
SpanDiagram diagram_from_functor(const SigmaPoset& s, const FinFunctor& f);

}  // namespace spanloc
