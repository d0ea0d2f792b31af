#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spanloc/span.hpp"

namespace spanloc {

/// One step of a zigzag: a morphism applied forward, or a hypercover applied
/// backward (formally inverted).
struct Letter {
  int m = -1;
  bool inv = false;
  bool operator==(const Letter& o) const { return m == o.m && inv == o.inv; }
  bool operator<(const Letter& o) const {
    return m != o.m ? m < o.m : inv < o.inv;
  }
};

/// Alternating word of forward morphisms and formal inverses, read in
/// application order (first letter applied first).
using ZigzagWord = std::vector<Letter>;

/// The homotopy category of the localization. Objects mirror the base
/// category's objects index-for-index; mor_map is the canonical functor on
/// morphisms; expr holds a representative zigzag per morphism.
struct HoCategory {
  FinCategory cat;
  std::vector<int> mor_map;
  std::vector<ZigzagWord> expr;
};

/// Hom-sets as components of the span mapping categories, composition induced
/// by compose_spans. Representative independence is checked exhaustively;
/// throws IllDefinedComposition on failure (an implementation fault).
HoCategory ho_via_spans(const RelativeCategory& r);

struct OracleResult {
  bool stable = false;
  std::string note;
  std::optional<HoCategory> ho;
};

/// Independent zigzag oracle: congruence closure over alternating words of
/// length <= max_len, with a stabilization probe at length max_len + 2.
/// Returns stable = false (and no category) when the class structure has not
/// stabilized or the bound is too small to represent the result.
OracleResult oracle_localize(const RelativeCategory& r, int max_len, int max_iter);

/// Same oracle over an explicit morphism class (must be composition-closed
/// and contain all identities); used for 2-out-of-3 closure comparisons.
OracleResult oracle_localize_with(const FinCategory& base, const std::vector<bool>& w,
                                  int max_len, int max_iter);

/// Identity-on-objects isomorphism test matching the two canonical functors:
/// evaluates each representative zigzag of `a` inside `b` and checks the
/// resulting map is a functorial hom-bijection.
CheckResult compare_localizations(const RelativeCategory& r, const HoCategory& a,
                                  const HoCategory& b);

/// For every hypercover w: d' -> d and every object c, post-composition must
/// induce a bijection on components of the mapping categories. Returns all
/// failures.
std::vector<Violation> w_locality_report(const RelativeCategory& r);

/// Components of the object set of a finite category under zigzags of
/// morphisms; class ids numbered by first appearance.
std::vector<int> component_classes(const FinCategory& c);

}  // namespace spanloc
