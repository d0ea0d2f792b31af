#pragma once

#include <memory>
#include <vector>

#include "spanloc/fincat.hpp"

namespace spanloc {

/// A finite category with a distinguished hypercover class W. Identities are
/// always members of W; user input only lists nonidentity hypercovers.
class RelativeCategory {
 public:
  RelativeCategory(FinCategory base, std::vector<int> hypercovers);

  const FinCategory& base() const { return base_; }
  bool in_w(int m) const { return in_w_[m]; }
  const std::vector<bool>& w_mask() const { return in_w_; }
  std::vector<int> w_list() const;

  /// Canonical (memoized) pullback in the base category.
  const std::optional<PullbackCone>& pullback(int f, int g) const {
    return cache_->get(f, g);
  }

 private:
  FinCategory base_;
  std::vector<bool> in_w_;
  mutable std::unique_ptr<PullbackCache> cache_;
};

/// Hypercover axioms: W contains every isomorphism, is closed under
/// composition, and is stable under pullback (the cospan pullback exists and
/// its projection away from the hypercover lies in W). One violation per
/// failed clause, each with a witness.
std::vector<Violation> validate_hypercovers(const RelativeCategory& r);

/// Smallest superset of W closed under 2-out-of-3, by fixed-point iteration
/// over composable pairs.
std::vector<bool> two_out_of_three_closure(const RelativeCategory& r);

}  // namespace spanloc
