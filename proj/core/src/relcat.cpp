#include "spanloc/relcat.hpp"

namespace spanloc {

RelativeCategory::RelativeCategory(FinCategory base, std::vector<int> hypercovers)
    : base_(std::move(base)) {
  in_w_.assign(base_.num_morphisms(), false);
  for (int m : hypercovers) in_w_[m] = true;
  for (int o = 0; o < base_.num_objects(); ++o) in_w_[base_.identity(o)] = true;
  cache_ = std::make_unique<PullbackCache>(base_);
}

std::vector<int> RelativeCategory::w_list() const {
  std::vector<int> out;
  for (int m = 0; m < base_.num_morphisms(); ++m)
    if (in_w_[m]) out.push_back(m);
  return out;
}

std::vector<Violation> validate_hypercovers(const RelativeCategory& r) {
  const FinCategory& c = r.base();
  std::vector<Violation> out;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_iso(m) && !r.in_w(m))
      out.push_back({"isomorphisms-in-w", c.morphism_name(m)});
  }
  for (int g = 0; g < c.num_morphisms(); ++g) {
    if (!r.in_w(g)) continue;
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (!r.in_w(f) || c.cod(f) != c.dom(g)) continue;
      int gf = c.compose(g, f);
      if (gf >= 0 && !r.in_w(gf))
        out.push_back({"composition-closed",
                       c.morphism_name(g) + " after " + c.morphism_name(f) + " = " +
                           c.morphism_name(gf)});
    }
  }
  for (int w = 0; w < c.num_morphisms(); ++w) {
    if (!r.in_w(w)) continue;
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (c.cod(f) != c.cod(w)) continue;
      const auto& cone = r.pullback(w, f);
      if (!cone) {
        out.push_back({"pullback-exists",
                       "cospan (" + c.morphism_name(w) + ", " + c.morphism_name(f) + ")"});
        continue;
      }
      // leg2 is the projection to dom(f); it must again be a hypercover.
      if (!r.in_w(cone->leg2))
        out.push_back({"pullback-stable",
                       "pullback of " + c.morphism_name(w) + " along " +
                           c.morphism_name(f) + " has projection " +
                           c.morphism_name(cone->leg2) + " outside W"});
    }
  }
  return out;
}

std::vector<bool> two_out_of_three_closure(const RelativeCategory& r) {
  const FinCategory& c = r.base();
  std::vector<bool> w = r.w_mask();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int g = 0; g < c.num_morphisms(); ++g) {
      for (int f = 0; f < c.num_morphisms(); ++f) {
        if (c.cod(f) != c.dom(g)) continue;
        int gf = c.compose(g, f);
        if (gf < 0) continue;
        int have = (w[f] ? 1 : 0) + (w[g] ? 1 : 0) + (w[gf] ? 1 : 0);
        if (have == 2) {
          w[f] = w[g] = w[gf] = true;
          changed = true;
        }
      }
    }
  }
  return w;
}

}  // namespace spanloc
