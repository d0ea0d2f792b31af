#include "spanloc/fincat.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>

namespace spanloc {

int FinCategory::add_object(const std::string& name) {
  assert(!finalized_);
  int idx = static_cast<int>(objects_.size());
  objects_.push_back(name);
  object_index_.emplace(name, idx);
  int id = add_morphism("id_" + name, idx, idx);
  identity_.push_back(id);
  return idx;
}

int FinCategory::add_morphism(const std::string& name, int dom, int cod) {
  assert(!finalized_);
  int idx = static_cast<int>(morphisms_.size());
  morphisms_.push_back(Morphism{name, dom, cod});
  morphism_index_.emplace(name, idx);
  return idx;
}

void FinCategory::set_composite(int g, int f, int composite) {
  assert(!finalized_);
  compose_[pair_key(g, f)] = composite;
}

void FinCategory::finalize() {
  assert(!finalized_);
  // Identity composites are forced.
  for (int m = 0; m < num_morphisms(); ++m) {
    compose_[pair_key(m, identity_[morphisms_[m].dom])] = m;
    compose_[pair_key(identity_[morphisms_[m].cod], m)] = m;
  }
  hom_.clear();
  for (int m = 0; m < num_morphisms(); ++m)
    hom_[pair_key(morphisms_[m].dom, morphisms_[m].cod)].push_back(m);
  finalized_ = true;
  inverse_.assign(num_morphisms(), -1);
  for (int m = 0; m < num_morphisms(); ++m) {
    for (int r : hom(morphisms_[m].cod, morphisms_[m].dom)) {
      if (compose(r, m) == identity_[morphisms_[m].dom] &&
          compose(m, r) == identity_[morphisms_[m].cod]) {
        inverse_[m] = r;
        break;
      }
    }
  }
}

int FinCategory::object_index(const std::string& name) const {
  auto it = object_index_.find(name);
  return it == object_index_.end() ? -1 : it->second;
}

int FinCategory::morphism_index(const std::string& name) const {
  auto it = morphism_index_.find(name);
  return it == morphism_index_.end() ? -1 : it->second;
}

bool FinCategory::is_identity(int m) const {
  return identity_[morphisms_[m].dom] == m;
}

int FinCategory::compose(int g, int f) const {
  if (morphisms_[f].cod != morphisms_[g].dom) return -1;
  auto it = compose_.find(pair_key(g, f));
  if (it != compose_.end()) return it->second;
  return compose_fallback_ ? compose_fallback_(g, f) : -1;
}

const std::vector<int>& FinCategory::hom(int a, int b) const {
  static const std::vector<int> kEmpty;
  auto it = hom_.find(pair_key(a, b));
  return it == hom_.end() ? kEmpty : it->second;
}

bool FinCategory::has_iso(int a, int b) const {
  for (int m : hom(a, b))
    if (is_iso(m)) return true;
  return false;
}

std::vector<Violation> FinCategory::validate() const {
  std::vector<Violation> out;
  {
    std::unordered_map<std::string, int> seen;
    for (int o = 0; o < num_objects(); ++o)
      if (!seen.emplace(objects_[o], o).second)
        out.push_back({"object-name-unique", objects_[o]});
    seen.clear();
    for (int m = 0; m < num_morphisms(); ++m)
      if (!seen.emplace(morphisms_[m].name, m).second)
        out.push_back({"morphism-name-unique", morphisms_[m].name});
  }
  for (int m = 0; m < num_morphisms(); ++m) {
    const auto& mo = morphisms_[m];
    if (mo.dom < 0 || mo.dom >= num_objects() || mo.cod < 0 || mo.cod >= num_objects())
      out.push_back({"morphism-endpoints", mo.name});
  }
  // Totality and identity laws.
  for (int g = 0; g < num_morphisms(); ++g) {
    for (int f = 0; f < num_morphisms(); ++f) {
      if (morphisms_[f].cod != morphisms_[g].dom) continue;
      int gf = compose(g, f);
      if (gf < 0) {
        out.push_back({"composition-total",
                       morphisms_[g].name + " after " + morphisms_[f].name});
        continue;
      }
      if (morphisms_[gf].dom != morphisms_[f].dom ||
          morphisms_[gf].cod != morphisms_[g].cod)
        out.push_back({"composition-endpoints",
                       morphisms_[g].name + " after " + morphisms_[f].name});
    }
  }
  for (int m = 0; m < num_morphisms(); ++m) {
    if (compose(m, identity_[morphisms_[m].dom]) != m ||
        compose(identity_[morphisms_[m].cod], m) != m)
      out.push_back({"identity-law", morphisms_[m].name});
  }
  // Associativity on all composable triples.
  for (int h = 0; h < num_morphisms(); ++h) {
    for (int g = 0; g < num_morphisms(); ++g) {
      if (morphisms_[g].cod != morphisms_[h].dom) continue;
      int hg = compose(h, g);
      for (int f = 0; f < num_morphisms(); ++f) {
        if (morphisms_[f].cod != morphisms_[g].dom) continue;
        int gf = compose(g, f);
        if (hg < 0 || gf < 0) continue;  // already reported as totality
        if (compose(hg, f) != compose(h, gf))
          out.push_back({"associativity", "(" + morphisms_[h].name + ", " +
                                              morphisms_[g].name + ", " +
                                              morphisms_[f].name + ")"});
      }
    }
  }
  return out;
}

std::vector<Violation> FinFunctor::validate() const {
  std::vector<Violation> out;
  const FinCategory& s = *source;
  const FinCategory& t = *target;
  for (int m = 0; m < s.num_morphisms(); ++m) {
    int fm = morphism_map[m];
    if (t.dom(fm) != object_map[s.dom(m)] || t.cod(fm) != object_map[s.cod(m)])
      out.push_back({"functor-endpoints", s.morphism_name(m)});
  }
  for (int o = 0; o < s.num_objects(); ++o)
    if (morphism_map[s.identity(o)] != t.identity(object_map[o]))
      out.push_back({"functor-identity", s.object_name(o)});
  for (int g = 0; g < s.num_morphisms(); ++g) {
    for (int f = 0; f < s.num_morphisms(); ++f) {
      if (s.cod(f) != s.dom(g)) continue;
      int gf = s.compose(g, f);
      if (gf < 0) continue;
      if (t.compose(morphism_map[g], morphism_map[f]) != morphism_map[gf])
        out.push_back({"functor-composition",
                       s.morphism_name(g) + " after " + s.morphism_name(f)});
    }
  }
  return out;
}

FinFunctor identity_functor(const FinCategory& c) {
  FinFunctor f;
  f.source = &c;
  f.target = &c;
  f.object_map.resize(c.num_objects());
  f.morphism_map.resize(c.num_morphisms());
  for (int o = 0; o < c.num_objects(); ++o) f.object_map[o] = o;
  for (int m = 0; m < c.num_morphisms(); ++m) f.morphism_map[m] = m;
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  assert(f.target == g.source);
  FinFunctor out;
  out.source = f.source;
  out.target = g.target;
  out.object_map.resize(f.object_map.size());
  out.morphism_map.resize(f.morphism_map.size());
  for (size_t o = 0; o < f.object_map.size(); ++o)
    out.object_map[o] = g.object_map[f.object_map[o]];
  for (size_t m = 0; m < f.morphism_map.size(); ++m)
    out.morphism_map[m] = g.morphism_map[f.morphism_map[m]];
  return out;
}

bool is_natural(const FinFunctor& f, const FinFunctor& g,
                const std::vector<int>& components) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  for (int o = 0; o < s.num_objects(); ++o) {
    int c = components[o];
    if (t.dom(c) != f.object_map[o] || t.cod(c) != g.object_map[o]) return false;
  }
  for (int m = 0; m < s.num_morphisms(); ++m) {
    if (t.compose(components[s.cod(m)], f.morphism_map[m]) !=
        t.compose(g.morphism_map[m], components[s.dom(m)]))
      return false;
  }
  return true;
}

namespace {

std::vector<PullbackCone> all_cones(const FinCategory& c, int f, int g) {
  std::vector<PullbackCone> cones;
  int df = c.dom(f), dg = c.dom(g);
  for (int apex = 0; apex < c.num_objects(); ++apex) {
    for (int p : c.hom(apex, df)) {
      for (int q : c.hom(apex, dg)) {
        if (c.compose(f, p) == c.compose(g, q)) cones.push_back({apex, p, q});
      }
    }
  }
  return cones;
}

// Exactly-one mediating morphism from every test cone.
bool universal(const FinCategory& c, const PullbackCone& cand,
               const std::vector<PullbackCone>& cones) {
  for (const auto& test : cones) {
    int found = 0;
    for (int m : c.hom(test.apex, cand.apex)) {
      if (c.compose(cand.leg1, m) == test.leg1 && c.compose(cand.leg2, m) == test.leg2)
        ++found;
    }
    if (found != 1) return false;
  }
  return true;
}

}  // namespace

std::optional<PullbackCone> pullback(const FinCategory& c, int f, int g) {
  if (c.cod(f) != c.cod(g))
    throw CospanMismatch("pullback: cospan legs " + c.morphism_name(f) + ", " +
                         c.morphism_name(g) + " have different codomains");
  auto cones = all_cones(c, f, g);
  std::optional<PullbackCone> best;
  for (const auto& cand : cones) {
    if (!universal(c, cand, cones)) continue;
    if (!best || std::tie(cand.apex, cand.leg1, cand.leg2) <
                     std::tie(best->apex, best->leg1, best->leg2))
      best = cand;
  }
  return best;
}

bool is_pullback_cone(const FinCategory& c, int f, int g, const PullbackCone& cone) {
  if (c.cod(f) != c.cod(g)) return false;
  if (c.dom(cone.leg1) != cone.apex || c.dom(cone.leg2) != cone.apex) return false;
  if (c.cod(cone.leg1) != c.dom(f) || c.cod(cone.leg2) != c.dom(g)) return false;
  if (c.compose(f, cone.leg1) != c.compose(g, cone.leg2)) return false;
  auto cones = all_cones(c, f, g);
  return universal(c, cone, cones);
}

int mediating_morphism(const FinCategory& c, const PullbackCone& uni,
                       const PullbackCone& test) {
  for (int m : c.hom(test.apex, uni.apex)) {
    if (c.compose(uni.leg1, m) == test.leg1 && c.compose(uni.leg2, m) == test.leg2)
      return m;
  }
  return -1;
}

const std::optional<PullbackCone>& PullbackCache::get(int f, int g) {
  long long key = (static_cast<long long>(f) << 32) | static_cast<unsigned int>(g);
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, pullback(*cat_, f, g)).first;
  return it->second;
}

std::vector<FinFunctor> enumerate_functors(const FinCategory& d, const FinCategory& c,
                                           long long budget) {
  const long long cap = std::numeric_limits<long long>::max() / 2;
  long long estimate = 1;
  for (int o = 0; o < d.num_objects(); ++o) {
    if (estimate > cap / std::max(1, c.num_objects())) {
      estimate = cap;  // saturate on overflow only; keep the estimate exact
      break;
    }
    estimate *= std::max(1, c.num_objects());
  }
  if (estimate > budget)
    throw BudgetExceeded(estimate, "enumerate_functors: search-space estimate exceeds budget");

  // Nonidentity morphisms become assignable once both endpoints are mapped;
  // schedule each right after the later of its two endpoints.
  int nobj = d.num_objects();
  std::vector<std::vector<int>> mors_after(nobj);
  for (int m = 0; m < d.num_morphisms(); ++m) {
    if (d.is_identity(m)) continue;
    mors_after[std::max(d.dom(m), d.cod(m))].push_back(m);
  }

  std::vector<FinFunctor> out;
  std::vector<int> obj_map(nobj, -1);
  std::vector<int> mor_map(d.num_morphisms(), -1);

  std::function<void(int, size_t)> rec_mor;
  std::function<void(int)> rec_obj = [&](int o) {
    if (o == nobj) {
      // Composition closure over all composable nonidentity pairs.
      for (int g = 0; g < d.num_morphisms(); ++g) {
        for (int f = 0; f < d.num_morphisms(); ++f) {
          if (d.cod(f) != d.dom(g)) continue;
          int gf = d.compose(g, f);
          if (gf < 0) return;
          if (c.compose(mor_map[g], mor_map[f]) != mor_map[gf]) return;
        }
      }
      FinFunctor fun;
      fun.source = &d;
      fun.target = &c;
      fun.object_map = obj_map;
      fun.morphism_map = mor_map;
      out.push_back(std::move(fun));
      return;
    }
    for (int image = 0; image < c.num_objects(); ++image) {
      obj_map[o] = image;
      mor_map[d.identity(o)] = c.identity(image);
      rec_mor(o, 0);
    }
    obj_map[o] = -1;
  };
  rec_mor = [&](int o, size_t k) {
    if (k == mors_after[o].size()) {
      rec_obj(o + 1);
      return;
    }
    int m = mors_after[o][k];
    for (int image : c.hom(obj_map[d.dom(m)], obj_map[d.cod(m)])) {
      mor_map[m] = image;
      rec_mor(o, k + 1);
    }
    mor_map[m] = -1;
  };
  rec_obj(0);
  return out;
}

CheckResult check_equivalence(const FinFunctor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  // Fully faithful: hom(a, b) -> hom(Fa, Fb) bijective for all a, b.
  for (int a = 0; a < s.num_objects(); ++a) {
    for (int b = 0; b < s.num_objects(); ++b) {
      const auto& src_hom = s.hom(a, b);
      const auto& tgt_hom = t.hom(f.object_map[a], f.object_map[b]);
      if (src_hom.size() != tgt_hom.size())
        return {false, "hom(" + s.object_name(a) + ", " + s.object_name(b) + ") has " +
                           std::to_string(src_hom.size()) + " elements vs " +
                           std::to_string(tgt_hom.size()) + " in target"};
      std::vector<bool> hit(tgt_hom.size(), false);
      for (int m : src_hom) {
        int im = f.morphism_map[m];
        bool placed = false;
        for (size_t i = 0; i < tgt_hom.size(); ++i) {
          if (tgt_hom[i] == im && !hit[i]) {
            hit[i] = true;
            placed = true;
            break;
          }
        }
        if (!placed)
          return {false, "hom(" + s.object_name(a) + ", " + s.object_name(b) +
                             ") not mapped bijectively (collision at " +
                             s.morphism_name(m) + ")"};
      }
    }
  }
  // Essential surjectivity.
  for (int x = 0; x < t.num_objects(); ++x) {
    bool hit = false;
    for (int a = 0; a < s.num_objects() && !hit; ++a) {
      int fa = f.object_map[a];
      if (fa == x || t.has_iso(fa, x)) hit = true;
    }
    if (!hit)
      return {false, "object " + t.object_name(x) + " missing from essential image"};
  }
  return {true, ""};
}

FinCategory opposite(const FinCategory& c) {
  FinCategory op;
  for (int o = 0; o < c.num_objects(); ++o) op.add_object(c.object_name(o));
  // Nonidentity morphisms keep their index offsets: op morphism for m is
  // looked up by name.
  std::vector<int> map(c.num_morphisms(), -1);
  for (int o = 0; o < c.num_objects(); ++o) map[c.identity(o)] = op.identity(o);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    map[m] = op.add_morphism(c.morphism_name(m), c.cod(m), c.dom(m));
  }
  for (int g = 0; g < c.num_morphisms(); ++g) {
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (c.cod(f) != c.dom(g)) continue;
      int gf = c.compose(g, f);
      if (gf < 0 || c.is_identity(f) || c.is_identity(g)) continue;
      op.set_composite(map[f], map[g], map[gf]);
    }
  }
  op.finalize();
  return op;
}

FinFunctor opposite_functor(const FinFunctor& f, const FinCategory& src_op,
                            const FinCategory& tgt_op) {
  FinFunctor out;
  out.source = &src_op;
  out.target = &tgt_op;
  out.object_map.resize(src_op.num_objects());
  out.morphism_map.resize(src_op.num_morphisms());
  for (int o = 0; o < src_op.num_objects(); ++o) {
    int so = f.source->object_index(src_op.object_name(o));
    out.object_map[o] = tgt_op.object_index(f.target->object_name(f.object_map[so]));
  }
  for (int m = 0; m < src_op.num_morphisms(); ++m) {
    int sm = f.source->morphism_index(src_op.morphism_name(m));
    out.morphism_map[m] =
        tgt_op.morphism_index(f.target->morphism_name(f.morphism_map[sm]));
  }
  return out;
}

}  // namespace spanloc
