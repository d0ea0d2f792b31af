#include "spanloc/span.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

namespace spanloc {

namespace {

std::string key_of(const std::vector<int>& v) {
  std::string k;
  k.reserve(v.size() * 4);
  for (int x : v) {
    k.append(reinterpret_cast<const char*>(&x), sizeof(int));
  }
  return k;
}

std::string diagram_key(const SpanDiagram& d) {
  std::vector<int> v;
  v.reserve(3 * d.obj.size());
  v.insert(v.end(), d.obj.begin(), d.obj.end());
  v.insert(v.end(), d.down.begin(), d.down.end());
  v.insert(v.end(), d.right.begin(), d.right.end());
  return key_of(v);
}

std::string arrow_key(int src, int tgt, const std::vector<int>& comps) {
  std::vector<int> v{src, tgt};
  v.insert(v.end(), comps.begin(), comps.end());
  return key_of(v);
}

}  // namespace

std::vector<Span> all_spans(const RelativeCategory& r) {
  const FinCategory& c = r.base();
  std::vector<Span> out;
  for (int l = 0; l < c.num_morphisms(); ++l) {
    if (!r.in_w(l)) continue;
    for (int rt = 0; rt < c.num_morphisms(); ++rt) {
      if (c.dom(rt) != c.dom(l)) continue;
      out.push_back({l, rt});
    }
  }
  return out;
}

int MappingCategory::index_of(const Span& s) const {
  for (size_t i = 0; i < spans.size(); ++i)
    if (spans[i] == s) return static_cast<int>(i);
  return -1;
}

MappingCategory mapping_category(const RelativeCategory& r, int c, int d) {
  const FinCategory& base = r.base();
  MappingCategory mc;
  mc.c = c;
  mc.d = d;
  for (int l = 0; l < base.num_morphisms(); ++l) {
    if (!r.in_w(l) || base.cod(l) != c) continue;
    for (int rt = 0; rt < base.num_morphisms(); ++rt) {
      if (base.dom(rt) != base.dom(l) || base.cod(rt) != d) continue;
      mc.spans.push_back({l, rt});
    }
  }
  std::map<std::tuple<int, int, int>, int> arrow_idx;
  for (size_t k = 0; k < mc.spans.size(); ++k) {
    int obj = mc.cat.add_object("span(" + base.morphism_name(mc.spans[k].left) + "," +
                                base.morphism_name(mc.spans[k].right) + ")");
    mc.arrow_apex.resize(mc.cat.num_morphisms(), -1);
    mc.arrow_apex[mc.cat.identity(obj)] = base.identity(base.dom(mc.spans[k].left));
    arrow_idx[{obj, obj, mc.arrow_apex[mc.cat.identity(obj)]}] = mc.cat.identity(obj);
  }
  for (size_t s = 0; s < mc.spans.size(); ++s) {
    for (size_t t = 0; t < mc.spans.size(); ++t) {
      const Span& a = mc.spans[s];
      const Span& b = mc.spans[t];
      for (int m : base.hom(base.dom(a.left), base.dom(b.left))) {
        if (base.compose(b.left, m) != a.left || base.compose(b.right, m) != a.right)
          continue;
        if (s == t && base.is_identity(m)) continue;  // already present
        int idx = mc.cat.add_morphism(
            "a" + std::to_string(mc.cat.num_morphisms()), static_cast<int>(s),
            static_cast<int>(t));
        mc.arrow_apex.resize(mc.cat.num_morphisms(), -1);
        mc.arrow_apex[idx] = m;
        arrow_idx[{static_cast<int>(s), static_cast<int>(t), m}] = idx;
      }
    }
  }
  for (int g = 0; g < mc.cat.num_morphisms(); ++g) {
    for (int f = 0; f < mc.cat.num_morphisms(); ++f) {
      if (mc.cat.cod(f) != mc.cat.dom(g)) continue;
      if (mc.cat.is_identity(f) || mc.cat.is_identity(g)) continue;
      int m = base.compose(mc.arrow_apex[g], mc.arrow_apex[f]);
      auto it = arrow_idx.find({mc.cat.dom(f), mc.cat.cod(g), m});
      assert(it != arrow_idx.end());
      mc.cat.set_composite(g, f, it->second);
    }
  }
  mc.cat.finalize();
  return mc;
}

Span compose_spans(const RelativeCategory& r, const Span& s1, const Span& s2) {
  const FinCategory& c = r.base();
  if (c.cod(s1.right) != c.cod(s2.left))
    throw CospanMismatch("compose_spans: spans are not composable");
  const auto& cone = r.pullback(s1.right, s2.left);
  if (!cone)
    throw MissingPullback("(" + c.morphism_name(s1.right) + ", " +
                              c.morphism_name(s2.left) + ")",
                          "compose_spans: pullback of right leg along hypercover missing");
  return Span{c.compose(s1.left, cone->leg1), c.compose(s2.right, cone->leg2)};
}

int SpanLevel::index_of(const SpanDiagram& d) const {
  if (!diagram_idx.empty()) {
    auto it = diagram_idx.find(diagram_key(d));
    return it == diagram_idx.end() ? -1 : it->second;
  }
  for (size_t i = 0; i < diagrams.size(); ++i)
    if (diagrams[i] == d) return static_cast<int>(i);
  return -1;
}

int SpanLevel::arrow_index(int src, int tgt, const std::vector<int>& components) const {
  if (!arrow_idx.empty()) {
    auto it = arrow_idx.find(arrow_key(src, tgt, components));
    return it == arrow_idx.end() ? -1 : it->second;
  }
  for (int m = 0; m < cat.num_morphisms(); ++m)
    if (arrow_ends[m].first == src && arrow_ends[m].second == tgt &&
        arrow_components[m] == components)
      return m;
  return -1;
}

namespace {

// Natural transformations F -> G with isomorphism components at the (i, i)
// corners, enumerated by backtracking over elements in lexicographic order.
void enumerate_transformations(const RelativeCategory& r, const SigmaPoset& s,
                               const SpanDiagram& f, const SpanDiagram& g,
                               const std::function<void(const std::vector<int>&)>& emit) {
  const FinCategory& c = r.base();
  int size = s.size();
  std::vector<int> comps(size, -1);
  std::function<void(int)> rec = [&](int e) {
    if (e == size) {
      emit(comps);
      return;
    }
    auto [i, j] = s.pair_of(e);
    for (int m : c.hom(f.obj[e], g.obj[e])) {
      if (i == j && !c.is_iso(m)) continue;
      // Naturality on the down edge out of e and on the right edge into e.
      if (j > i) {
        int tgt = s.index(i, j - 1);
        if (c.compose(g.down[e], m) != c.compose(comps[tgt], f.down[e])) continue;
      }
      if (i > 0 && j >= i) {
        int src = s.index(i - 1, j);
        if (s.pair_of(src).second == j && i - 1 <= j) {
          if (c.compose(m, f.right[src]) != c.compose(g.right[src], comps[src])) continue;
        }
      }
      comps[e] = m;
      rec(e + 1);
    }
    comps[e] = -1;
  };
  rec(0);
}

// The restriction of d along a poset map smap: target sigma -> source sigma,
// with edges composed along staircase paths.
SpanDiagram restrict_diagram(const FinCategory& base, const SigmaPoset& target,
                             const SigmaPoset& source, const std::vector<int>& smap,
                             const SpanDiagram& d) {
  SpanDiagram e;
  e.n = target.n;
  e.obj.assign(target.size(), -1);
  e.down.assign(target.size(), -1);
  e.right.assign(target.size(), -1);
  for (int x = 0; x < target.size(); ++x) {
    e.obj[x] = d.obj[smap[x]];
    auto [i, j] = target.pair_of(x);
    if (j > i)
      e.down[x] = diagram_edge(base, source, d, smap[x], smap[target.index(i, j - 1)]);
    if (i < j)
      e.right[x] = diagram_edge(base, source, d, smap[x], smap[target.index(i + 1, j)]);
  }
  return e;
}

// Every chain of n composable spans, right Kan extended, deduplicated.
// A negative budget skips the estimate check.
std::vector<SpanDiagram> canonical_diagrams(const RelativeCategory& r,
                                            const SigmaPoset& s,
                                            const std::vector<Span>& spans,
                                            long long budget) {
  const FinCategory& base = r.base();
  int n = s.n;

  // Count chains first; this is the enumeration estimate.
  if (budget >= 0) {
    const long long kCap = (1LL << 62);
    std::vector<long long> ways(base.num_objects(), 1);
    for (int k = 0; k < n; ++k) {
      std::vector<long long> next(base.num_objects(), 0);
      for (const Span& sp : spans) {
        long long add = ways[base.cod(sp.left)];
        next[base.cod(sp.right)] =
            std::min(kCap, next[base.cod(sp.right)] + add);
      }
      ways = std::move(next);
    }
    long long total = 0;
    for (long long w : ways) total = std::min(kCap, total + w);
    if (total > budget)
      throw BudgetExceeded(total, "build_span_level: chain count exceeds budget");
  }

  std::vector<SpanDiagram> out;
  std::map<std::string, int> seen;
  std::vector<Span> chain;
  std::function<void(int)> emit_chain = [&](int endpoint) {
    if (static_cast<int>(chain.size()) == n) {
      SpanDiagram partial;
      partial.n = n;
      partial.obj.assign(s.size(), -1);
      partial.down.assign(s.size(), -1);
      partial.right.assign(s.size(), -1);
      if (n == 0) {
        partial.obj[0] = endpoint;
      } else {
        for (int i = 0; i < n; ++i) {
          const Span& sp = chain[i];
          partial.obj[s.index(i, i)] = base.cod(sp.left);
          partial.obj[s.index(i, i + 1)] = base.dom(sp.left);
          partial.down[s.index(i, i + 1)] = sp.left;
          partial.right[s.index(i, i + 1)] = sp.right;
        }
        partial.obj[s.index(n, n)] = base.cod(chain.back().right);
      }
      SpanDiagram full = right_kan_extend(r, s, partial);
      std::string key = diagram_key(full);
      if (!seen.count(key)) {
        seen[key] = static_cast<int>(out.size());
        out.push_back(full);
      }
      return;
    }
    for (const Span& sp : spans) {
      if (!chain.empty() && base.cod(sp.left) != endpoint) continue;
      chain.push_back(sp);
      emit_chain(base.cod(sp.right));
      chain.pop_back();
    }
  };
  if (n == 0) {
    for (int o = 0; o < base.num_objects(); ++o) emit_chain(o);
  } else {
    emit_chain(-1);
  }
  return out;
}

// All monotone surjections [n] -> [j] as value vectors of length n+1.
void for_each_surjection(int n, int j,
                         const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> alpha(n + 1, -1);
  std::function<void(int, int)> rec = [&](int pos, int prev) {
    if (pos == n + 1) {
      if (prev == j) fn(alpha);
      return;
    }
    int remaining = n - pos;  // slots after this one
    for (int v = prev; v <= prev + 1 && v <= j; ++v) {
      if (j - v > remaining) continue;  // cannot reach j any more
      alpha[pos] = v;
      rec(pos + 1, v);
    }
  };
  alpha[0] = 0;
  rec(1, 0);
}

// Componentwise composition resolver shared by a level category and anything
// holding a copy of it; self-contained so levels stay freely movable.
struct LevelResolver {
  FinCategory base;
  std::vector<std::vector<int>> comps;
  std::vector<std::pair<int, int>> ends;
  std::unordered_map<std::string, int> arrow_idx;
};

}  // namespace

SpanLevel build_span_level(const RelativeCategory& r, int n, long long budget) {
  const FinCategory& base = r.base();
  SpanLevel level;
  level.n = n;
  level.sigma = build_sigma(n);
  const SigmaPoset& s = level.sigma;

  std::vector<Span> spans = all_spans(r);

  level.diagrams = canonical_diagrams(r, s, spans, budget);
  for (size_t i = 0; i < level.diagrams.size(); ++i)
    level.diagram_idx[diagram_key(level.diagrams[i])] = static_cast<int>(i);

  // Close the diagram set under degeneracies: images of lower-level canonical
  // diagrams along every monotone surjection [n] ->> [j]. (Face images of
  // canonical diagrams are canonical already, so this closes the levels under
  // all simplicial actions.)
  for (int j = 0; j < n; ++j) {
    SigmaPoset sj = build_sigma(j);
    std::vector<SpanDiagram> lower = canonical_diagrams(r, sj, spans, -1);
    for_each_surjection(n, j, [&](const std::vector<int>& alpha) {
      std::vector<int> smap = sigma_map(s, sj, alpha);
      for (const SpanDiagram& d : lower) {
        SpanDiagram e = restrict_diagram(base, s, sj, smap, d);
        std::string key = diagram_key(e);
        if (!level.diagram_idx.count(key)) {
          level.diagram_idx[key] = static_cast<int>(level.diagrams.size());
          level.diagrams.push_back(e);
        }
      }
    });
  }

  // Units of all n-chains of the base also live here: their interiors repeat
  // the chain objects, which need not match the canonical pullback choice.
  {
    std::vector<int> chain(n);
    std::function<void(int, int)> emit = [&](int pos, int at) {
      if (pos == n) {
        int c0 = n ? base.dom(chain[0]) : at;
        SpanDiagram u = nerve_unit(r, c0, chain);
        std::string key = diagram_key(u);
        if (!level.diagram_idx.count(key)) {
          level.diagram_idx[key] = static_cast<int>(level.diagrams.size());
          level.diagrams.push_back(u);
        }
        return;
      }
      for (int m = 0; m < base.num_morphisms(); ++m)
        if (base.dom(m) == at) {
          chain[pos] = m;
          emit(pos + 1, base.cod(m));
        }
    };
    for (int c = 0; c < base.num_objects(); ++c) emit(0, c);
  }

  // Level category: one object per diagram, arrows by transformation search.
  for (size_t k = 0; k < level.diagrams.size(); ++k) {
    int obj = level.cat.add_object("F" + std::to_string(k));
    (void)obj;
  }
  int nobj = static_cast<int>(level.diagrams.size());
  level.arrow_components.resize(level.cat.num_morphisms());
  level.arrow_ends.resize(level.cat.num_morphisms());
  for (int k = 0; k < nobj; ++k) {
    std::vector<int> idc(s.size());
    for (int e = 0; e < s.size(); ++e) idc[e] = base.identity(level.diagrams[k].obj[e]);
    int m = level.cat.identity(k);
    level.arrow_components[m] = idc;
    level.arrow_ends[m] = {k, k};
    level.arrow_idx[arrow_key(k, k, idc)] = m;
  }
  // Arrows need isomorphic endpoint tuples; group diagrams by endpoints to
  // avoid the quadratic scan over all diagram pairs.
  std::map<std::vector<int>, std::vector<int>> by_endpoints;
  for (int k = 0; k < nobj; ++k) {
    std::vector<int> key(n + 1);
    for (int i = 0; i <= n; ++i) key[i] = level.diagrams[k].obj[s.index(i, i)];
    by_endpoints[key].push_back(k);
  }
  auto compatible = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (int i = 0; i <= n; ++i)
      if (x[i] != y[i] && !base.has_iso(x[i], y[i])) return false;
    return true;
  };
  std::vector<std::pair<int, int>> pairs;
  for (auto ga = by_endpoints.begin(); ga != by_endpoints.end(); ++ga) {
    for (auto gb = by_endpoints.begin(); gb != by_endpoints.end(); ++gb) {
      if (!compatible(ga->first, gb->first)) continue;
      for (int a : ga->second)
        for (int b : gb->second) pairs.emplace_back(a, b);
    }
  }
  for (auto [a, b] : pairs) {
    {
      const SpanDiagram& f = level.diagrams[a];
      const SpanDiagram& g = level.diagrams[b];
      enumerate_transformations(r, s, f, g, [&](const std::vector<int>& comps) {
        std::string key = arrow_key(a, b, comps);
        if (level.arrow_idx.count(key)) return;  // the identity, already present
        int m = level.cat.add_morphism("t" + std::to_string(level.cat.num_morphisms()),
                                       a, b);
        level.arrow_components.push_back(comps);
        level.arrow_ends.push_back({a, b});
        level.arrow_idx[key] = m;
      });
    }
  }
  // Composition is componentwise; levels can have quadratically many arrows,
  // so composites resolve on demand instead of filling a table up front.
  auto resolver = std::make_shared<LevelResolver>();
  resolver->base = base;
  resolver->comps = level.arrow_components;
  resolver->ends = level.arrow_ends;
  resolver->arrow_idx = level.arrow_idx;
  level.cat.set_compose_fallback([resolver](int g, int f) {
    const std::vector<int>& cg = resolver->comps[g];
    const std::vector<int>& cf = resolver->comps[f];
    std::vector<int> comps(cf.size());
    for (size_t e = 0; e < comps.size(); ++e)
      comps[e] = resolver->base.compose(cg[e], cf[e]);
    auto it = resolver->arrow_idx.find(
        arrow_key(resolver->ends[f].first, resolver->ends[g].second, comps));
    return it == resolver->arrow_idx.end() ? -1 : it->second;
  });
  level.cat.finalize();
  return level;
}

FinFunctor simplicial_action(const RelativeCategory& r, const std::vector<int>& alpha,
                             const SpanLevel& from, const SpanLevel& to) {
  const FinCategory& base = r.base();
  std::vector<int> smap = sigma_map(to.sigma, from.sigma, alpha);
  const SigmaPoset& sm = to.sigma;
  const SigmaPoset& sn = from.sigma;

  FinFunctor fun;
  fun.source = &from.cat;
  fun.target = &to.cat;
  fun.object_map.resize(from.cat.num_objects());
  fun.morphism_map.resize(from.cat.num_morphisms());

  for (size_t k = 0; k < from.diagrams.size(); ++k) {
    SpanDiagram e = restrict_diagram(base, sm, sn, smap, from.diagrams[k]);
    int idx = to.index_of(e);
    if (idx < 0)
      throw std::logic_error("simplicial_action: restricted diagram missing from target level");
    fun.object_map[k] = idx;
  }
  for (int m = 0; m < from.cat.num_morphisms(); ++m) {
    std::vector<int> comps(sm.size());
    for (int x = 0; x < sm.size(); ++x) comps[x] = from.arrow_components[m][smap[x]];
    int idx = to.arrow_index(fun.object_map[from.cat.dom(m)],
                             fun.object_map[from.cat.cod(m)], comps);
    if (idx < 0)
      throw std::logic_error("simplicial_action: restricted arrow missing from target level");
    fun.morphism_map[m] = idx;
  }
  return fun;
}

CheckResult segal_check(const RelativeCategory& r, const std::vector<SpanLevel>& levels,
                        int n) {
  assert(static_cast<int>(levels.size()) > n && n >= 1);
  const SpanLevel& l1 = levels[1];
  const int kLeft = 0, kRight = 2;  // Σ₁ elements (0,0) and (1,1)

  // Strict fiber product of n copies of Span_1 over Span_0.
  struct Product {
    FinCategory cat;
    std::vector<std::vector<int>> objects;
    std::vector<std::vector<int>> arrows;  // per cat morphism, level-1 morphism tuple
  } prod;
  std::map<std::string, int> obj_idx, arr_idx;

  std::vector<int> tuple;
  std::function<void()> rec_obj = [&]() {
    if (static_cast<int>(tuple.size()) == n) {
      std::string key = key_of(tuple);
      obj_idx[key] = static_cast<int>(prod.objects.size());
      prod.objects.push_back(tuple);
      prod.cat.add_object("P" + std::to_string(prod.objects.size() - 1));
      return;
    }
    for (size_t o = 0; o < l1.diagrams.size(); ++o) {
      if (!tuple.empty() &&
          l1.diagrams[tuple.back()].obj[kRight] != l1.diagrams[o].obj[kLeft])
        continue;
      tuple.push_back(static_cast<int>(o));
      rec_obj();
      tuple.pop_back();
    }
  };
  rec_obj();

  prod.arrows.resize(prod.cat.num_morphisms());
  for (size_t o = 0; o < prod.objects.size(); ++o) {
    std::vector<int> ids(n);
    for (int k = 0; k < n; ++k) ids[k] = l1.cat.identity(prod.objects[o][k]);
    int m = prod.cat.identity(static_cast<int>(o));
    prod.arrows[m] = ids;
    arr_idx[key_of(ids)] = m;
  }
  // Arrows: tuples of level-1 arrows glued on their endpoint components.
  std::vector<std::vector<std::vector<int>>> by_pair(
      l1.cat.num_objects(), std::vector<std::vector<int>>(l1.cat.num_objects()));
  for (int m = 0; m < l1.cat.num_morphisms(); ++m)
    by_pair[l1.cat.dom(m)][l1.cat.cod(m)].push_back(m);

  for (size_t a = 0; a < prod.objects.size(); ++a) {
    for (size_t b = 0; b < prod.objects.size(); ++b) {
      std::vector<int> arrs;
      std::function<void(int)> rec_arr = [&](int k) {
        if (k == n) {
          std::string key = key_of(arrs);
          if (arr_idx.count(key)) return;
          int m = prod.cat.add_morphism("q" + std::to_string(prod.cat.num_morphisms()),
                                        static_cast<int>(a), static_cast<int>(b));
          prod.arrows.push_back(arrs);
          arr_idx[key] = m;
          return;
        }
        for (int m : by_pair[prod.objects[a][k]][prod.objects[b][k]]) {
          if (k > 0 && l1.arrow_components[arrs.back()][kRight] !=
                           l1.arrow_components[m][kLeft])
            continue;
          arrs.push_back(m);
          rec_arr(k + 1);
          arrs.pop_back();
        }
      };
      rec_arr(0);
    }
  }
  // Componentwise composition, resolved on demand (the tuple of component
  // arrows identifies a product arrow uniquely).
  prod.cat.set_compose_fallback(
      [&l1cat = l1.cat, &arrows = prod.arrows, &arr_idx](int g, int f) {
        std::vector<int> comp(arrows[f].size());
        for (size_t k = 0; k < comp.size(); ++k)
          comp[k] = l1cat.compose(arrows[g][k], arrows[f][k]);
        auto it = arr_idx.find(key_of(comp));
        return it == arr_idx.end() ? -1 : it->second;
      });
  prod.cat.finalize();

  // Segal functor via the n spine inclusions [1] -> [n].
  std::vector<FinFunctor> restrict;
  for (int k = 0; k < n; ++k)
    restrict.push_back(simplicial_action(r, {k, k + 1}, levels[n], l1));

  FinFunctor segal;
  segal.source = &levels[n].cat;
  segal.target = &prod.cat;
  segal.object_map.resize(levels[n].cat.num_objects());
  segal.morphism_map.resize(levels[n].cat.num_morphisms());
  for (int o = 0; o < levels[n].cat.num_objects(); ++o) {
    std::vector<int> tup(n);
    for (int k = 0; k < n; ++k) tup[k] = restrict[k].object_map[o];
    auto it = obj_idx.find(key_of(tup));
    if (it == obj_idx.end()) return {false, "Segal functor object image missing"};
    segal.object_map[o] = it->second;
  }
  for (int m = 0; m < levels[n].cat.num_morphisms(); ++m) {
    std::vector<int> tup(n);
    for (int k = 0; k < n; ++k) tup[k] = restrict[k].morphism_map[m];
    auto it = arr_idx.find(key_of(tup));
    if (it == arr_idx.end()) return {false, "Segal functor arrow image missing"};
    segal.morphism_map[m] = it->second;
  }
  return check_equivalence(segal);
}

SpanDiagram nerve_unit(const RelativeCategory& r, int c0, const std::vector<int>& chain) {
  const FinCategory& base = r.base();
  int n = static_cast<int>(chain.size());
  SigmaPoset s = build_sigma(n);
  std::vector<int> objs(n + 1);
  objs[0] = c0;
  for (int i = 0; i < n; ++i) {
    assert(base.dom(chain[i]) == objs[i]);
    objs[i + 1] = base.cod(chain[i]);
  }
  SpanDiagram d;
  d.n = n;
  d.obj.assign(s.size(), -1);
  d.down.assign(s.size(), -1);
  d.right.assign(s.size(), -1);
  for (int e = 0; e < s.size(); ++e) {
    auto [i, j] = s.pair_of(e);
    d.obj[e] = objs[i];
    if (j > i) d.down[e] = base.identity(objs[i]);
    if (i < j) d.right[e] = chain[i];
  }
  return d;
}

int HCategory::index_of(const Span& s) const {
  for (size_t i = 0; i < spans.size(); ++i)
    if (spans[i] == s) return static_cast<int>(i);
  return -1;
}

int HCategory::arrow_index(const Span& src, const Span& tgt, int apex_map,
                           int end_map) const {
  int a = index_of(src), b = index_of(tgt);
  for (int m = 0; m < cat.num_morphisms(); ++m)
    if (cat.dom(m) == a && cat.cod(m) == b && arrows[m].first == apex_map &&
        arrows[m].second == end_map)
      return m;
  return -1;
}

HCategory build_H(const RelativeCategory& r, int c) {
  const FinCategory& base = r.base();
  HCategory h;
  h.c = c;
  for (int l = 0; l < base.num_morphisms(); ++l) {
    if (!r.in_w(l) || base.cod(l) != c) continue;
    for (int rt = 0; rt < base.num_morphisms(); ++rt) {
      if (base.dom(rt) != base.dom(l)) continue;
      h.spans.push_back({l, rt});
    }
  }
  std::map<std::tuple<int, int, int, int>, int> arrow_idx;
  for (size_t k = 0; k < h.spans.size(); ++k) {
    const Span& sp = h.spans[k];
    int obj = h.cat.add_object("span(" + base.morphism_name(sp.left) + "," +
                               base.morphism_name(sp.right) + ")");
    h.arrows.resize(h.cat.num_morphisms());
    int apex_id = base.identity(base.dom(sp.left));
    int end_id = base.identity(base.cod(sp.right));
    h.arrows[h.cat.identity(obj)] = {apex_id, end_id};
    arrow_idx[{obj, obj, apex_id, end_id}] = h.cat.identity(obj);
  }
  for (size_t s = 0; s < h.spans.size(); ++s) {
    for (size_t t = 0; t < h.spans.size(); ++t) {
      const Span& a = h.spans[s];
      const Span& b = h.spans[t];
      for (int m : base.hom(base.dom(a.left), base.dom(b.left))) {
        if (base.compose(b.left, m) != a.left) continue;
        for (int e : base.hom(base.cod(a.right), base.cod(b.right))) {
          if (base.compose(b.right, m) != base.compose(e, a.right)) continue;
          if (s == t && base.is_identity(m) && base.is_identity(e)) continue;
          int idx = h.cat.add_morphism("h" + std::to_string(h.cat.num_morphisms()),
                                       static_cast<int>(s), static_cast<int>(t));
          h.arrows.push_back({m, e});
          arrow_idx[{static_cast<int>(s), static_cast<int>(t), m, e}] = idx;
        }
      }
    }
  }
  for (int g = 0; g < h.cat.num_morphisms(); ++g) {
    for (int f = 0; f < h.cat.num_morphisms(); ++f) {
      if (h.cat.cod(f) != h.cat.dom(g)) continue;
      if (h.cat.is_identity(f) || h.cat.is_identity(g)) continue;
      int m = base.compose(h.arrows[g].first, h.arrows[f].first);
      int e = base.compose(h.arrows[g].second, h.arrows[f].second);
      auto it = arrow_idx.find({h.cat.dom(f), h.cat.cod(g), m, e});
      assert(it != arrow_idx.end());
      h.cat.set_composite(g, f, it->second);
    }
  }
  h.cat.finalize();

  h.proj_obj.resize(h.cat.num_objects());
  h.proj_mor.resize(h.cat.num_morphisms());
  for (size_t k = 0; k < h.spans.size(); ++k)
    h.proj_obj[k] = base.cod(h.spans[k].right);
  for (int m = 0; m < h.cat.num_morphisms(); ++m) h.proj_mor[m] = h.arrows[m].second;
  return h;
}

FinFunctor HCategory::projection(const FinCategory& base) const {
  FinFunctor p;
  p.source = &cat;
  p.target = &base;
  p.object_map = proj_obj;
  p.morphism_map = proj_mor;
  return p;
}

int cocartesian_lift(const RelativeCategory& r, const HCategory& h_cat, const Span& x,
                     int h) {
  const FinCategory& base = r.base();
  assert(base.dom(h) == base.cod(x.right));
  Span y{x.left, base.compose(h, x.right)};
  int apex_id = base.identity(base.dom(x.left));
  int lift = h_cat.arrow_index(x, y, apex_id, h);
  if (lift < 0) throw std::logic_error("cocartesian_lift: lift arrow not found");

  // Exhaustive cocartesian universal property.
  int xi = h_cat.index_of(x), yi = h_cat.index_of(y);
  for (int beta = 0; beta < h_cat.cat.num_morphisms(); ++beta) {
    if (h_cat.cat.dom(beta) != xi) continue;
    int zi = h_cat.cat.cod(beta);
    auto [mb, hb] = h_cat.arrows[beta];
    for (int g : base.hom(base.cod(y.right), base.cod(h_cat.spans[zi].right))) {
      if (base.compose(g, h) != hb) continue;
      int count = 0;
      for (int gamma = 0; gamma < h_cat.cat.num_morphisms(); ++gamma) {
        if (h_cat.cat.dom(gamma) != yi || h_cat.cat.cod(gamma) != zi) continue;
        if (h_cat.arrows[gamma].second != g) continue;
        if (h_cat.cat.compose(gamma, lift) == beta) ++count;
      }
      if (count != 1)
        throw std::logic_error("cocartesian_lift: universal property failed");
    }
  }
  return lift;
}

int cartesian_lift(const RelativeCategory& r, const HCategory& h_cat, const Span& x,
                   int w) {
  const FinCategory& base = r.base();
  assert(r.in_w(w) && base.cod(w) == base.cod(x.right));
  const auto& cone = r.pullback(x.right, w);
  if (!cone)
    throw MissingPullback("(" + base.morphism_name(x.right) + ", " +
                              base.morphism_name(w) + ")",
                          "cartesian_lift: pullback missing");
  Span xp{base.compose(x.left, cone->leg1), cone->leg2};
  int lift = h_cat.arrow_index(xp, x, cone->leg1, w);
  if (lift < 0) throw std::logic_error("cartesian_lift: lift arrow not found");

  // Cartesian over the walking arrow: arrows into x over w factor uniquely
  // through the lift via an arrow over the identity.
  int xi = h_cat.index_of(x), xpi = h_cat.index_of(xp);
  int id_dp = base.identity(base.dom(w));
  for (int beta = 0; beta < h_cat.cat.num_morphisms(); ++beta) {
    if (h_cat.cat.cod(beta) != xi || h_cat.arrows[beta].second != w) continue;
    int zi = h_cat.cat.dom(beta);
    int count = 0;
    for (int gamma = 0; gamma < h_cat.cat.num_morphisms(); ++gamma) {
      if (h_cat.cat.dom(gamma) != zi || h_cat.cat.cod(gamma) != xpi) continue;
      if (h_cat.arrows[gamma].second != id_dp) continue;
      if (h_cat.cat.compose(lift, gamma) == beta) ++count;
    }
    if (count != 1) throw std::logic_error("cartesian_lift: universal property failed");
  }
  return lift;
}

}  // namespace spanloc
