#include "spanloc/sset.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <set>

namespace spanloc {

bool TSSet::is_degenerate(int k, int s) const {
  if (k == 0) return false;
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < counts[k - 1]; ++t)
      if (degen[k - 1][i][t] == s) return true;
  return false;
}

std::vector<Violation> validate_sset(const TSSet& x) {
  std::vector<Violation> out;
  auto tag = [](int k, int s) { return std::to_string(k) + "-simplex " + std::to_string(s); };
  for (int k = 2; k <= x.dim; ++k) {
    for (int s = 0; s < x.counts[k]; ++s) {
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i)
          if (x.face[k - 1][i][x.face[k][j][s]] != x.face[k - 1][j - 1][x.face[k][i][s]])
            out.push_back({"face-face", tag(k, s)});
    }
  }
  for (int k = 0; k + 2 <= x.dim; ++k) {
    for (int s = 0; s < x.counts[k]; ++s) {
      for (int i = 0; i <= k; ++i)
        for (int j = i; j <= k; ++j)
          if (x.degen[k + 1][i][x.degen[k][j][s]] != x.degen[k + 1][j + 1][x.degen[k][i][s]])
            out.push_back({"degen-degen", tag(k, s)});
    }
  }
  for (int k = 0; k + 1 <= x.dim; ++k) {
    for (int s = 0; s < x.counts[k]; ++s) {
      for (int j = 0; j <= k; ++j) {
        int sj = x.degen[k][j][s];
        for (int i = 0; i <= k + 1; ++i) {
          int got = x.face[k + 1][i][sj];
          if (i == j || i == j + 1) {
            if (got != s) out.push_back({"face-degen-identity", tag(k, s)});
          } else if (k >= 1) {
            int want = i < j ? x.degen[k - 1][j - 1][x.face[k][i][s]]
                             : x.degen[k - 1][j][x.face[k][i - 1][s]];
            if (got != want) out.push_back({"face-degen", tag(k, s)});
          }
        }
      }
    }
  }
  return out;
}

std::vector<Violation> validate_sset_map(const SSetMap& p) {
  std::vector<Violation> out;
  const TSSet& x = *p.source;
  const TSSet& y = *p.target;
  if (x.dim != y.dim) {
    out.push_back({"map-dimension", "source and target truncations differ"});
    return out;
  }
  for (int k = 1; k <= x.dim; ++k)
    for (int s = 0; s < x.counts[k]; ++s)
      for (int i = 0; i <= k; ++i)
        if (p.level[k - 1][x.face[k][i][s]] != y.face[k][i][p.level[k][s]])
          out.push_back({"map-face", std::to_string(k) + "-simplex " + std::to_string(s)});
  for (int k = 0; k < x.dim; ++k)
    for (int s = 0; s < x.counts[k]; ++s)
      for (int i = 0; i <= k; ++i)
        if (p.level[k + 1][x.degen[k][i][s]] != y.degen[k][i][p.level[k][s]])
          out.push_back({"map-degen", std::to_string(k) + "-simplex " + std::to_string(s)});
  return out;
}

SSetMap identity_map(const TSSet& x) {
  SSetMap p;
  p.source = &x;
  p.target = &x;
  p.level.resize(x.dim + 1);
  for (int k = 0; k <= x.dim; ++k) {
    p.level[k].resize(x.counts[k]);
    std::iota(p.level[k].begin(), p.level[k].end(), 0);
  }
  return p;
}

int NerveData::simplex_index(int k, const std::vector<int>& chain) const {
  auto it = index[k].find(chain);
  return it == index[k].end() ? -1 : it->second;
}

int NerveData::vertex_index(int object) const {
  return simplex_index(0, {object});
}

int NerveData::edge_index(const FinCategory& c, int m) const {
  return simplex_index(1, {c.dom(m), m});
}

namespace {

// Chains are stored as [c0, m1, ..., mk].
std::vector<int> chain_face(const FinCategory& c, const std::vector<int>& chain, int i) {
  int k = static_cast<int>(chain.size()) - 1;
  std::vector<int> out;
  if (i == 0) {
    out.push_back(k >= 1 ? c.cod(chain[1]) : chain[0]);
    out.insert(out.end(), chain.begin() + 2, chain.end());
  } else if (i == k) {
    out.assign(chain.begin(), chain.end() - 1);
  } else {
    out.assign(chain.begin(), chain.begin() + i);
    out.push_back(c.compose(chain[i + 1], chain[i]));
    out.insert(out.end(), chain.begin() + i + 2, chain.end());
  }
  return out;
}

std::vector<int> chain_degen(const FinCategory& c, const std::vector<int>& chain, int i) {
  int obj = i == 0 ? chain[0] : c.cod(chain[i]);
  std::vector<int> out(chain.begin(), chain.begin() + i + 1);
  out.push_back(c.identity(obj));
  out.insert(out.end(), chain.begin() + i + 1, chain.end());
  return out;
}

int chain_end(const FinCategory& c, const std::vector<int>& chain) {
  return chain.size() == 1 ? chain[0] : c.cod(chain.back());
}

}  // namespace

NerveData nerve(const FinCategory& c, int d) {
  NerveData n;
  n.x.dim = d;
  n.x.counts.assign(d + 1, 0);
  n.x.face.resize(d + 1);
  n.x.degen.resize(d);
  n.chains.resize(d + 1);
  n.index.resize(d + 1);
  for (int o = 0; o < c.num_objects(); ++o) {
    n.index[0][{o}] = static_cast<int>(n.chains[0].size());
    n.chains[0].push_back({o});
  }
  for (int k = 1; k <= d; ++k) {
    for (const auto& prev : n.chains[k - 1]) {
      int end = chain_end(c, prev);
      for (int o = 0; o < c.num_objects(); ++o) {
        for (int m : c.hom(end, o)) {
          std::vector<int> ext = prev;
          ext.push_back(m);
          n.index[k][ext] = static_cast<int>(n.chains[k].size());
          n.chains[k].push_back(std::move(ext));
        }
      }
    }
  }
  for (int k = 0; k <= d; ++k) n.x.counts[k] = static_cast<int>(n.chains[k].size());
  for (int k = 1; k <= d; ++k) {
    n.x.face[k].assign(k + 1, std::vector<int>(n.x.counts[k]));
    for (int s = 0; s < n.x.counts[k]; ++s)
      for (int i = 0; i <= k; ++i)
        n.x.face[k][i][s] = n.index[k - 1].at(chain_face(c, n.chains[k][s], i));
  }
  for (int k = 0; k < d; ++k) {
    n.x.degen[k].assign(k + 1, std::vector<int>(n.x.counts[k]));
    for (int s = 0; s < n.x.counts[k]; ++s)
      for (int i = 0; i <= k; ++i)
        n.x.degen[k][i][s] = n.index[k + 1].at(chain_degen(c, n.chains[k][s], i));
  }
  return n;
}

SSetMap nerve_map(const FinFunctor& f, const NerveData& src, const NerveData& tgt) {
  assert(src.x.dim == tgt.x.dim);
  SSetMap p;
  p.source = &src.x;
  p.target = &tgt.x;
  p.level.resize(src.x.dim + 1);
  for (int k = 0; k <= src.x.dim; ++k) {
    p.level[k].resize(src.x.counts[k]);
    for (int s = 0; s < src.x.counts[k]; ++s) {
      const auto& chain = src.chains[k][s];
      std::vector<int> image;
      image.push_back(f.object_map[chain[0]]);
      for (size_t i = 1; i < chain.size(); ++i)
        image.push_back(f.morphism_map[chain[i]]);
      p.level[k][s] = tgt.simplex_index(k, image);
      assert(p.level[k][s] >= 0);
    }
  }
  return p;
}

namespace {

FinCategory chain_category(int n) {
  FinCategory c;
  for (int i = 0; i <= n; ++i) c.add_object(std::to_string(i));
  std::vector<std::vector<int>> mor(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= n; ++i) {
    mor[i][i] = c.identity(i);
    for (int j = i + 1; j <= n; ++j)
      mor[i][j] = c.add_morphism(std::to_string(i) + "->" + std::to_string(j), i, j);
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) c.set_composite(mor[j][k], mor[i][j], mor[i][k]);
  c.finalize();
  return c;
}

// Vertex set of a nerve simplex of the chain category.
std::set<int> chain_vertices(const FinCategory& c, const std::vector<int>& chain) {
  std::set<int> out;
  out.insert(chain[0]);
  for (size_t i = 1; i < chain.size(); ++i) out.insert(c.cod(chain[i]));
  return out;
}

TSSet filter_sset(const TSSet& x, const std::vector<std::vector<char>>& keep) {
  TSSet y;
  y.dim = x.dim;
  y.counts.assign(x.dim + 1, 0);
  y.face.resize(x.dim + 1);
  y.degen.resize(x.dim);
  std::vector<std::vector<int>> remap(x.dim + 1);
  for (int k = 0; k <= x.dim; ++k) {
    remap[k].assign(x.counts[k], -1);
    for (int s = 0; s < x.counts[k]; ++s)
      if (keep[k][s]) remap[k][s] = y.counts[k]++;
  }
  for (int k = 1; k <= x.dim; ++k) {
    y.face[k].assign(k + 1, std::vector<int>(y.counts[k]));
    for (int s = 0; s < x.counts[k]; ++s) {
      if (!keep[k][s]) continue;
      for (int i = 0; i <= k; ++i) {
        int f = remap[k - 1][x.face[k][i][s]];
        assert(f >= 0);  // predicate must be closed under faces
        y.face[k][i][remap[k][s]] = f;
      }
    }
  }
  for (int k = 0; k < x.dim; ++k) {
    y.degen[k].assign(k + 1, std::vector<int>(y.counts[k]));
    for (int s = 0; s < x.counts[k]; ++s) {
      if (!keep[k][s]) continue;
      for (int i = 0; i <= k; ++i) {
        int g = remap[k + 1][x.degen[k][i][s]];
        assert(g >= 0);  // predicate must be closed under degeneracies
        y.degen[k][i][remap[k][s]] = g;
      }
    }
  }
  return y;
}

}  // namespace

TSSet standard_simplex(int n, int d) {
  return nerve(chain_category(n), d).x;
}

TSSet boundary_simplex(int n, int d) {
  FinCategory c = chain_category(n);
  NerveData nd = nerve(c, d);
  std::vector<std::vector<char>> keep(d + 1);
  for (int k = 0; k <= d; ++k) {
    keep[k].resize(nd.x.counts[k]);
    for (int s = 0; s < nd.x.counts[k]; ++s)
      keep[k][s] = chain_vertices(c, nd.chains[k][s]).size() < static_cast<size_t>(n + 1);
  }
  return filter_sset(nd.x, keep);
}

TSSet horn_simplex(int n, int l, int d) {
  FinCategory c = chain_category(n);
  NerveData nd = nerve(c, d);
  std::vector<std::vector<char>> keep(d + 1);
  for (int k = 0; k <= d; ++k) {
    keep[k].resize(nd.x.counts[k]);
    for (int s = 0; s < nd.x.counts[k]; ++s) {
      auto verts = chain_vertices(c, nd.chains[k][s]);
      bool missing_other = false;
      for (int v = 0; v <= n; ++v)
        if (v != l && !verts.count(v)) missing_other = true;
      keep[k][s] = missing_other;
    }
  }
  return filter_sset(nd.x, keep);
}

TSSet terminal_sset(int d) {
  TSSet x;
  x.dim = d;
  x.counts.assign(d + 1, 1);
  x.face.resize(d + 1);
  x.degen.resize(d);
  for (int k = 1; k <= d; ++k) x.face[k].assign(k + 1, {0});
  for (int k = 0; k < d; ++k) x.degen[k].assign(k + 1, {0});
  return x;
}

SSetMap to_terminal(const TSSet& x, const TSSet& terminal) {
  SSetMap p;
  p.source = &x;
  p.target = &terminal;
  p.level.resize(x.dim + 1);
  for (int k = 0; k <= x.dim; ++k) p.level[k].assign(x.counts[k], 0);
  return p;
}

HornResult horn_lift_check(const SSetMap& p, HornKind kind, int d) {
  if (d < 2) throw DimensionBoundTooLow("horn_lift_check: dimension bound below 2");
  if (p.source->dim < d || p.target->dim < d)
    throw DimensionBoundTooLow("horn_lift_check: simplicial sets truncated below the bound");
  const TSSet& x = *p.source;
  const TSSet& b = *p.target;
  for (int n = 1; n <= d; ++n) {
    // Fibers of p in dimension n-1 and the set of solvable lift keys per horn
    // index. Nondegenerate simplices come first in each fiber so that a
    // failure witness names nondegenerate horn faces where possible.
    std::vector<char> degenerate(x.counts[n - 1], 0);
    if (n >= 2)
      for (int i = 0; i <= n - 2; ++i)
        for (int t = 0; t < x.counts[n - 2]; ++t) degenerate[x.degen[n - 2][i][t]] = 1;
    std::vector<std::vector<int>> fiber(b.counts[n - 1]);
    for (int pass = 0; pass < 2; ++pass)
      for (int s = 0; s < x.counts[n - 1]; ++s)
        if (degenerate[s] == pass) fiber[p.level[n - 1][s]].push_back(s);
    std::vector<std::set<std::vector<int>>> solvable(n + 1);
    for (int i = 0; i <= n; ++i) {
      for (int z = 0; z < x.counts[n]; ++z) {
        std::vector<int> key{p.level[n][z]};
        for (int j = 0; j <= n; ++j)
          if (j != i) key.push_back(x.face[n][j][z]);
        solvable[i].insert(std::move(key));
      }
    }
    int lo = 0, hi = n;
    switch (kind) {
      case HornKind::Inner: lo = 1; hi = n - 1; break;
      case HornKind::Left: lo = 0; hi = n - 1; break;
      case HornKind::Right: lo = 1; hi = n; break;
      case HornKind::Kan: break;
    }
    for (int bs = 0; bs < b.counts[n]; ++bs) {
      for (int i = lo; i <= hi; ++i) {
        std::vector<int> positions;
        for (int j = 0; j <= n; ++j)
          if (j != i) positions.push_back(j);
        std::vector<int> chosen(n + 1, -1);
        std::string witness;
        std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
          if (idx == positions.size()) {
            std::vector<int> key{bs};
            for (int j : positions) key.push_back(chosen[j]);
            if (!solvable[i].count(key)) {
              witness = "horn(" + std::to_string(i) + "," + std::to_string(n) +
                        ") over base " + std::to_string(n) + "-simplex " +
                        std::to_string(bs) + " with faces (";
              for (size_t t = 0; t < positions.size(); ++t)
                witness += (t ? "," : "") + std::to_string(chosen[positions[t]]);
              witness += ")";
              return false;
            }
            return true;
          }
          int j = positions[idx];
          for (int cand : fiber[b.face[n][j][bs]]) {
            bool ok = true;
            for (size_t t = 0; t < idx && ok; ++t) {
              int jp = positions[t];  // jp < j
              if (n >= 2 &&
                  x.face[n - 1][jp][cand] != x.face[n - 1][j - 1][chosen[jp]])
                ok = false;
            }
            if (!ok) continue;
            chosen[j] = cand;
            if (!rec(idx + 1)) return false;
          }
          chosen[j] = -1;
          return true;
        };
        if (!rec(0)) return {false, witness};
      }
    }
  }
  return {true, ""};
}

std::vector<Violation> validate_set_functor(const FinCategory& c, const SetFunctor& f) {
  std::vector<Violation> out;
  for (int o = 0; o < c.num_objects(); ++o)
    if (f.size[o] < 0) out.push_back({"set-size", c.object_name(o)});
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (static_cast<int>(f.action[m].size()) != f.size[c.dom(m)]) {
      out.push_back({"set-action-arity", c.morphism_name(m)});
      continue;
    }
    for (int v : f.action[m])
      if (v < 0 || v >= f.size[c.cod(m)])
        out.push_back({"set-action-range", c.morphism_name(m)});
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    for (int v = 0; v < f.size[o]; ++v)
      if (f.action[c.identity(o)][v] != v)
        out.push_back({"set-identity", c.object_name(o)});
  }
  for (int g = 0; g < c.num_morphisms(); ++g) {
    for (int m = 0; m < c.num_morphisms(); ++m) {
      if (c.cod(m) != c.dom(g)) continue;
      int gm = c.compose(g, m);
      for (int v = 0; v < f.size[c.dom(m)]; ++v)
        if (f.action[g][f.action[m][v]] != f.action[gm][v]) {
          out.push_back({"set-composition",
                         c.morphism_name(g) + " after " + c.morphism_name(m)});
          break;
        }
    }
  }
  return out;
}

FinFunctor ElementsCategory::projection(const FinCategory& base) const {
  FinFunctor p;
  p.source = &cat;
  p.target = &base;
  p.object_map = proj_obj;
  p.morphism_map = proj_mor;
  return p;
}

ElementsCategory category_of_elements(const FinCategory& c, const SetFunctor& f) {
  ElementsCategory e;
  std::map<std::pair<int, int>, int> obj_idx;
  for (int o = 0; o < c.num_objects(); ++o) {
    for (int v = 0; v < f.size[o]; ++v) {
      obj_idx[{o, v}] = e.cat.add_object(c.object_name(o) + "." + std::to_string(v));
      e.objs.emplace_back(o, v);
    }
  }
  std::map<std::pair<int, int>, int> mor_idx;
  e.proj_mor.resize(e.cat.num_morphisms(), -1);
  for (size_t k = 0; k < e.objs.size(); ++k) {
    int id = e.cat.identity(static_cast<int>(k));
    e.proj_mor[id] = c.identity(e.objs[k].first);
    mor_idx[{c.identity(e.objs[k].first), e.objs[k].second}] = id;
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    for (int v = 0; v < f.size[c.dom(m)]; ++v) {
      int idx = e.cat.add_morphism(c.morphism_name(m) + "." + std::to_string(v),
                                   obj_idx.at({c.dom(m), v}),
                                   obj_idx.at({c.cod(m), f.action[m][v]}));
      e.proj_mor.push_back(m);
      mor_idx[{m, v}] = idx;
    }
  }
  for (int g = 0; g < e.cat.num_morphisms(); ++g) {
    for (int h = 0; h < e.cat.num_morphisms(); ++h) {
      if (e.cat.cod(h) != e.cat.dom(g)) continue;
      if (e.cat.is_identity(h) || e.cat.is_identity(g)) continue;
      int bg = e.proj_mor[g], bh = e.proj_mor[h];
      int v = e.objs[e.cat.dom(h)].second;
      e.cat.set_composite(g, h, mor_idx.at({c.compose(bg, bh), v}));
    }
  }
  e.cat.finalize();
  e.proj_obj.resize(e.cat.num_objects());
  for (size_t k = 0; k < e.objs.size(); ++k) e.proj_obj[k] = e.objs[k].first;
  return e;
}

SSetMap GrothendieckData::map() const {
  SSetMap out;
  out.source = &total.x;
  out.target = &base.x;
  out.level.resize(total.x.dim + 1);
  for (int k = 0; k <= total.x.dim; ++k) {
    out.level[k].resize(total.x.counts[k]);
    for (int s = 0; s < total.x.counts[k]; ++s) {
      const auto& chain = total.chains[k][s];
      std::vector<int> image;
      image.push_back(elements.proj_obj[chain[0]]);
      for (size_t i = 1; i < chain.size(); ++i)
        image.push_back(elements.proj_mor[chain[i]]);
      out.level[k][s] = base.simplex_index(k, image);
      assert(out.level[k][s] >= 0);
    }
  }
  return out;
}

GrothendieckData grothendieck(const FinCategory& c, const SetFunctor& f, int d) {
  GrothendieckData g;
  g.elements = category_of_elements(c, f);
  g.total = nerve(g.elements.cat, d);
  g.base = nerve(c, d);
  return g;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::vector<int> normalize_classes(UnionFind& uf, int n) {
  std::vector<int> label(n, -1), out(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (label[r] < 0) label[r] = next++;
    out[i] = label[r];
  }
  return out;
}

}  // namespace

std::vector<int> pi0(const TSSet& x) {
  UnionFind uf(x.counts[0]);
  if (x.dim >= 1)
    for (int e = 0; e < x.counts[1]; ++e) uf.unite(x.face[1][1][e], x.face[1][0][e]);
  return normalize_classes(uf, x.counts[0]);
}

WLocalResult w_local_check(const RelativeCategory& r, const NerveData& base_nerve,
                           const SSetMap& p, int d) {
  const FinCategory& c = r.base();
  const TSSet& x = *p.source;
  FinCategory ch1 = chain_category(1);
  NerveData d1_nerve = nerve(ch1, d);
  const TSSet& delta1 = d1_nerve.x;
  int d1_arrow = ch1.morphism_index("0->1");

  for (int w : r.w_list()) {
    if (c.is_identity(w)) continue;
    // Base change over the edge w: simplices are (t, z) where t counts the
    // vertices mapped to dom(w) and z lies over the induced base chain.
    auto base_chain = [&](int k, int t) {
      std::vector<int> chain{t > 0 ? c.dom(w) : c.cod(w)};
      for (int i = 1; i <= k; ++i)
        chain.push_back(i == t ? w : c.identity(i < t ? c.dom(w) : c.cod(w)));
      return chain;
    };
    auto d1_chain = [&](int k, int t) {
      std::vector<int> chain{t > 0 ? 0 : 1};
      for (int i = 1; i <= k; ++i)
        chain.push_back(i == t ? d1_arrow : ch1.identity(i < t ? 0 : 1));
      return chain;
    };
    TSSet y;
    y.dim = d;
    y.counts.assign(d + 1, 0);
    y.face.resize(d + 1);
    y.degen.resize(d);
    std::vector<std::vector<std::pair<int, int>>> simps(d + 1);
    std::vector<std::map<std::pair<int, int>, int>> idx(d + 1);
    SSetMap q;
    q.source = &y;
    q.target = &delta1;
    q.level.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
      for (int t = 0; t <= k + 1; ++t) {
        int b = base_nerve.simplex_index(k, base_chain(k, t));
        if (b < 0) continue;
        int qb = d1_nerve.simplex_index(k, d1_chain(k, t));
        for (int s = 0; s < x.counts[k]; ++s) {
          if (p.level[k][s] != b) continue;
          idx[k][{t, s}] = y.counts[k]++;
          simps[k].emplace_back(t, s);
          q.level[k].push_back(qb);
        }
      }
    }
    for (int k = 1; k <= d; ++k) {
      y.face[k].assign(k + 1, std::vector<int>(y.counts[k]));
      for (int s = 0; s < y.counts[k]; ++s) {
        auto [t, z] = simps[k][s];
        for (int i = 0; i <= k; ++i)
          y.face[k][i][s] = idx[k - 1].at({t - (i < t ? 1 : 0), x.face[k][i][z]});
      }
    }
    for (int k = 0; k < d; ++k) {
      y.degen[k].assign(k + 1, std::vector<int>(y.counts[k]));
      for (int s = 0; s < y.counts[k]; ++s) {
        auto [t, z] = simps[k][s];
        for (int i = 0; i <= k; ++i)
          y.degen[k][i][s] = idx[k + 1].at({t + (i < t ? 1 : 0), x.degen[k][i][z]});
      }
    }
    HornResult kan = horn_lift_check(q, HornKind::Kan, d);
    if (!kan.ok)
      return {false, "base change over " + c.morphism_name(w) +
                         " is not a Kan fibration: " + kan.witness};

    // Fiber transport: components of the fiber over dom(w) must biject with
    // components of the fiber over cod(w).
    int v0 = base_nerve.vertex_index(c.dom(w));
    int v1 = base_nerve.vertex_index(c.cod(w));
    int e0 = base_nerve.edge_index(c, c.identity(c.dom(w)));
    int e1 = base_nerve.edge_index(c, c.identity(c.cod(w)));
    int ew = base_nerve.edge_index(c, w);
    UnionFind uf(x.counts[0]);
    for (int e = 0; e < x.counts[1]; ++e)
      if (p.level[1][e] == e0 || p.level[1][e] == e1)
        uf.unite(x.face[1][1][e], x.face[1][0][e]);
    std::map<int, std::set<int>> transport;  // class over v0 -> classes over v1
    std::set<int> classes0, classes1, hit1;
    for (int s = 0; s < x.counts[0]; ++s) {
      if (p.level[0][s] == v0) classes0.insert(uf.find(s));
      if (p.level[0][s] == v1) classes1.insert(uf.find(s));
    }
    for (int e = 0; e < x.counts[1]; ++e) {
      if (p.level[1][e] != ew) continue;
      transport[uf.find(x.face[1][1][e])].insert(uf.find(x.face[1][0][e]));
    }
    for (int c0 : classes0) {
      auto it = transport.find(c0);
      if (it == transport.end())
        return {false, "no transport of a fiber component along " + c.morphism_name(w)};
      if (it->second.size() != 1)
        return {false, "transport along " + c.morphism_name(w) +
                           " is not well-defined on components"};
      int tgt = *it->second.begin();
      if (hit1.count(tgt))
        return {false, "transport along " + c.morphism_name(w) +
                           " is not injective on components"};
      hit1.insert(tgt);
    }
    if (hit1 != classes1)
      return {false, "transport along " + c.morphism_name(w) +
                         " is not surjective on components"};
  }
  return {true, ""};
}

GroupoidPresentation pi1_presentation(const TSSet& x, int basepoint) {
  assert(x.dim >= 2);
  int nv = x.counts[0];
  // Nondegenerate edges in the basepoint component, spanning tree by BFS.
  std::vector<int> comp = pi0(x);
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge)
  std::vector<char> nondegen(x.counts[1], 0);
  for (int e = 0; e < x.counts[1]; ++e) {
    if (x.is_degenerate(1, e)) continue;
    nondegen[e] = 1;
    int a = x.face[1][1][e], b = x.face[1][0][e];
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }
  std::vector<char> in_tree(x.counts[1], 0);
  std::vector<char> visited(nv, 0);
  std::vector<int> queue{basepoint};
  visited[basepoint] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (auto [u, e] : adj[v]) {
      if (visited[u]) continue;
      visited[u] = 1;
      in_tree[e] = 1;
      queue.push_back(u);
    }
  }
  GroupoidPresentation pres;
  std::vector<int> gen_of(x.counts[1], -1);
  for (int e = 0; e < x.counts[1]; ++e) {
    if (!nondegen[e] || in_tree[e]) continue;
    if (comp[x.face[1][1][e]] != comp[basepoint]) continue;
    gen_of[e] = pres.num_generators++;
  }
  for (int t = 0; t < x.counts[2]; ++t) {
    if (x.is_degenerate(2, t)) continue;
    if (comp[x.face[1][1][x.face[2][2][t]]] != comp[basepoint]) continue;
    std::vector<std::pair<int, int>> word;
    auto push = [&](int e, int exp) {
      if (gen_of[e] >= 0) word.emplace_back(gen_of[e], exp);
    };
    push(x.face[2][2][t], 1);
    push(x.face[2][0][t], 1);
    push(x.face[2][1][t], -1);
    pres.relations.push_back(std::move(word));
  }
  return pres;
}

int abelianization_rank(const GroupoidPresentation& p) {
  int g = p.num_generators;
  std::vector<std::vector<long long>> m;
  for (const auto& rel : p.relations) {
    std::vector<long long> row(g, 0);
    for (auto [gen, exp] : rel) row[gen] += exp;
    m.push_back(std::move(row));
  }
  // Fraction-free elimination for the integer rank.
  int rank = 0;
  for (int col = 0; col < g && rank < static_cast<int>(m.size()); ++col) {
    int pivot = -1;
    for (int row = rank; row < static_cast<int>(m.size()); ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int row = rank + 1; row < static_cast<int>(m.size()); ++row) {
      if (m[row][col] == 0) continue;
      long long a = m[rank][col], b = m[row][col];
      long long gg = std::gcd(a, b);
      long long fa = b / gg, fb = a / gg;
      for (int j = 0; j < g; ++j) m[row][j] = m[row][j] * fb - m[rank][j] * fa;
    }
    ++rank;
  }
  return g - rank;
}

}  // namespace spanloc
