#include "spanloc/localization.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace spanloc {

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

}  // namespace

std::vector<int> component_classes(const FinCategory& c) {
  UnionFind uf(c.num_objects());
  for (int m = 0; m < c.num_morphisms(); ++m) uf.unite(c.dom(m), c.cod(m));
  std::vector<int> label(c.num_objects(), -1), out(c.num_objects());
  int next = 0;
  for (int o = 0; o < c.num_objects(); ++o) {
    int root = uf.find(o);
    if (label[root] < 0) label[root] = next++;
    out[o] = label[root];
  }
  return out;
}

HoCategory ho_via_spans(const RelativeCategory& r) {
  const FinCategory& base = r.base();
  int nobj = base.num_objects();
  HoCategory ho;
  for (int o = 0; o < nobj; ++o) ho.cat.add_object(base.object_name(o));

  struct HomData {
    MappingCategory mc;
    std::vector<int> comp;                  // per span, component id
    std::vector<std::vector<int>> members;  // per component, span indices
    std::vector<int> mor;                   // per component, ho morphism
  };
  std::vector<std::vector<HomData>> hom(nobj, std::vector<HomData>(nobj));
  ho.expr.resize(ho.cat.num_morphisms());
  for (int c = 0; c < nobj; ++c) {
    for (int d = 0; d < nobj; ++d) {
      HomData& h = hom[c][d];
      h.mc = mapping_category(r, c, d);
      h.comp = component_classes(h.mc.cat);
      int nclasses = h.comp.empty() ? 0 : 1 + *std::max_element(h.comp.begin(), h.comp.end());
      h.members.resize(nclasses);
      for (size_t s = 0; s < h.mc.spans.size(); ++s)
        h.members[h.comp[s]].push_back(static_cast<int>(s));
      h.mor.assign(nclasses, -1);
      int identity_class = -1;
      if (c == d)
        identity_class = h.comp[h.mc.index_of(Span{base.identity(c), base.identity(c)})];
      for (int k = 0; k < nclasses; ++k) {
        if (k == identity_class) {
          h.mor[k] = ho.cat.identity(c);
        } else {
          h.mor[k] = ho.cat.add_morphism("[" + base.object_name(c) + "=>" +
                                             base.object_name(d) + "#" +
                                             std::to_string(k) + "]",
                                         c, d);
        }
        ho.expr.resize(ho.cat.num_morphisms());
        const Span& rep = h.mc.spans[h.members[k].front()];
        ZigzagWord w;
        if (!base.is_identity(rep.left)) w.push_back({rep.left, true});
        if (!base.is_identity(rep.right)) w.push_back({rep.right, false});
        ho.expr[h.mor[k]] = w;
      }
    }
  }

  // Composition descends to components; verified over every representative pair.
  for (int c = 0; c < nobj; ++c) {
    for (int d = 0; d < nobj; ++d) {
      for (int e = 0; e < nobj; ++e) {
        const HomData& h1 = hom[c][d];
        const HomData& h2 = hom[d][e];
        const HomData& h3 = hom[c][e];
        for (size_t k1 = 0; k1 < h1.members.size(); ++k1) {
          for (size_t k2 = 0; k2 < h2.members.size(); ++k2) {
            int target = -1;
            for (int s1 : h1.members[k1]) {
              for (int s2 : h2.members[k2]) {
                Span comp = compose_spans(r, h1.mc.spans[s1], h2.mc.spans[s2]);
                int idx = h3.mc.index_of(comp);
                assert(idx >= 0);
                int cls = h3.comp[idx];
                if (target < 0) target = cls;
                if (cls != target)
                  throw IllDefinedComposition(
                      "composite class depends on representatives for hom(" +
                      base.object_name(c) + "," + base.object_name(d) + ") x hom(" +
                      base.object_name(d) + "," + base.object_name(e) + ")");
              }
            }
            int f = h1.mor[k1], g = h2.mor[k2];
            int gf = h3.mor[target];
            if (ho.cat.is_identity(f) || ho.cat.is_identity(g)) {
              // Forced by finalize; descent would be broken if it disagreed.
              int expected = ho.cat.is_identity(f) ? g : f;
              if (gf != expected)
                throw IllDefinedComposition("identity class does not act as a unit");
            } else {
              ho.cat.set_composite(g, f, gf);
            }
          }
        }
      }
    }
  }
  ho.cat.finalize();

  ho.mor_map.resize(base.num_morphisms());
  for (int m = 0; m < base.num_morphisms(); ++m) {
    int c = base.dom(m), d = base.cod(m);
    const HomData& h = hom[c][d];
    int idx = h.mc.index_of(Span{base.identity(c), m});
    assert(idx >= 0);
    ho.mor_map[m] = h.mor[h.comp[idx]];
  }
  return ho;
}

namespace {

int letter_dom(const FinCategory& c, const Letter& l) {
  return l.inv ? c.cod(l.m) : c.dom(l.m);
}
int letter_cod(const FinCategory& c, const Letter& l) {
  return l.inv ? c.dom(l.m) : c.cod(l.m);
}

// Merges adjacent same-type letters by composition and drops identities.
// Returns false when a required merge leaves the hypercover class (cannot
// happen for composition-closed w).
bool normalize_word(const FinCategory& c, const std::vector<bool>& w, ZigzagWord& word) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < word.size(); ++i) {
      if (c.is_identity(word[i].m)) {
        word.erase(word.begin() + i);
        changed = true;
        break;
      }
      if (i + 1 < word.size() && word[i].inv == word[i + 1].inv) {
        int merged = word[i].inv ? c.compose(word[i].m, word[i + 1].m)
                                 : c.compose(word[i + 1].m, word[i].m);
        assert(merged >= 0);
        if (word[i].inv && !w[merged]) return false;
        word[i].m = merged;
        word.erase(word.begin() + i + 1);
        changed = true;
        break;
      }
    }
  }
  return true;
}

std::vector<int> word_key(const ZigzagWord& word, int start) {
  std::vector<int> key{start};
  for (const Letter& l : word) key.push_back(2 * l.m + (l.inv ? 1 : 0));
  return key;
}

struct WordTable {
  std::vector<ZigzagWord> words;
  std::vector<int> start;
  std::map<std::vector<int>, int> id;

  int lookup(const ZigzagWord& w, int s) const {
    auto it = id.find(word_key(w, s));
    return it == id.end() ? -1 : it->second;
  }
};

bool shortlex_less(const ZigzagWord& a, const ZigzagWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

OracleResult oracle_localize_with(const FinCategory& base, const std::vector<bool>& w,
                                  int max_len, int max_iter) {
  OracleResult out;
  const int probe = max_len + 2;

  // Alternating words of length <= probe with valid endpoints.
  WordTable tab;
  {
    ZigzagWord cur;
    std::function<void(int, int)> rec = [&](int start, int end) {
      tab.id[word_key(cur, start)] = static_cast<int>(tab.words.size());
      tab.words.push_back(cur);
      tab.start.push_back(start);
      if (static_cast<int>(cur.size()) == probe) return;
      bool need_alt = !cur.empty();
      for (int m = 0; m < base.num_morphisms(); ++m) {
        if (base.is_identity(m)) continue;
        if (base.dom(m) == end && (!need_alt || cur.back().inv)) {
          cur.push_back({m, false});
          rec(start, base.cod(m));
          cur.pop_back();
        }
        if (w[m] && base.cod(m) == end && (!need_alt || !cur.back().inv)) {
          cur.push_back({m, true});
          rec(start, base.dom(m));
          cur.pop_back();
        }
      }
    };
    for (int o = 0; o < base.num_objects(); ++o) rec(o, o);
  }
  int nwords = static_cast<int>(tab.words.size());

  auto object_at = [&](int word_id, size_t pos) {
    int o = tab.start[word_id];
    for (size_t i = 0; i < pos; ++i) o = letter_cod(base, tab.words[word_id][i]);
    return o;
  };

  // One closure pass over all words whose length fits the given bound; every
  // generated relation joins two in-bound words.
  auto closure_pass = [&](UnionFind& uf, int bound) {
    bool changed = false;
    auto join = [&](int a, ZigzagWord wd, int s) {
      if (!normalize_word(base, w, wd)) return;
      if (static_cast<int>(wd.size()) > bound) return;
      int b = tab.lookup(wd, s);
      if (b >= 0 && uf.unite(a, b)) changed = true;
    };
    for (int u = 0; u < nwords; ++u) {
      const ZigzagWord& word = tab.words[u];
      int len = static_cast<int>(word.size());
      if (len > bound) continue;
      // Insert a cancelling hypercover pair at any position.
      if (len + 2 <= bound) {
        for (size_t pos = 0; pos <= word.size(); ++pos) {
          int obj = object_at(u, pos);
          for (int m = 0; m < base.num_morphisms(); ++m) {
            if (!w[m] || base.is_identity(m)) continue;
            if (base.dom(m) == obj) {
              ZigzagWord nw = word;
              nw.insert(nw.begin() + pos, {Letter{m, false}, Letter{m, true}});
              join(u, std::move(nw), tab.start[u]);
            }
            if (base.cod(m) == obj) {
              ZigzagWord nw = word;
              nw.insert(nw.begin() + pos, {Letter{m, true}, Letter{m, false}});
              join(u, std::move(nw), tab.start[u]);
            }
          }
        }
      }
      for (size_t i = 0; i + 1 < word.size(); ++i) {
        const Letter& a = word[i];
        const Letter& b = word[i + 1];
        if (!a.inv && b.inv) {
          // Cospan junction f then v-inverse: rewrite through any commuting
          // cone (m1 in W, m2) with f∘m1 = v∘m2.
          int f = a.m, v = b.m;
          for (int m1 = 0; m1 < base.num_morphisms(); ++m1) {
            if (!w[m1] || base.cod(m1) != base.dom(f)) continue;
            for (int m2 : base.hom(base.dom(m1), base.dom(v))) {
              if (base.compose(f, m1) != base.compose(v, m2)) continue;
              ZigzagWord nw(word.begin(), word.begin() + i);
              nw.push_back({m1, true});
              nw.push_back({m2, false});
              nw.insert(nw.end(), word.begin() + i + 2, word.end());
              join(u, std::move(nw), tab.start[u]);
            }
          }
        } else if (a.inv && !b.inv) {
          // Span junction v-inverse then f: refine the apex along any m with
          // v∘m still a hypercover.
          int v = a.m, f = b.m;
          for (int m = 0; m < base.num_morphisms(); ++m) {
            if (base.is_identity(m) || base.cod(m) != base.dom(v)) continue;
            int vm = base.compose(v, m);
            if (vm < 0 || !w[vm]) continue;
            int fm = base.compose(f, m);
            ZigzagWord nw(word.begin(), word.begin() + i);
            nw.push_back({vm, true});
            nw.push_back({fm, false});
            nw.insert(nw.end(), word.begin() + i + 2, word.end());
            join(u, std::move(nw), tab.start[u]);
          }
        }
      }
    }
    return changed;
  };

  auto run_closure = [&](UnionFind& uf, int bound) -> bool {  // true when fixed point reached
    for (int pass = 0; pass < max_iter; ++pass) {
      if (!closure_pass(uf, bound)) return true;
    }
    return false;
  };

  UnionFind uf_short(nwords), uf_probe(nwords);
  bool fixed_short = run_closure(uf_short, max_len);
  bool fixed_probe = run_closure(uf_probe, probe);
  if (!fixed_short || !fixed_probe) {
    out.note = "congruence closure did not reach a fixed point within the iteration cap";
    return out;
  }

  // Stabilized: the probe-bound closure must not merge short-word classes
  // beyond the short-bound closure.
  std::map<int, int> probe_to_short;
  for (int u = 0; u < nwords; ++u) {
    if (static_cast<int>(tab.words[u].size()) > max_len) continue;
    int pr = uf_probe.find(u), sr = uf_short.find(u);
    auto it = probe_to_short.find(pr);
    if (it == probe_to_short.end()) {
      probe_to_short[pr] = sr;
    } else if (it->second != sr) {
      out.note = "class structure changed under length " + std::to_string(probe) +
                 " probes";
      return out;
    }
  }

  // Assemble the homotopy category from probe-closure classes of short words.
  HoCategory ho;
  for (int o = 0; o < base.num_objects(); ++o) ho.cat.add_object(base.object_name(o));
  std::map<int, int> class_mor;       // probe root -> ho morphism
  std::map<int, ZigzagWord> class_rep;
  std::map<int, std::pair<int, int>> class_ends;
  for (int u = 0; u < nwords; ++u) {
    if (static_cast<int>(tab.words[u].size()) > max_len) continue;
    int root = uf_probe.find(u);
    auto it = class_rep.find(root);
    if (it == class_rep.end() || shortlex_less(tab.words[u], it->second)) {
      class_rep[root] = tab.words[u];
      class_ends[root] = {tab.start[u],
                          tab.words[u].empty() ? tab.start[u]
                                               : letter_cod(base, tab.words[u].back())};
    }
  }
  ho.expr.resize(ho.cat.num_morphisms());
  for (const auto& [root, rep] : class_rep) {
    auto [c, d] = class_ends.at(root);
    if (rep.empty()) {
      class_mor[root] = ho.cat.identity(c);
    } else {
      class_mor[root] = ho.cat.add_morphism(
          "[" + base.object_name(c) + "=>" + base.object_name(d) + "@" +
              std::to_string(root) + "]",
          c, d);
    }
    ho.expr.resize(ho.cat.num_morphisms());
    ho.expr[class_mor[root]] = rep;
  }

  auto class_of = [&](ZigzagWord wd, int s) -> int {
    if (!normalize_word(base, w, wd)) return -1;
    int u = tab.lookup(wd, s);
    if (u < 0) return -1;
    auto it = class_mor.find(uf_probe.find(u));
    return it == class_mor.end() ? -1 : it->second;
  };

  // Canonical functor.
  ho.mor_map.resize(base.num_morphisms());
  for (int m = 0; m < base.num_morphisms(); ++m) {
    ho.mor_map[m] = class_of({{m, false}}, base.dom(m));
    if (ho.mor_map[m] < 0) {
      out.note = "word bound too small to represent the canonical functor";
      return out;
    }
  }

  // Composition by concatenation of representatives.
  for (const auto& [root1, rep1] : class_rep) {
    for (const auto& [root2, rep2] : class_rep) {
      if (class_ends.at(root1).second != class_ends.at(root2).first) continue;
      int f = class_mor.at(root1), g = class_mor.at(root2);
      if (ho.cat.is_identity(f) || ho.cat.is_identity(g)) continue;
      ZigzagWord cat12 = rep1;
      cat12.insert(cat12.end(), rep2.begin(), rep2.end());
      int comp = class_of(std::move(cat12), class_ends.at(root1).first);
      if (comp < 0) {
        out.note = "word bound too small to compose class representatives";
        return out;
      }
      ho.cat.set_composite(g, f, comp);
    }
  }
  ho.cat.finalize();
  if (!ho.cat.validate().empty()) {
    out.note = "bounded closure produced a non-associative composition table";
    return out;
  }
  out.stable = true;
  out.ho = std::move(ho);
  return out;
}

OracleResult oracle_localize(const RelativeCategory& r, int max_len, int max_iter) {
  return oracle_localize_with(r.base(), r.w_mask(), max_len, max_iter);
}

namespace {

// Evaluates a zigzag inside a homotopy category; -1 when a letter has no
// invertible image or the composite is undefined.
int eval_word(const FinCategory& base, const HoCategory& h, const ZigzagWord& w,
              int start) {
  int cur = h.cat.identity(start);
  for (const Letter& l : w) {
    int img = h.mor_map[l.m];
    if (l.inv) {
      img = h.cat.inverse(img);
      if (img < 0) return -1;
    }
    cur = h.cat.compose(img, cur);
    if (cur < 0) return -1;
  }
  return cur;
}

}  // namespace

CheckResult compare_localizations(const RelativeCategory& r, const HoCategory& a,
                                  const HoCategory& b) {
  const FinCategory& base = r.base();
  if (a.cat.num_objects() != base.num_objects() ||
      b.cat.num_objects() != base.num_objects())
    return {false, "object sets do not match the base category"};

  std::vector<int> phi(a.cat.num_morphisms(), -1);
  for (int m = 0; m < a.cat.num_morphisms(); ++m) {
    phi[m] = eval_word(base, b, a.expr[m], a.cat.dom(m));
    if (phi[m] < 0)
      return {false, "representative of " + a.cat.morphism_name(m) +
                         " has no image in the other localization"};
    if (b.cat.dom(phi[m]) != a.cat.dom(m) || b.cat.cod(phi[m]) != a.cat.cod(m))
      return {false, "image of " + a.cat.morphism_name(m) + " has wrong endpoints"};
  }
  for (int m = 0; m < base.num_morphisms(); ++m) {
    if (phi[a.mor_map[m]] != b.mor_map[m])
      return {false, "canonical functors disagree at " + base.morphism_name(m)};
  }
  for (int g = 0; g < a.cat.num_morphisms(); ++g) {
    for (int f = 0; f < a.cat.num_morphisms(); ++f) {
      if (a.cat.cod(f) != a.cat.dom(g)) continue;
      if (phi[a.cat.compose(g, f)] != b.cat.compose(phi[g], phi[f]))
        return {false, "comparison is not functorial at " + a.cat.morphism_name(g) +
                           " after " + a.cat.morphism_name(f)};
    }
  }
  for (int c = 0; c < base.num_objects(); ++c) {
    for (int d = 0; d < base.num_objects(); ++d) {
      const auto& ha = a.cat.hom(c, d);
      const auto& hb = b.cat.hom(c, d);
      if (ha.size() != hb.size())
        return {false, "hom(" + base.object_name(c) + "," + base.object_name(d) +
                           ") has " + std::to_string(ha.size()) + " vs " +
                           std::to_string(hb.size()) + " classes"};
      std::set<int> images;
      for (int m : ha) images.insert(phi[m]);
      if (images.size() != ha.size())
        return {false, "comparison is not injective on hom(" + base.object_name(c) +
                           "," + base.object_name(d) + ")"};
    }
  }
  return {true, ""};
}

std::vector<Violation> w_locality_report(const RelativeCategory& r) {
  const FinCategory& base = r.base();
  std::vector<Violation> out;
  for (int w : r.w_list()) {
    if (base.is_identity(w)) continue;
    int dp = base.dom(w), d = base.cod(w);
    for (int c = 0; c < base.num_objects(); ++c) {
      MappingCategory from = mapping_category(r, c, dp);
      MappingCategory to = mapping_category(r, c, d);
      std::vector<int> comp_from = component_classes(from.cat);
      std::vector<int> comp_to = component_classes(to.cat);
      int n_from = from.spans.empty()
                       ? 0
                       : 1 + *std::max_element(comp_from.begin(), comp_from.end());
      int n_to =
          to.spans.empty() ? 0 : 1 + *std::max_element(comp_to.begin(), comp_to.end());
      std::vector<int> image(n_from, -1);
      bool bad = false;
      std::string ctx = "w = " + base.morphism_name(w) + ", c = " + base.object_name(c);
      for (size_t s = 0; s < from.spans.size(); ++s) {
        Span pushed{from.spans[s].left, base.compose(w, from.spans[s].right)};
        int idx = to.index_of(pushed);
        assert(idx >= 0);
        int cls = comp_to[idx];
        if (image[comp_from[s]] < 0) image[comp_from[s]] = cls;
        // Post-composition is a functor, so it always descends; record the class.
        if (image[comp_from[s]] != cls) {
          out.push_back({"w-locality-descent", ctx});
          bad = true;
          break;
        }
      }
      if (bad) continue;
      std::vector<char> hit(n_to, 0);
      for (int k = 0; k < n_from; ++k) {
        if (image[k] < 0 || hit[image[k]]) {
          out.push_back({"w-locality-injective", ctx});
          bad = true;
          break;
        }
        hit[image[k]] = 1;
      }
      if (bad) continue;
      for (int k = 0; k < n_to; ++k)
        if (!hit[k]) {
          out.push_back({"w-locality-surjective", ctx});
          break;
        }
    }
  }
  return out;
}

}  // namespace spanloc
