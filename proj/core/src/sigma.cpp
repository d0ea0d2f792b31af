#include "spanloc/sigma.hpp"

#include <string>

namespace spanloc {

SigmaPoset build_sigma(int n) {
  SigmaPoset s;
  s.n = n;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) s.elements.emplace_back(i, j);
  return s;
}

FinCategory sigma_category(const SigmaPoset& s) {
  FinCategory c;
  auto name = [](std::pair<int, int> p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
  };
  for (int e = 0; e < s.size(); ++e) c.add_object(name(s.elements[e]));
  std::vector<std::vector<int>> mor(s.size(), std::vector<int>(s.size(), -1));
  for (int a = 0; a < s.size(); ++a) {
    mor[a][a] = c.identity(a);
    for (int b = 0; b < s.size(); ++b) {
      if (a == b || !s.leq(a, b)) continue;
      mor[a][b] = c.add_morphism(name(s.elements[a]) + "->" + name(s.elements[b]), a, b);
    }
  }
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b)
      for (int d = 0; d < s.size(); ++d)
        if (mor[a][b] >= 0 && mor[b][d] >= 0 && a != b && b != d)
          c.set_composite(mor[b][d], mor[a][b], mor[a][d]);
  c.finalize();
  return c;
}

std::vector<int> sigma_map(const SigmaPoset& from, const SigmaPoset& to,
                           const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != from.n + 1)
    throw NonMonotone("sigma_map: alpha has wrong arity");
  for (size_t k = 0; k + 1 < alpha.size(); ++k)
    if (alpha[k] > alpha[k + 1]) throw NonMonotone("sigma_map: alpha is not monotone");
  for (int v : alpha)
    if (v < 0 || v > to.n) throw NonMonotone("sigma_map: alpha value out of range");
  std::vector<int> out(from.size());
  for (int e = 0; e < from.size(); ++e) {
    auto [i, j] = from.elements[e];
    out[e] = to.index(alpha[i], alpha[j]);
  }
  return out;
}

std::vector<int> lambda_subposet(const SigmaPoset& s) {
  std::vector<int> out;
  for (int e = 0; e < s.size(); ++e) {
    auto [i, j] = s.elements[e];
    if (j - i <= 1) out.push_back(e);
  }
  return out;
}

int diagram_edge(const FinCategory& c, const SigmaPoset& s, const SpanDiagram& f,
                 int from, int to) {
  auto [i, j] = s.pair_of(from);
  auto [i2, j2] = s.pair_of(to);
  int m = c.identity(f.obj[from]);
  for (int jj = j; jj > j2; --jj) m = c.compose(f.down[s.index(i, jj)], m);
  for (int ii = i; ii < i2; ++ii) m = c.compose(f.right[s.index(ii, j2)], m);
  return m;
}

namespace {

std::string elem_name(const SigmaPoset& s, int e) {
  auto [i, j] = s.pair_of(e);
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

bool square_cartesian(const RelativeCategory& r, const SigmaPoset& s,
                      const SpanDiagram& f, int i, int ip, int jp, int j) {
  const FinCategory& c = r.base();
  // Cospan at the (i', j') corner; cone apex F(i, j).
  int bottom = diagram_edge(c, s, f, s.index(i, jp), s.index(ip, jp));
  int right = diagram_edge(c, s, f, s.index(ip, j), s.index(ip, jp));
  PullbackCone cone{f.obj[s.index(i, j)],
                    diagram_edge(c, s, f, s.index(i, j), s.index(i, jp)),
                    diagram_edge(c, s, f, s.index(i, j), s.index(ip, j))};
  return is_pullback_cone(c, bottom, right, cone);
}

}  // namespace

std::vector<Violation> validate_span_diagram(const RelativeCategory& r,
                                             const SigmaPoset& s, const SpanDiagram& f) {
  const FinCategory& c = r.base();
  std::vector<Violation> out;
  for (int e = 0; e < s.size(); ++e) {
    auto [i, j] = s.pair_of(e);
    if (j > i) {
      int d = f.down[e];
      if (d < 0 || c.dom(d) != f.obj[e] || c.cod(d) != f.obj[s.index(i, j - 1)]) {
        out.push_back({"edge-endpoints", "down at " + elem_name(s, e)});
        continue;
      }
      if (!r.in_w(d))
        out.push_back({"relative", "marked edge at " + elem_name(s, e) + " is " +
                                       c.morphism_name(d) + ", not a hypercover"});
    }
    if (i < j) {
      int rr = f.right[e];
      if (rr < 0 || c.dom(rr) != f.obj[e] || c.cod(rr) != f.obj[s.index(i + 1, j)]) {
        out.push_back({"edge-endpoints", "right at " + elem_name(s, e)});
        continue;
      }
    }
  }
  if (!out.empty()) return out;
  // Cover squares must commute (path independence on the poset).
  for (int e = 0; e < s.size(); ++e) {
    auto [i, j] = s.pair_of(e);
    if (i + 1 > j - 1) continue;
    int via_right = c.compose(f.down[s.index(i + 1, j)], f.right[e]);
    int via_down = c.compose(f.right[s.index(i, j - 1)], f.down[e]);
    if (via_right != via_down)
      out.push_back({"square-commutes", elem_name(s, e)});
  }
  if (!out.empty()) return out;
  for (int i = 0; i <= s.n; ++i)
    for (int j = i + 2; j <= s.n; ++j)
      for (int ip = i + 1; ip <= j; ++ip)
        for (int jp = ip; jp < j; ++jp)
          if (!square_cartesian(r, s, f, i, ip, jp, j))
            out.push_back({"cartesian", "square (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") over (" +
                                            std::to_string(ip) + "," +
                                            std::to_string(jp) + ")"});
  return out;
}

SpanDiagram right_kan_extend(const RelativeCategory& r, const SigmaPoset& s,
                             const SpanDiagram& partial) {
  const FinCategory& c = r.base();
  SpanDiagram f = partial;
  f.n = s.n;
  f.obj.resize(s.size(), -1);
  f.down.resize(s.size(), -1);
  f.right.resize(s.size(), -1);
  for (int k = 2; k <= s.n; ++k) {
    for (int i = 0; i + k <= s.n; ++i) {
      int j = i + k;
      int e = s.index(i, j);
      int f_edge = f.right[s.index(i, j - 1)];   // F(i,j-1) -> F(i+1,j-1)
      int g_edge = f.down[s.index(i + 1, j)];    // F(i+1,j) -> F(i+1,j-1)
      const auto& cone = r.pullback(f_edge, g_edge);
      if (!cone)
        throw MissingPullback("(" + c.morphism_name(f_edge) + ", " +
                                  c.morphism_name(g_edge) + ")",
                              "right_kan_extend: pullback missing at " + elem_name(s, e));
      f.obj[e] = cone->apex;
      f.down[e] = cone->leg1;
      f.right[e] = cone->leg2;
    }
  }
  return f;
}

DiagramConditions check_diagram_conditions(const RelativeCategory& r,
                                           const SigmaPoset& s, const SpanDiagram& f) {
  const FinCategory& c = r.base();
  DiagramConditions out;
  out.all_squares = true;
  out.inner_squares = true;
  for (int i = 0; i <= s.n && out.all_squares; ++i)
    for (int j = i + 2; j <= s.n && out.all_squares; ++j)
      for (int ip = i + 1; ip <= j && out.all_squares; ++ip)
        for (int jp = ip; jp < j; ++jp)
          if (!square_cartesian(r, s, f, i, ip, jp, j)) {
            out.all_squares = false;
            break;
          }
  for (int i = 0; i <= s.n && out.inner_squares; ++i)
    for (int j = i + 2; j <= s.n; ++j)
      if (!square_cartesian(r, s, f, i, i + 1, j - 1, j)) {
        out.inner_squares = false;
        break;
      }

  // Condition (3): compare against the canonical extension of the Λₙ
  // restriction, level by level, through mediating isomorphisms.
  out.rke = [&]() {
    SpanDiagram partial;
    partial.n = s.n;
    partial.obj.assign(s.size(), -1);
    partial.down.assign(s.size(), -1);
    partial.right.assign(s.size(), -1);
    for (int e : lambda_subposet(s)) {
      partial.obj[e] = f.obj[e];
      partial.down[e] = f.down[e];
      partial.right[e] = f.right[e];
    }
    SpanDiagram g;
    try {
      g = right_kan_extend(r, s, partial);
    } catch (const MissingPullback&) {
      return false;
    }
    std::vector<int> iso(s.size(), -1);
    for (int e : lambda_subposet(s)) iso[e] = c.identity(f.obj[e]);
    for (int k = 2; k <= s.n; ++k) {
      for (int i = 0; i + k <= s.n; ++i) {
        int j = i + k;
        int e = s.index(i, j);
        int leg1 = c.compose(iso[s.index(i, j - 1)], f.down[e]);
        int leg2 = c.compose(iso[s.index(i + 1, j)], f.right[e]);
        int f_edge = g.right[s.index(i, j - 1)];
        int g_edge = g.down[s.index(i + 1, j)];
        if (leg1 < 0 || leg2 < 0) return false;
        if (c.compose(f_edge, leg1) != c.compose(g_edge, leg2)) return false;
        PullbackCone uni{g.obj[e], g.down[e], g.right[e]};
        PullbackCone test{f.obj[e], leg1, leg2};
        int med = mediating_morphism(c, uni, test);
        if (med < 0 || !c.is_iso(med)) return false;
        iso[e] = med;
      }
    }
    return true;
  }();
  return out;
}

SpanDiagram diagram_from_functor(const SigmaPoset& s, const FinFunctor& f) {
  SpanDiagram d;
  d.n = s.n;
  d.obj.assign(s.size(), -1);
  d.down.assign(s.size(), -1);
  d.right.assign(s.size(), -1);
  const FinCategory& sc = *f.source;
  for (int e = 0; e < s.size(); ++e) {
    d.obj[e] = f.object_map[e];
    auto [i, j] = s.pair_of(e);
    if (j > i) {
      int target = s.index(i, j - 1);
      for (int m : sc.hom(e, target))
        if (!sc.is_identity(m)) d.down[e] = f.morphism_map[m];
    }
    if (i < j) {
      int target = s.index(i + 1, j);
      for (int m : sc.hom(e, target))
        if (!sc.is_identity(m)) d.right[e] = f.morphism_map[m];
    }
  }
  return d;
}

}  // namespace spanloc
