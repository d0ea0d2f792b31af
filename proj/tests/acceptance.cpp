// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Everything here is checked against independently derived values.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spanloc/bicat.hpp"
#include "spanloc/document.hpp"
#include "spanloc/localization.hpp"
#include "spanloc/span.hpp"
#include "spanloc/sset.hpp"

using namespace spanloc;
using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kFixtures = {"meet-poset", "cube-poset", "parallel-pair",
                                            "walking-iso", "collapse"};

std::string fixture_path(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name + ".json";
}

CategoryDocument fixture(const std::string& name) {
  return load_document(fixture_path(name));
}

ordered_json fixture_json(const std::string& name) {
  std::ifstream in(fixture_path(name));
  ordered_json j;
  in >> j;
  return j;
}

struct Failure {
  std::string detail;
};

using Criterion = std::function<void(std::vector<std::string>&)>;

void expect(std::vector<std::string>& errs, bool ok, const std::string& what) {
  if (!ok) errs.push_back(what);
}

bool has_clause(const std::vector<Violation>& vs, const std::string& clause) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.clause == clause; });
}

std::vector<Violation> all_violations(const CategoryDocument& doc) {
  RelativeCategory r = doc.relative();
  auto out = doc.cat.validate();
  auto w = validate_hypercovers(r);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

// ---------------------------------------------------------------- criterion 1

void criterion1(std::vector<std::string>& errs) {
  for (const char* name : {"cube-poset", "meet-poset"}) {
    expect(errs, all_violations(fixture(name)).empty(),
           std::string(name) + " should validate");
  }

  struct Mutation {
    std::string base;
    std::string clause;
    std::function<void(ordered_json&)> apply;
  };
  auto set_w = [](std::initializer_list<const char*> ws) {
    std::vector<std::string> copy(ws.begin(), ws.end());
    return [copy](ordered_json& j) { j["hypercovers"] = copy; };
  };
  std::vector<Mutation> mutations = {
      {"meet-poset", "composition-total",
       [](ordered_json& j) { j["composition"].erase(0); }},
      {"meet-poset", "composition-endpoints",
       [](ordered_json& j) { j["composition"][0]["equals"] = "inc_0_2"; }},
      {"walking-iso", "isomorphisms-in-w", set_w({})},
      {"walking-iso", "isomorphisms-in-w", set_w({"u"})},
      {"cube-poset", "composition-closed", set_w({"inc_0_3", "inc_3_13"})},
      {"parallel-pair", "pullback-exists", set_w({"f"})},
      {"meet-poset", "pullback-stable", set_w({"inc_1_12"})},
      {"collapse", "pullback-stable", set_w({"0_y"})},
      {"cube-poset", "pullback-stable", set_w({"inc_0_13"})},
      {"cube-poset", "composition-total",
       [](ordered_json& j) { j["composition"].erase(3); }},
  };
  int count = 0;
  for (const auto& m : mutations) {
    ordered_json j = fixture_json(m.base);
    m.apply(j);
    auto bad = all_violations(parse_document(j));
    expect(errs, has_clause(bad, m.clause),
           "mutation of " + m.base + " should violate " + m.clause);
    ++count;
  }
  // An associativity breaker needs parallel morphisms, so it is hand-built.
  ordered_json assoc{
      {"objects", {"x", "y"}},
      {"morphisms",
       ordered_json::array({{{"name", "e"}, {"dom", "x"}, {"cod", "x"}},
                            {{"name", "f"}, {"dom", "x"}, {"cod", "y"}},
                            {{"name", "g"}, {"dom", "x"}, {"cod", "y"}}})},
      {"composition",
       ordered_json::array(
           {{{"after", "e"}, {"then", "e"}, {"equals", "id_x"}},
            {{"after", "f"}, {"then", "e"}, {"equals", "g"}},
            {{"after", "g"}, {"then", "e"}, {"equals", "g"}}})},
      {"hypercovers", ordered_json::array()}};
  expect(errs, has_clause(all_violations(parse_document(assoc)), "associativity"),
         "hand-built mutation should violate associativity");
  ++count;
  expect(errs, count >= 10, "mutation suite must contain at least 10 documents");
}

// ---------------------------------------------------------------- criterion 2

void criterion2(std::vector<std::string>& errs) {
  const long long budget = 2000000000LL;
  // Functor counts double as an exhaustiveness check (cube of the number of
  // monotone maps of a single leg).
  const int expected[2][2] = {{196, 2744}, {1764, 74088}};
  const char* targets[2] = {"meet-poset", "cube-poset"};
  for (int ni = 0; ni < 2; ++ni) {
    int n = ni + 2;
    SigmaPoset s = build_sigma(n);
    FinCategory sc = sigma_category(s);
    for (int ti = 0; ti < 2; ++ti) {
      auto doc = fixture(targets[ti]);
      RelativeCategory r = doc.relative();
      auto functors = enumerate_functors(sc, doc.cat, budget);
      expect(errs, static_cast<int>(functors.size()) == expected[ni][ti],
             std::string(targets[ti]) + " n=" + std::to_string(n) +
                 ": unexpected functor count " + std::to_string(functors.size()));
      for (const auto& f : functors) {
        SpanDiagram d = diagram_from_functor(s, f);
        DiagramConditions cond = check_diagram_conditions(r, s, d);
        if (cond.all_squares != cond.inner_squares || cond.inner_squares != cond.rke) {
          errs.push_back(std::string(targets[ti]) + " n=" + std::to_string(n) +
                         ": diagram conditions disagree");
          return;
        }
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 3

void criterion3(std::vector<std::string>& errs) {
  for (const auto& name : kFixtures) {
    auto doc = fixture(name);
    RelativeCategory r = doc.relative();
    std::vector<SpanLevel> levels;
    for (int k = 0; k <= 4; ++k) levels.push_back(build_span_level(r, k, 1000000000000LL));
    for (int n = 2; n <= 4; ++n) {
      CheckResult res = segal_check(r, levels, n);
      expect(errs, res.ok, name + " n=" + std::to_string(n) + ": " + res.witness);
    }
  }
}

// ---------------------------------------------------------------- criterion 4

std::set<char> subset_of(const std::string& name) {
  std::set<char> out;
  if (name == "0") return out;
  for (char c : name) out.insert(c);
  return out;
}

void criterion4(std::vector<std::string>& errs) {
  for (const auto& name : kFixtures) {
    auto doc = fixture(name);
    RelativeCategory r = doc.relative();
    HoCategory via_spans = ho_via_spans(r);
    OracleResult oracle = oracle_localize(r, 8, 10000);
    if (!oracle.stable) {
      errs.push_back(name + ": oracle did not stabilize (" + oracle.note + ")");
      continue;
    }
    CheckResult agree = compare_localizations(r, via_spans, *oracle.ho);
    expect(errs, agree.ok, name + ": localizations disagree: " + agree.witness);

    if (name == "cube-poset") {
      for (const HoCategory* ho : {&via_spans, &*oracle.ho}) {
        for (int a = 0; a < doc.cat.num_objects(); ++a) {
          for (int b = 0; b < doc.cat.num_objects(); ++b) {
            auto ca = subset_of(doc.cat.object_name(a));
            auto cb = subset_of(doc.cat.object_name(b));
            ca.erase('3');
            bool included = std::includes(cb.begin(), cb.end(), ca.begin(), ca.end());
            size_t want = included ? 1 : 0;
            expect(errs, ho->cat.hom(a, b).size() == want,
                   "cube-poset hom(" + doc.cat.object_name(a) + ", " +
                       doc.cat.object_name(b) + ") should have size " +
                       std::to_string(want));
          }
        }
      }
    }
    if (name == "collapse") {
      int f = doc.cat.morphism_index("f");
      int g = doc.cat.morphism_index("g");
      expect(errs, via_spans.mor_map[f] == via_spans.mor_map[g],
             "collapse: spans must merge f and g");
      expect(errs, oracle.ho->mor_map[f] == oracle.ho->mor_map[g],
             "collapse: oracle must merge f and g");
    }
  }
}

// ---------------------------------------------------------------- criterion 5

void criterion5(std::vector<std::string>& errs) {
  for (const auto& name : kFixtures) {
    auto doc = fixture(name);
    RelativeCategory r = doc.relative();
    auto bad = w_locality_report(r);
    expect(errs, bad.empty(),
           name + ": " + (bad.empty() ? "" : bad.front().clause + " / " + bad.front().witness));
  }
  auto par = fixture("parallel-pair");
  RelativeCategory broken(par.cat, {par.cat.morphism_index("f")});
  expect(errs, !w_locality_report(broken).empty(),
         "corrupted class should fail w-locality");
}

// ---------------------------------------------------------------- criterion 6

std::vector<int> monotone_face(int n, int i) {  // [n-1] -> [n] skipping i
  std::vector<int> a;
  for (int v = 0; v <= n; ++v)
    if (v != i) a.push_back(v);
  return a;
}

std::vector<int> monotone_degen(int n, int i) {  // [n+1] -> [n] repeating i
  std::vector<int> a;
  for (int v = 0; v <= n + 1; ++v) a.push_back(v <= i ? v : v - 1);
  return a;
}

void criterion6(std::vector<std::string>& errs) {
  for (const auto& name : kFixtures) {
    auto doc = fixture(name);
    const FinCategory& c = doc.cat;
    RelativeCategory r = doc.relative();
    std::vector<SpanLevel> levels;
    for (int k = 0; k <= 3; ++k) levels.push_back(build_span_level(r, k, 1000000000000LL));

    // Every generator map [m] -> [n] with m, n <= 3.
    struct Gen {
      std::vector<int> alpha;
      int from, to;  // acts Level_from -> Level_to, alpha: [to] -> [from]
    };
    std::vector<Gen> gens;
    for (int n = 1; n <= 3; ++n)
      for (int i = 0; i <= n; ++i) gens.push_back({monotone_face(n, i), n, n - 1});
    for (int n = 0; n <= 2; ++n)
      for (int i = 0; i <= n; ++i) gens.push_back({monotone_degen(n, i), n, n + 1});

    // All pairwise composites factor consistently: the action of the composed
    // index map equals the composite of the actions.
    for (const Gen& g1 : gens) {
      for (const Gen& g2 : gens) {
        if (g2.from != g1.to) continue;
        std::vector<int> composed(g2.alpha.size());
        for (size_t t = 0; t < g2.alpha.size(); ++t) composed[t] = g1.alpha[g2.alpha[t]];
        FinFunctor a1 = simplicial_action(r, g1.alpha, levels[g1.from], levels[g1.to]);
        FinFunctor a2 = simplicial_action(r, g2.alpha, levels[g2.from], levels[g2.to]);
        FinFunctor direct =
            simplicial_action(r, composed, levels[g1.from], levels[g2.to]);
        FinFunctor via = compose_functors(a2, a1);
        if (via.object_map != direct.object_map || via.morphism_map != direct.morphism_map) {
          errs.push_back(name + ": simplicial identity fails for a generator pair");
          return;
        }
      }
    }

    // u-naturality: the degenerate-diagram unit commutes with every generator.
    NerveData nerve_data = nerve(c, 3);
    auto unit_index = [&](int k, int simplex) {
      const auto& chain = nerve_data.chains[k][simplex];
      std::vector<int> mors(chain.begin() + 1, chain.end());
      return levels[k].index_of(nerve_unit(r, chain[0], mors));
    };
    for (const Gen& g : gens) {
      FinFunctor act = simplicial_action(r, g.alpha, levels[g.from], levels[g.to]);
      for (int s = 0; s < nerve_data.x.counts[g.from]; ++s) {
        int source = unit_index(g.from, s);
        int target;
        if (g.from > g.to) {
          int i = -1;
          for (int v = 0; v <= g.from; ++v)
            if (std::find(g.alpha.begin(), g.alpha.end(), v) == g.alpha.end()) i = v;
          target = unit_index(g.to, nerve_data.x.face[g.from][i][s]);
        } else {
          int i = -1;
          for (size_t t = 0; t + 1 < g.alpha.size(); ++t)
            if (g.alpha[t] == g.alpha[t + 1]) i = g.alpha[t];
          target = unit_index(g.to, nerve_data.x.degen[g.from][i][s]);
        }
        if (source < 0 || target < 0 || act.object_map[source] != target) {
          errs.push_back(name + ": unit naturality fails at level " +
                         std::to_string(g.from));
          return;
        }
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 7

void criterion7(std::vector<std::string>& errs) {
  for (const auto& name : kFixtures) {
    auto doc = fixture(name);
    const FinCategory& c = doc.cat;
    RelativeCategory r = doc.relative();
    for (int w = 0; w < c.num_morphisms(); ++w) {
      if (!r.in_w(w) || c.is_identity(w)) continue;
      CheckResult res = adjunction_check(r, w);
      expect(errs, res.ok, name + ": adjunction fails for " + c.morphism_name(w) +
                               ": " + res.witness);
    }
    for (int w = 0; w < c.num_morphisms(); ++w) {
      if (!r.in_w(w) || c.is_identity(w)) continue;
      for (int g = 0; g < c.num_morphisms(); ++g) {
        if (c.cod(g) != c.cod(w)) continue;
        const auto& cone = r.pullback(w, g);
        if (!cone) continue;
        CheckResult res = beck_chevalley_check(r, w, g, cone->leg2, cone->leg1);
        expect(errs, res.ok, name + ": beck-chevalley fails over (" +
                                 c.morphism_name(w) + ", " + c.morphism_name(g) +
                                 "): " + res.witness);
      }
    }
  }

  // Negative controls: commuting but non-cartesian corners in the cube.
  auto cube = fixture("cube-poset");
  const FinCategory& c = cube.cat;
  RelativeCategory r = cube.relative();
  struct Control {
    const char *f, *g, *fp, *gp;
  };
  for (const Control& ctl : {Control{"inc_12_123", "inc_13_123", "inc_0_13", "inc_0_12"},
                             Control{"inc_12_123", "inc_23_123", "inc_0_23", "inc_0_12"}}) {
    bool threw = false;
    try {
      beck_chevalley_check(r, c.morphism_index(ctl.f), c.morphism_index(ctl.g),
                           c.morphism_index(ctl.fp), c.morphism_index(ctl.gp));
    } catch (const NotCartesian&) {
      threw = true;
    }
    expect(errs, threw, "non-cartesian control should throw");
    CheckResult forced =
        beck_chevalley_check(r, c.morphism_index(ctl.f), c.morphism_index(ctl.g),
                             c.morphism_index(ctl.fp), c.morphism_index(ctl.gp), true);
    expect(errs, !forced.ok, "forced non-cartesian control should fail");
  }
}

// ---------------------------------------------------------------- criterion 8

SetFunctor representable_sum(const FinCategory& c, const std::vector<int>& reps) {
  SetFunctor f;
  f.size.assign(c.num_objects(), 0);
  std::vector<std::vector<std::pair<int, int>>> elems(c.num_objects());
  for (int d = 0; d < c.num_objects(); ++d) {
    for (size_t i = 0; i < reps.size(); ++i)
      for (int h : c.hom(reps[i], d)) elems[d].push_back({static_cast<int>(i), h});
    f.size[d] = static_cast<int>(elems[d].size());
  }
  f.action.assign(c.num_morphisms(), {});
  for (int m = 0; m < c.num_morphisms(); ++m) {
    f.action[m].resize(elems[c.dom(m)].size());
    for (size_t e = 0; e < elems[c.dom(m)].size(); ++e) {
      auto [i, h] = elems[c.dom(m)][e];
      std::pair<int, int> img{i, c.compose(m, h)};
      f.action[m][e] = static_cast<int>(
          std::find(elems[c.cod(m)].begin(), elems[c.cod(m)].end(), img) -
          elems[c.cod(m)].begin());
    }
  }
  return f;
}

void criterion8(std::vector<std::string>& errs) {
  std::mt19937 rng(0xC0FFEE);
  int trials = 0;
  for (const auto& name : kFixtures) {
    auto doc = fixture(name);
    for (int t = 0; t < 10; ++t) {
      std::uniform_int_distribution<int> pick(0, doc.cat.num_objects() - 1);
      std::uniform_int_distribution<int> count(1, 3);
      std::vector<int> reps;
      for (int i = count(rng); i > 0; --i) reps.push_back(pick(rng));
      SetFunctor f = representable_sum(doc.cat, reps);
      if (!validate_set_functor(doc.cat, f).empty()) {
        errs.push_back(name + ": generated functor is invalid");
        return;
      }
      GrothendieckData g = grothendieck(doc.cat, f, 3);
      SSetMap p = g.map();
      HornResult res = horn_lift_check(p, HornKind::Left, 3);
      expect(errs, res.ok, name + ": grothendieck output fails the left-fibration "
                           "check: " + res.witness);
      ++trials;
    }
  }
  expect(errs, trials >= 50, "need at least 50 randomized functors");

  auto par = fixture("parallel-pair");
  NerveData npar = nerve(par.cat, 2);
  TSSet pt2 = terminal_sset(2);
  HornResult left = horn_lift_check(to_terminal(npar.x, pt2), HornKind::Left, 2);
  expect(errs, !left.ok, "parallel-pair should fail the left horn check");
  int ef = npar.edge_index(par.cat, par.cat.morphism_index("f"));
  int eg = npar.edge_index(par.cat, par.cat.morphism_index("g"));
  std::string fg = "(" + std::to_string(ef) + "," + std::to_string(eg) + ")";
  std::string gf = "(" + std::to_string(eg) + "," + std::to_string(ef) + ")";
  expect(errs, left.witness.find("horn(0,2)") != std::string::npos &&
                   (left.witness.find(fg) != std::string::npos ||
                    left.witness.find(gf) != std::string::npos),
         "witness should name the (f, g) horn: got " + left.witness);

  auto iso = fixture("walking-iso");
  NerveData niso = nerve(iso.cat, 3);
  TSSet pt3 = terminal_sset(3);
  expect(errs, horn_lift_check(to_terminal(niso.x, pt3), HornKind::Kan, 3).ok,
         "walking-iso nerve should be Kan");
}

// ---------------------------------------------------------------- criterion 9

void criterion9(std::vector<std::string>& errs) {
  TSSet b2 = boundary_simplex(2, 2);
  expect(errs, abelianization_rank(pi1_presentation(b2, 0)) == 1,
         "boundary of the 2-simplex should have rank 1");
  TSSet d2 = standard_simplex(2, 2);
  expect(errs, abelianization_rank(pi1_presentation(d2, 0)) == 0,
         "2-simplex should have rank 0");
  auto meet = fixture("meet-poset");
  NerveData n = nerve(meet.cat, 2);
  expect(errs, abelianization_rank(pi1_presentation(n.x, 0)) == 0,
         "meet-poset nerve should have rank 0");
}

// --------------------------------------------------------------- criterion 10

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion10(std::vector<std::string>& errs) {
  std::string tmp = std::filesystem::temp_directory_path().string();
  const std::vector<std::string> commands = {
      "validate",
      "span --level 2 --budget 100000000",
      "localize --max-word-len 4 --max-iter 100",
      "bicat",
      "sset --dim 2 --kind inner",
  };
  for (const auto& name : kFixtures) {
    for (size_t ci = 0; ci < commands.size(); ++ci) {
      std::string a = tmp + "/det_a_" + name + "_" + std::to_string(ci) + ".json";
      std::string b = tmp + "/det_b_" + name + "_" + std::to_string(ci) + ".json";
      for (const std::string& out : {a, b}) {
        std::string cmd = std::string(CLI_BIN) + " " + commands[ci] + " --input " +
                          fixture_path(name) + " --json " + out + " 2>/dev/null";
        int rc = std::system(cmd.c_str());
        if (rc == -1) {
          errs.push_back("failed to launch the CLI");
          return;
        }
      }
      std::string ja = slurp(a), jb = slurp(b);
      expect(errs, !ja.empty() && ja == jb,
             name + " / " + commands[ci] + ": reports differ between runs");
      std::filesystem::remove(a);
      std::filesystem::remove(b);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Entry {
    const char* label;
    Criterion fn;
  };
  const Entry entries[] = {
      {"hypercover validation and mutation suite", criterion1},
      {"diagram-condition equivalence sweep", criterion2},
      {"segal property at levels 2..4", criterion3},
      {"span localization agrees with the zigzag oracle", criterion4},
      {"w-locality of mapping components", criterion5},
      {"simplicial identities and unit naturality", criterion6},
      {"hypercover adjunctions and beck-chevalley", criterion7},
      {"left-fibration checker soundness", criterion8},
      {"pi1 shadows", criterion9},
      {"deterministic reports", criterion10},
  };
  bool all_ok = true;
  for (size_t i = 0; i < std::size(entries); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    std::vector<std::string> errs;
    try {
      entries[i].fn(errs);
    } catch (const std::exception& e) {
      errs.push_back(std::string("exception: ") + e.what());
    }
    bool ok = errs.empty();
    all_ok = all_ok && ok;
    std::cout << "criterion " << (i + 1) << ": " << (ok ? "PASS" : "FAIL") << " - "
              << entries[i].label << "\n";
    for (const auto& e : errs) std::cout << "    " << e << "\n";
  }
  return all_ok ? 0 : 1;
}
