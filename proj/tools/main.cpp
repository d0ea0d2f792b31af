#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spanloc/bicat.hpp"
#include "spanloc/document.hpp"
#include "spanloc/localization.hpp"
#include "spanloc/span.hpp"
#include "spanloc/sset.hpp"

namespace {

using nlohmann::ordered_json;
using namespace spanloc;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInconclusive = 4;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    // Timing is diagnostic only; reports stay byte-identical across runs.
    std::cerr << "elapsed: " << us << " us\n";
  }
};

struct Loaded {
  CategoryDocument doc;
  std::string digest;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(bytes.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  return Loaded{parse_document(j), fnv1a_digest(bytes.str())};
}

ordered_json violations_json(const std::vector<Violation>& vs) {
  ordered_json out = ordered_json::array();
  for (const auto& v : vs) out.push_back({{"clause", v.clause}, {"witness", v.witness}});
  return out;
}

struct Report {
  ordered_json j;
  bool failed = false;

  Report(const std::string& command, const std::string& digest) {
    j["command"] = command;
    j["input_digest"] = digest;
    j["checks"] = ordered_json::array();
  }
  void check(const std::string& name, bool ok, const std::string& witness = "") {
    ordered_json c{{"name", name}, {"status", ok ? "pass" : "fail"}};
    if (!ok && !witness.empty()) c["witness"] = witness;
    j["checks"].push_back(c);
    failed = failed || !ok;
  }
  void inconclusive(const std::string& name, const std::string& note) {
    j["checks"].push_back({{"name", name}, {"status", "inconclusive"}, {"note", note}});
  }
};

void emit(const Report& report, const std::string& json_path) {
  std::string text = report.j.dump(2) + "\n";
  if (json_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(json_path, std::ios::binary);
    out << text;
  }
}

int guard_input(Report& report, const CategoryDocument& doc, const std::string& json_path) {
  RelativeCategory r = doc.relative();
  auto cat_bad = doc.cat.validate();
  auto w_bad = validate_hypercovers(r);
  if (cat_bad.empty() && w_bad.empty()) return -1;
  report.j["violations"] = violations_json(cat_bad);
  for (const auto& v : w_bad)
    report.j["violations"].push_back({{"clause", v.clause}, {"witness", v.witness}});
  report.check("input-valid", false, "document fails validation");
  emit(report, json_path);
  return kExitParseError;
}

int cmd_validate(const Loaded& input, const std::string& json_path) {
  Report report("validate", input.digest);
  RelativeCategory r = input.doc.relative();
  auto cat_bad = input.doc.cat.validate();
  auto w_bad = validate_hypercovers(r);
  report.check("category-axioms", cat_bad.empty(),
               cat_bad.empty() ? "" : cat_bad.front().clause + ": " + cat_bad.front().witness);
  report.check("hypercover-axioms", w_bad.empty(),
               w_bad.empty() ? "" : w_bad.front().clause + ": " + w_bad.front().witness);
  ordered_json all = violations_json(cat_bad);
  for (const auto& v : w_bad) all.push_back({{"clause", v.clause}, {"witness", v.witness}});
  report.j["violations"] = all;
  emit(report, json_path);
  return report.failed ? kExitCheckFailure : kExitPass;
}

void export_dot(const std::string& path, const RelativeCategory& r,
                const std::vector<SpanLevel>& levels, int n) {
  const FinCategory& c = r.base();
  std::ofstream out(path);
  out << "digraph spanloc {\n  rankdir=BT;\n";
  const SigmaPoset& s = levels[n].sigma;
  out << "  subgraph cluster_sigma {\n    label=\"Sigma_" << n << "\";\n";
  for (int e = 0; e < s.size(); ++e) {
    auto [i, j] = s.pair_of(e);
    out << "    s_" << i << "_" << j << " [label=\"(" << i << "," << j << ")\"];\n";
  }
  for (int a = 0; a < s.size(); ++a) {
    auto [i, j] = s.pair_of(a);
    // Cover relations only: down (i,j) -> (i,j-1) marked, right (i,j) -> (i+1,j).
    if (j > i)
      out << "    s_" << i << "_" << j << " -> s_" << i << "_" << (j - 1)
          << " [style=bold, color=red];\n";
    if (j > i)
      out << "    s_" << i << "_" << j << " -> s_" << (i + 1) << "_" << j << ";\n";
  }
  out << "  }\n";
  if (!levels[n].diagrams.empty()) {
    const SpanDiagram& d = levels[n].diagrams.front();
    out << "  subgraph cluster_diagram {\n    label=\"level-" << n << " diagram 0\";\n";
    for (int e = 0; e < s.size(); ++e) {
      auto [i, j] = s.pair_of(e);
      out << "    d_" << i << "_" << j << " [label=\"" << c.object_name(d.obj[e])
          << "\"];\n";
    }
    for (int e = 0; e < s.size(); ++e) {
      auto [i, j] = s.pair_of(e);
      if (d.down[e] >= 0)
        out << "    d_" << i << "_" << j << " -> d_" << i << "_" << (j - 1)
            << " [label=\"" << c.morphism_name(d.down[e])
            << "\", style=bold, color=red];\n";
      if (d.right[e] >= 0)
        out << "    d_" << i << "_" << j << " -> d_" << (i + 1) << "_" << j
            << " [label=\"" << c.morphism_name(d.right[e]) << "\"];\n";
    }
    out << "  }\n";
  }
  out << "}\n";
}

int cmd_span(const Loaded& input, int level, long long budget, const std::string& dot_path,
             const std::string& json_path) {
  Report report("span", input.digest);
  int bad = guard_input(report, input.doc, json_path);
  if (bad >= 0) return bad;
  RelativeCategory r = input.doc.relative();
  try {
    std::vector<SpanLevel> levels;
    ordered_json sizes = ordered_json::array();
    for (int k = 0; k <= level; ++k) {
      levels.push_back(build_span_level(r, k, budget));
      sizes.push_back({{"level", k},
                       {"objects", static_cast<int>(levels.back().diagrams.size())},
                       {"arrows", levels.back().cat.num_morphisms()}});
    }
    report.j["levels"] = sizes;
    for (int k = 2; k <= level; ++k) {
      CheckResult res = segal_check(r, levels, k);
      report.check("segal-level-" + std::to_string(k), res.ok, res.witness);
    }
    if (!dot_path.empty()) export_dot(dot_path, r, levels, level);
  } catch (const BudgetExceeded& e) {
    report.j["budget_estimate"] = e.estimate;
    report.check("budget", false, e.what());
    emit(report, json_path);
    return kExitBudget;
  }
  emit(report, json_path);
  return report.failed ? kExitCheckFailure : kExitPass;
}

int cmd_localize(const Loaded& input, int max_word_len, int max_iter,
                 const std::string& json_path) {
  Report report("localize", input.digest);
  int bad = guard_input(report, input.doc, json_path);
  if (bad >= 0) return bad;
  RelativeCategory r = input.doc.relative();
  HoCategory via_spans = ho_via_spans(r);

  ordered_json homs = ordered_json::array();
  const FinCategory& hc = via_spans.cat;
  for (int a = 0; a < hc.num_objects(); ++a)
    for (int b = 0; b < hc.num_objects(); ++b)
      homs.push_back({{"from", hc.object_name(a)},
                      {"to", hc.object_name(b)},
                      {"size", static_cast<int>(hc.hom(a, b).size())}});
  report.j["hom_sizes"] = homs;

  OracleResult oracle = oracle_localize(r, max_word_len, max_iter);
  if (!oracle.stable) {
    report.inconclusive("oracle-localization", oracle.note);
    emit(report, json_path);
    return kExitInconclusive;
  }
  report.check("oracle-stable", true);
  CheckResult agree = compare_localizations(r, via_spans, *oracle.ho);
  report.check("localizations-agree", agree.ok, agree.witness);
  auto locality = w_locality_report(r);
  report.check("w-locality", locality.empty(),
               locality.empty() ? "" : locality.front().clause + ": " + locality.front().witness);
  report.j["w_locality_violations"] = violations_json(locality);
  emit(report, json_path);
  return report.failed ? kExitCheckFailure : kExitPass;
}

int cmd_bicat(const Loaded& input, const std::string& json_path) {
  Report report("bicat", input.digest);
  int bad = guard_input(report, input.doc, json_path);
  if (bad >= 0) return bad;
  RelativeCategory r = input.doc.relative();
  const FinCategory& c = r.base();
  for (int w = 0; w < c.num_morphisms(); ++w) {
    if (!r.in_w(w) || c.is_identity(w)) continue;
    CheckResult res = adjunction_check(r, w);
    report.check("adjunction-" + c.morphism_name(w), res.ok, res.witness);
  }
  for (int w = 0; w < c.num_morphisms(); ++w) {
    if (!r.in_w(w) || c.is_identity(w)) continue;
    for (int g = 0; g < c.num_morphisms(); ++g) {
      if (c.cod(g) != c.cod(w)) continue;
      const auto& cone = r.pullback(w, g);
      if (!cone) continue;
      CheckResult res = beck_chevalley_check(r, w, g, cone->leg2, cone->leg1);
      report.check("beck-chevalley-" + c.morphism_name(w) + "-" + c.morphism_name(g),
                   res.ok, res.witness);
    }
  }
  emit(report, json_path);
  return report.failed ? kExitCheckFailure : kExitPass;
}

int cmd_sset(const Loaded& input, int dim, const std::string& kind_name,
             const std::string& json_path) {
  Report report("sset", input.digest);
  int bad = guard_input(report, input.doc, json_path);
  if (bad >= 0) return bad;
  HornKind kind = HornKind::Inner;
  if (kind_name == "left") kind = HornKind::Left;
  else if (kind_name == "right") kind = HornKind::Right;
  else if (kind_name == "kan") kind = HornKind::Kan;
  else if (kind_name != "inner") throw ParseError("unknown horn kind: " + kind_name);

  NerveData n = nerve(input.doc.cat, dim);
  auto bad_sset = validate_sset(n.x);
  report.check("nerve-simplicial-identities", bad_sset.empty(),
               bad_sset.empty() ? "" : bad_sset.front().clause);
  TSSet point = terminal_sset(dim);
  SSetMap p = to_terminal(n.x, point);
  HornResult horn = horn_lift_check(p, kind, dim);
  report.check("horn-" + kind_name, horn.ok, horn.witness);

  auto classes = pi0(n.x);
  int nclasses = classes.empty() ? 0 : 1 + *std::max_element(classes.begin(), classes.end());
  report.j["pi0_classes"] = nclasses;
  if (n.x.counts[0] > 0) {
    GroupoidPresentation pres = pi1_presentation(n.x, 0);
    report.j["pi1_rank"] = abelianization_rank(pres);
  }
  emit(report, json_path);
  return report.failed ? kExitCheckFailure : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite relative categories: spans, localization, fibrations"};
  app.require_subcommand(1);

  std::string input, json_path, dot_path, kind = "inner";
  int level = 2, dim = 3, max_word_len = 8, max_iter = 10000;
  long long budget = 100000000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "category document (json)")->required();
    cmd->add_option("--json", json_path, "write the report here instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "category and hypercover axioms");
  add_common(validate);

  CLI::App* span = app.add_subcommand("span", "span levels and the Segal condition");
  add_common(span);
  span->add_option("--level", level, "top simplicial level to build");
  span->add_option("--budget", budget, "search-space budget");
  span->add_option("--emit-dot", dot_path, "write a dot rendering of the level poset");

  CLI::App* localize = app.add_subcommand("localize", "homotopy category two ways");
  add_common(localize);
  localize->add_option("--max-word-len", max_word_len, "zigzag word bound");
  localize->add_option("--max-iter", max_iter, "closure iteration cap");

  CLI::App* bicat = app.add_subcommand("bicat", "adjunctions and base change");
  add_common(bicat);

  CLI::App* sset = app.add_subcommand("sset", "nerve, horn fillers, pi0/pi1");
  add_common(sset);
  sset->add_option("--dim", dim, "truncation dimension");
  sset->add_option("--kind", kind, "horn kind: inner|left|right|kan");

  CLI11_PARSE(app, argc, argv);

  Timer timer;
  try {
    Loaded in = load(input);
    if (validate->parsed()) return cmd_validate(in, json_path);
    if (span->parsed()) return cmd_span(in, level, budget, dot_path, json_path);
    if (localize->parsed()) return cmd_localize(in, max_word_len, max_iter, json_path);
    if (bicat->parsed()) return cmd_bicat(in, json_path);
    if (sset->parsed()) return cmd_sset(in, dim, kind, json_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const DimensionBoundTooLow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitPass;
}
