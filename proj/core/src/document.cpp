#include "spanloc/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace spanloc {

namespace {

using nlohmann::ordered_json;

std::string require_string(const ordered_json& j, const char* where) {
  if (!j.is_string()) throw ParseError(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

const ordered_json& require_array(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("document: missing or non-array field '") + key + "'");
  return j[key];
}

bool reserved(const std::string& name) { return name.rfind("id_", 0) == 0; }

int object_of(const FinCategory& c, const std::string& name, const char* where) {
  int o = c.object_index(name);
  if (o < 0) throw ParseError(std::string(where) + ": unknown object '" + name + "'");
  return o;
}

int morphism_of(const FinCategory& c, const std::string& name, const char* where) {
  int m = c.morphism_index(name);
  if (m < 0) throw ParseError(std::string(where) + ": unknown morphism '" + name + "'");
  return m;
}

}  // namespace

CategoryDocument parse_document(const ordered_json& j) {
  if (!j.is_object()) throw ParseError("document: top level must be an object");
  CategoryDocument doc;
  std::set<std::string> seen;

  for (const auto& o : require_array(j, "objects")) {
    std::string name = require_string(o, "objects");
    if (!seen.insert(name).second)
      throw ParseError("objects: duplicate name '" + name + "'");
    doc.cat.add_object(name);
  }

  seen.clear();
  for (const auto& m : require_array(j, "morphisms")) {
    if (!m.is_object() || !m.contains("name") || !m.contains("dom") || !m.contains("cod"))
      throw ParseError("morphisms: entries need {name, dom, cod}");
    std::string name = require_string(m["name"], "morphisms.name");
    if (reserved(name))
      throw ParseError("morphisms: '" + name + "' uses the reserved id_ prefix");
    if (!seen.insert(name).second)
      throw ParseError("morphisms: duplicate name '" + name + "'");
    doc.cat.add_morphism(name, object_of(doc.cat, require_string(m["dom"], "morphisms.dom"), "morphisms.dom"),
                         object_of(doc.cat, require_string(m["cod"], "morphisms.cod"), "morphisms.cod"));
  }

  if (j.contains("composition")) {
    for (const auto& e : require_array(j, "composition")) {
      if (!e.is_object() || !e.contains("after") || !e.contains("then") || !e.contains("equals"))
        throw ParseError("composition: entries need {after, then, equals}");
      int g = morphism_of(doc.cat, require_string(e["after"], "composition.after"), "composition");
      int f = morphism_of(doc.cat, require_string(e["then"], "composition.then"), "composition");
      int gf = morphism_of(doc.cat, require_string(e["equals"], "composition.equals"), "composition");
      if (doc.cat.cod(f) != doc.cat.dom(g))
        throw ParseError("composition: '" + doc.cat.morphism_name(g) + " after " +
                         doc.cat.morphism_name(f) + "' is not composable");
      doc.cat.set_composite(g, f, gf);
    }
  }

  if (j.contains("hypercovers")) {
    for (const auto& w : require_array(j, "hypercovers")) {
      int m = morphism_of(doc.cat, require_string(w, "hypercovers"), "hypercovers");
      doc.hypercovers.push_back(m);
    }
  }

  if (j.contains("metadata")) {
    const auto& meta = j["metadata"];
    if (!meta.is_object()) throw ParseError("metadata: expected an object");
    if (meta.contains("name")) doc.name = require_string(meta["name"], "metadata.name");
    if (meta.contains("description"))
      doc.description = require_string(meta["description"], "metadata.description");
  }

  doc.cat.finalize();
  return doc;
}

CategoryDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  return parse_document(j);
}

nlohmann::ordered_json serialize_document(const CategoryDocument& doc) {
  const FinCategory& c = doc.cat;
  ordered_json j;
  j["objects"] = ordered_json::array();
  for (int o = 0; o < c.num_objects(); ++o) j["objects"].push_back(c.object_name(o));
  j["morphisms"] = ordered_json::array();
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    j["morphisms"].push_back({{"name", c.morphism_name(m)},
                              {"dom", c.object_name(c.dom(m))},
                              {"cod", c.object_name(c.cod(m))}});
  }
  j["composition"] = ordered_json::array();
  for (int g = 0; g < c.num_morphisms(); ++g) {
    if (c.is_identity(g)) continue;
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (c.is_identity(f) || c.cod(f) != c.dom(g)) continue;
      int gf = c.compose(g, f);
      if (gf < 0) continue;
      j["composition"].push_back({{"after", c.morphism_name(g)},
                                  {"then", c.morphism_name(f)},
                                  {"equals", c.morphism_name(gf)}});
    }
  }
  std::vector<std::string> ws;
  for (int m : doc.hypercovers)
    if (!c.is_identity(m)) ws.push_back(c.morphism_name(m));
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  j["hypercovers"] = ws;
  if (!doc.name.empty() || !doc.description.empty()) {
    ordered_json meta = ordered_json::object();
    if (!doc.name.empty()) meta["name"] = doc.name;
    if (!doc.description.empty()) meta["description"] = doc.description;
    j["metadata"] = meta;
  }
  return j;
}

std::string fnv1a_digest(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace spanloc
