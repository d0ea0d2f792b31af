#pragma once

#include <string>

#include "json.hpp"
#include "spanloc/relcat.hpp"

namespace spanloc {

/// On-disk description of a relative category. Identities are implicit: the
/// reserved names id_<object> are rejected on input and omitted on output.
struct CategoryDocument {
  FinCategory cat;  // finalized
  std::vector<int> hypercovers;  // nonidentity members of W
  std::string name;
  std::string description;

  RelativeCategory relative() const { return RelativeCategory(cat, hypercovers); }
};

/// Parses the schema {objects, morphisms, composition, hypercovers, metadata}.
/// Throws ParseError on structural problems (unknown names, reserved id_
/// names, duplicates, non-composable composition entries); categorical axiom
/// failures are left for the validators.
CategoryDocument parse_document(const nlohmann::ordered_json& j);

CategoryDocument load_document(const std::string& path);

/// Normal form: morphisms and composition entries in stored order, identities
/// omitted, hypercovers sorted by name. Idempotent after one round trip.
nlohmann::ordered_json serialize_document(const CategoryDocument& doc);

/// FNV-1a over the raw input bytes, hex-encoded; reports key inputs by it.
std::string fnv1a_digest(const std::string& bytes);

}  // namespace spanloc
