#pragma once

#include <string>

#include "spanloc/document.hpp"

namespace testsupport {

inline spanloc::CategoryDocument fixture(const std::string& name) {
  return spanloc::load_document(std::string(FIXTURES_DIR) + "/" + name + ".json");
}

}  // namespace testsupport
