#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcf/qpoly.hpp"

namespace qcf {

struct CatalogEntry {
  std::string name;
  FamilySpec fam;
  std::string notes;
};

// rr, s1, s2, s3, gg, eo1, eo2.
const std::vector<std::string>& catalog_names();

// Throws UnknownNameError.
CatalogEntry catalog_get(std::string_view name);

}  // namespace qcf
