#pragma once

#include <string>
#include <vector>

#include "toristab/io.hpp"

namespace toristab {

/// Built-in polytope. The document's metadata carries a description, the
/// provenance of the model, and the exact vertex list (computed from the
/// facets at startup, so it can never drift from the geometry).
struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  PolytopeDocument document;
};

/// All built-in polytopes, in a fixed presentation order.
const std::vector<CatalogEntry>& catalog();

/// Lookup by name or alias; null when unknown.
const CatalogEntry* catalog_find(const std::string& name);

/// Builds the polytope of a catalog entry. Throws Error for an unknown
/// name, listing the available entries.
Polytope catalog_polytope(const std::string& name);

}  // namespace toristab
