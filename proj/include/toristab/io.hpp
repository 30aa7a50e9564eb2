#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toristab/geometry.hpp"
#include "toristab/integrate.hpp"

namespace toristab {

/// One facet record as it appears on disk: integer normal entries and a
/// rational offset. Shape-checked only; geometry is validated later.
struct FacetDocument {
  ZVec normal;
  Rational offset;
};

/// In-memory form of a polytope file.
struct PolytopeDocument {
  std::string name;
  int dim = 0;
  std::vector<FacetDocument> facets;
  /// Optional free-form string fields, serialized in this order.
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Parses the JSON polytope document. Offsets accept "p/q" strings or
/// plain integers. Malformed input raises ParseError; syntax errors carry
/// the 1-based line and column.
PolytopeDocument parse_polytope_document(const std::string& text);

std::string serialize_polytope_document(const PolytopeDocument& doc);

/// Builds the polytope from a document: primitivizes normals (scaling the
/// offsets accordingly), enumerates vertices, and rejects unbounded,
/// lower-dimensional or redundant input.
Polytope document_to_polytope(const PolytopeDocument& doc);

/// parse_polytope_document followed by document_to_polytope.
Polytope parse_polytope(const std::string& text);

/// Canonical document for an already-built polytope: primitive integer
/// normals, offsets as canonical rational strings, no metadata. Parsing
/// the result reproduces the polytope exactly, and serializing the parse
/// is byte-identical.
std::string serialize_polytope(const Polytope& p);

/// Parses {"pieces":[{"a":[rational...],"c":rational}...]}. Every piece
/// must have the same arity; the list must be nonempty.
PLConvexFn parse_pl_function(const std::string& text);

std::string serialize_pl_function(const PLConvexFn& f);

/// Whole-file read. Throws Error naming the path when the file cannot be
/// opened or read.
std::string read_text_file(const std::string& path);

}  // namespace toristab
