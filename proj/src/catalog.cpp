#include "toristab/catalog.hpp"

#include <sstream>

#include "toristab/errors.hpp"

namespace toristab {
namespace {

using FacetSpec = std::pair<std::vector<long long>, long long>;

CatalogEntry entry(std::string name, std::vector<std::string> aliases,
                   std::string description, std::string provenance,
                   std::vector<FacetSpec> facets) {
  PolytopeDocument doc;
  doc.name = name;
  doc.dim = static_cast<int>(facets.front().first.size());
  for (const auto& [normal, offset] : facets) {
    FacetDocument fd;
    for (long long c : normal) fd.normal.push_back(Int(c));
    fd.offset = Rational(offset);
    doc.facets.push_back(std::move(fd));
  }

  // The recorded vertex list is derived from the facets, never typed in.
  Polytope p = document_to_polytope(doc);
  std::string vertices;
  for (const QVec& v : p.vertices) {
    if (!vertices.empty()) vertices += ", ";
    vertices += format_vector(v);
  }

  doc.metadata.emplace_back("description", std::move(description));
  doc.metadata.emplace_back("provenance", std::move(provenance));
  doc.metadata.emplace_back("vertices", std::move(vertices));
  return CatalogEntry{std::move(name), std::move(aliases), std::move(doc)};
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  entries.push_back(entry(
      "simplex1", {}, "standard 1-simplex, the unit segment [0,1]",
      "textbook lattice simplex", {{{1}, 0}, {{-1}, 1}}));
  entries.push_back(entry(
      "simplex2", {}, "standard 2-simplex conv{0, e1, e2}",
      "textbook lattice simplex",
      {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 1}}));
  entries.push_back(entry(
      "simplex3", {}, "standard 3-simplex conv{0, e1, e2, e3}",
      "textbook lattice simplex",
      {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{-1, -1, -1}, 1}}));

  entries.push_back(entry(
      "square01", {}, "unit square [0,1]^2", "textbook lattice square",
      {{{1, 0}, 0}, {{-1, 0}, 1}, {{0, 1}, 0}, {{0, -1}, 1}}));

  entries.push_back(entry(
      "cube1", {}, "centered segment [-1,1]",
      "anticanonical polytope of the projective line",
      {{{1}, 1}, {{-1}, 1}}));
  entries.push_back(entry(
      "cube2", {}, "centered square [-1,1]^2",
      "product of two copies of the reflexive segment",
      {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}));
  entries.push_back(entry(
      "cube3", {}, "centered cube [-1,1]^3",
      "product of three copies of the reflexive segment",
      {{{1, 0, 0}, 1},
       {{-1, 0, 0}, 1},
       {{0, 1, 0}, 1},
       {{0, -1, 0}, 1},
       {{0, 0, 1}, 1},
       {{0, 0, -1}, 1}}));

  entries.push_back(entry(
      "p2", {"delpezzo-p2"}, "reflexive triangle, smooth del Pezzo polygon",
      "anticanonical polytope of the projective plane",
      {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}}));
  entries.push_back(entry(
      "p1xp1", {"delpezzo-p1xp1"}, "reflexive square, smooth del Pezzo polygon",
      "anticanonical polytope of P1 x P1",
      {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}));
  entries.push_back(entry(
      "bl1p2", {"delpezzo-bl1p2"},
      "reflexive quadrilateral, smooth del Pezzo polygon",
      "anticanonical polytope of the blow-up of P2 at one torus-fixed point",
      {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{-1, -1}, 1}}));
  entries.push_back(entry(
      "bl2p2", {"delpezzo-bl2p2"}, "reflexive pentagon, smooth del Pezzo polygon",
      "anticanonical polytope of the blow-up of P2 at two torus-fixed points",
      {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{-1, -1}, 1}}));
  entries.push_back(entry(
      "bl3p2", {"delpezzo-bl3p2"}, "reflexive hexagon, smooth del Pezzo polygon",
      "anticanonical polytope of the blow-up of P2 at three torus-fixed points",
      {{{1, 0}, 1},
       {{0, 1}, 1},
       {{-1, 0}, 1},
       {{0, -1}, 1},
       {{1, -1}, 1},
       {{-1, 1}, 1}}));

  entries.push_back(entry(
      "p3", {}, "reflexive 3-simplex",
      "anticanonical polytope of projective 3-space",
      {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{-1, -1, -1}, 1}}));
  entries.push_back(entry(
      "p1xp2", {}, "reflexive prism over the anticanonical triangle",
      "anticanonical polytope of P1 x P2",
      {{{1, 0, 0}, 1},
       {{-1, 0, 0}, 1},
       {{0, 1, 0}, 1},
       {{0, 0, 1}, 1},
       {{0, -1, -1}, 1}}));
  entries.push_back(entry(
      "p1cubed", {}, "centered cube [-1,1]^3",
      "anticanonical polytope of P1 x P1 x P1",
      {{{1, 0, 0}, 1},
       {{-1, 0, 0}, 1},
       {{0, 1, 0}, 1},
       {{0, -1, 0}, 1},
       {{0, 0, 1}, 1},
       {{0, 0, -1}, 1}}));

  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return &e;
    for (const std::string& alias : e.aliases)
      if (alias == name) return &e;
  }
  return nullptr;
}

Polytope catalog_polytope(const std::string& name) {
  const CatalogEntry* e = catalog_find(name);
  if (e == nullptr) {
    std::ostringstream msg;
    msg << "unknown catalog entry \"" << name << "\"; available:";
    for (const CatalogEntry& known : catalog()) msg << " " << known.name;
    throw Error(msg.str());
  }
  return document_to_polytope(e->document);
}

}  // namespace toristab
