#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "toristab/catalog.hpp"
#include "toristab/errors.hpp"
#include "toristab/geometry.hpp"
#include "toristab/linalg.hpp"

using namespace toristab;

namespace {

Polytope simplex2() { return catalog_polytope("simplex2"); }
Polytope square01() { return catalog_polytope("square01"); }
Polytope cube2() { return catalog_polytope("cube2"); }
Polytope p2() { return catalog_polytope("p2"); }

// Triangle conv{(0,0),(2,0),(0,1)}: fails the Delzant condition at (0,1).
Polytope det2_triangle() {
  std::vector<HalfSpace> facets;
  facets.push_back({{Int(1), Int(0)}, Rational(0)});
  facets.push_back({{Int(0), Int(1)}, Rational(0)});
  facets.push_back({{Int(-1), Int(-2)}, Rational(2)});
  return make_polytope(2, std::move(facets), "det2");
}

QVec qvec(std::vector<int> entries) {
  QVec v;
  for (int e : entries) v.push_back(Rational(e));
  return v;
}

}  // namespace

TEST_CASE("canonical_halfspace primitivizes the normal") {
  HalfSpace h = canonical_halfspace({Rational(2), Rational(2)}, Rational(2));
  CHECK(h.normal == (ZVec{Int(1), Int(1)}));
  CHECK(h.offset == 1);

  HalfSpace g = canonical_halfspace({Rational(1, 2), Rational(0)}, Rational(3, 4));
  CHECK(g.normal == (ZVec{Int(1), Int(0)}));
  CHECK(g.offset == Rational(3, 2));
}

TEST_CASE("simplex facets enumerate the expected vertices") {
  Polytope p = simplex2();
  REQUIRE(p.vertices.size() == 3);
  CHECK(p.vertices[0] == qvec({0, 0}));
  CHECK(p.vertices[1] == qvec({0, 1}));
  CHECK(p.vertices[2] == qvec({1, 0}));
}

TEST_CASE("unbounded and empty inputs are rejected") {
  std::vector<HalfSpace> quadrant = {{{Int(1), Int(0)}, Rational(0)},
                                     {{Int(0), Int(1)}, Rational(0)}};
  CHECK_THROWS_AS(make_polytope(2, quadrant, "quadrant"), ValidationError);

  std::vector<HalfSpace> empty = {{{Int(1)}, Rational(0)}, {{Int(-1)}, Rational(-1)}};
  CHECK_THROWS_AS(make_polytope(1, empty, "empty"), ValidationError);
}

TEST_CASE("redundant facets are rejected by default and droppable on request") {
  std::vector<HalfSpace> facets = square01().facets;
  facets.push_back({{Int(1), Int(1)}, Rational(5)});  // x + y + 5 >= 0, slack
  CHECK_THROWS_AS(make_polytope(2, facets, "slack"), ValidationError);

  PolytopeOptions drop;
  drop.policy = RedundancyPolicy::Drop;
  Polytope p = make_polytope(2, facets, "slack", drop);
  CHECK(p.facets.size() == 4);
}

TEST_CASE("vertices_from_facets matches the cached vertex list") {
  for (const char* name : {"square01", "p2", "bl2p2", "p3"}) {
    Polytope p = catalog_polytope(name);
    CHECK(vertices_from_facets(p) == p.vertices);
  }
  CHECK(p2().vertices ==
        (std::vector<QVec>{qvec({-1, -1}), qvec({-1, 2}), qvec({2, -1})}));
}

TEST_CASE("every vertex is tight on exactly its active facets") {
  for (const char* name : {"square01", "p2", "bl3p2", "p1xp2"}) {
    Polytope p = catalog_polytope(name);
    for (const QVec& v : p.vertices) {
      std::vector<int> active = p.active_facets(v);
      CHECK(static_cast<int>(active.size()) == p.dim);
      for (std::size_t j = 0; j < p.facets.size(); ++j) {
        Rational slack = p.facets[j].support().value(v);
        CHECK(slack >= 0);
        bool tight = slack == 0;
        bool listed = std::find(active.begin(), active.end(), static_cast<int>(j)) !=
                      active.end();
        CHECK(tight == listed);
      }
    }
  }
}

TEST_CASE("delzant_check accepts the smooth models") {
  CHECK(delzant_check(square01()).delzant);
  CHECK(delzant_check(p2()).delzant);
  for (const CatalogEntry& e : catalog())
    CHECK(delzant_check(document_to_polytope(e.document)).delzant);
}

TEST_CASE("delzant_check pinpoints the non-unimodular vertex") {
  DelzantReport report = delzant_check(det2_triangle());
  CHECK_FALSE(report.delzant);
  int failures = 0;
  for (const VertexDiagnostic& vd : report.vertices) {
    if (vd.simple && vd.unimodular) continue;
    ++failures;
    CHECK(vd.vertex == qvec({0, 1}));
    CHECK(vd.simple);
    CHECK((vd.normal_det == 2 || vd.normal_det == -2));
  }
  CHECK(failures == 1);
}

TEST_CASE("delzant verdict is invariant under unimodular transformations") {
  // x -> Ux turns <n, x> + d >= 0 into <U^-T n, y> + d >= 0.
  auto transform = [](const Polytope& p, const std::vector<std::vector<int>>& uinv_t) {
    std::vector<HalfSpace> facets;
    for (const HalfSpace& h : p.facets) {
      QVec normal(p.dim, Rational(0));
      for (int i = 0; i < p.dim; ++i)
        for (int j = 0; j < p.dim; ++j)
          normal[i] += Rational(uinv_t[i][j]) * Rational(h.normal[j]);
      facets.push_back(canonical_halfspace(normal, h.offset));
    }
    return make_polytope(p.dim, std::move(facets), p.name + "-twisted");
  };

  // U = [[1,1],[0,1]]: U^-T = [[1,0],[-1,1]].
  std::vector<std::vector<int>> shear = {{1, 0}, {-1, 1}};
  CHECK(delzant_check(transform(p2(), shear)).delzant);
  CHECK(delzant_check(transform(cube2(), shear)).delzant);
  CHECK_FALSE(delzant_check(transform(det2_triangle(), shear)).delzant);

  // U = [[2,1],[1,1]]: U^-1 = [[1,-1],[-1,2]], U^-T = [[1,-1],[-1,2]].
  std::vector<std::vector<int>> mixed = {{1, -1}, {-1, 2}};
  CHECK(delzant_check(transform(p2(), mixed)).delzant);
  CHECK_FALSE(delzant_check(transform(det2_triangle(), mixed)).delzant);
}

TEST_CASE("integrality and reflexivity") {
  CHECK(is_integral(square01()));
  CHECK_FALSE(is_reflexive(square01()));  // 0 sits on the boundary
  CHECK(is_reflexive(cube2()));
  CHECK(is_reflexive(p2()));
  CHECK_FALSE(is_reflexive(simplex2()));

  Polytope shifted = recenter(simplex2()).first;
  CHECK_FALSE(is_integral(shifted));
}

TEST_CASE("hyperplane_lattice_basis spans the facet lattice") {
  HalfSpace horizontal{{Int(0), Int(1)}, Rational(0)};
  LatticeBasisMap flat = hyperplane_lattice_basis(horizontal);
  REQUIRE(flat.basis.size() == 1);
  CHECK(flat.basis[0] == (ZVec{Int(1), Int(0)}));

  HalfSpace diag{{Int(-1), Int(-1)}, Rational(1)};
  LatticeBasisMap d = hyperplane_lattice_basis(diag);
  REQUIRE(d.basis.size() == 1);
  CHECK(dot(diag.normal, d.basis[0]) == 0);
  CHECK(linalg::content(d.basis[0]) == 1);
  CHECK(dot(diag.normal, d.anchor) + diag.offset == 0);

  HalfSpace skew{{Int(2), Int(3), Int(5)}, Rational(0)};
  LatticeBasisMap s = hyperplane_lattice_basis(skew);
  REQUIRE(s.basis.size() == 2);
  for (const ZVec& b : s.basis) CHECK(dot(skew.normal, b) == 0);
  // The basis must extend to a unimodular matrix together with any integer
  // vector pairing to 1 against the normal.
  ZVec v = {Int(-1), Int(1), Int(0)};
  REQUIRE(dot(skew.normal, v) == 1);
  linalg::QMatrix m;
  for (const ZVec& b : s.basis) {
    QVec row;
    for (const Int& c : b) row.push_back(Rational(c));
    m.push_back(row);
  }
  QVec last;
  for (const Int& c : v) last.push_back(Rational(c));
  m.push_back(last);
  Rational det = linalg::determinant(m);
  CHECK((det == 1 || det == -1));
}

TEST_CASE("facet bases of catalog polytopes complete unimodularly") {
  for (const char* name : {"p2", "bl3p2", "p3", "p1xp2"}) {
    Polytope p = catalog_polytope(name);
    for (const HalfSpace& h : p.facets) {
      LatticeBasisMap map = hyperplane_lattice_basis(h);
      REQUIRE(static_cast<int>(map.basis.size()) == p.dim - 1);
      for (const ZVec& b : map.basis) CHECK(dot(h.normal, b) == 0);
      CHECK(dot(h.normal, map.anchor) + h.offset == 0);

      std::vector<ZVec> cols = linalg::unimodular_complement(h.normal);
      linalg::QMatrix m;
      for (const ZVec& b : map.basis) {
        QVec row;
        for (const Int& c : b) row.push_back(Rational(c));
        m.push_back(row);
      }
      QVec last;
      for (const Int& c : cols.back()) last.push_back(Rational(c));
      m.push_back(last);
      Rational det = linalg::determinant(m);
      CHECK((det == 1 || det == -1));
    }
  }
}

TEST_CASE("best_interior_point optimizes the largest facet support") {
  auto [c01, d01] = best_interior_point(square01());
  CHECK(c01 == (QVec{Rational(1, 2), Rational(1, 2)}));
  CHECK(d01 == Rational(1, 2));

  auto [cc, dc] = best_interior_point(cube2());
  CHECK(cc == (QVec{Rational(0), Rational(0)}));
  CHECK(dc == 1);

  auto [cp, dp] = best_interior_point(p2());
  CHECK(cp == (QVec{Rational(0), Rational(0)}));
  CHECK(dp == 1);
}

TEST_CASE("best_interior_point value is positive and no point beats it") {
  auto rng = testing::make_rng(77);
  for (const CatalogEntry& e : catalog()) {
    Polytope p = document_to_polytope(e.document);
    auto [x0, d] = best_interior_point(p);
    CHECK(d > 0);
    Rational attained = 0;
    bool first = true;
    for (const HalfSpace& h : p.facets) {
      Rational s = h.support().value(x0);
      if (first || s > attained) attained = s;
      first = false;
    }
    CHECK(attained == d);
    // Random convex combinations of vertices never achieve a smaller max.
    for (int trial = 0; trial < 5; ++trial) {
      QVec probe(p.dim, Rational(0));
      Rational total = 0;
      for (const QVec& v : p.vertices) {
        Rational w = Rational(std::uniform_int_distribution<int>(0, 4)(rng));
        total += w;
        for (int i = 0; i < p.dim; ++i) probe[i] += w * v[i];
      }
      if (total == 0) continue;
      for (int i = 0; i < p.dim; ++i) probe[i] /= total;
      Rational probe_max = p.facets.front().support().value(probe);
      for (const HalfSpace& h : p.facets)
        probe_max = std::max(probe_max, h.support().value(probe));
      CHECK(probe_max >= d);
    }
  }
}

TEST_CASE("recenter moves the barycenter to the origin") {
  auto [sq, tsq] = recenter(square01());
  CHECK(tsq == (QVec{Rational(-1, 2), Rational(-1, 2)}));
  CHECK(sq.vertices.front() == (QVec{Rational(-1, 2), Rational(-1, 2)}));
  CHECK(sq.vertices.back() == (QVec{Rational(1, 2), Rational(1, 2)}));

  auto [sim, tsim] = recenter(simplex2());
  CHECK(tsim == (QVec{Rational(-1, 3), Rational(-1, 3)}));

  auto [cc, tcc] = recenter(cube2());
  CHECK(tcc == (QVec{Rational(0), Rational(0)}));
  CHECK(cc.facets == cube2().facets);
}

TEST_CASE("containment predicates") {
  Polytope p = p2();
  CHECK(p.contains(qvec({0, 0})));
  CHECK(p.strictly_contains(qvec({0, 0})));
  CHECK(p.contains(qvec({-1, -1})));
  CHECK_FALSE(p.strictly_contains(qvec({-1, -1})));
  CHECK_FALSE(p.contains(qvec({2, 2})));
}
