#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "toristab/catalog.hpp"
#include "toristab/functionals.hpp"
#include "toristab/integrate.hpp"

using namespace toristab;

namespace {

Exponent unit(int dim, int i) {
  Exponent e(dim, 0);
  e[i] = 1;
  return e;
}

PLConvexFn max0x(int dim) {
  PLConvexFn f;
  f.pieces.push_back(AffineFn::zero(dim));
  QVec ex(dim, Rational(0));
  ex[0] = 1;
  f.pieces.push_back(AffineFn(ex, Rational(0)));
  return f;
}

Simplex standard2() {
  return Simplex{{QVec{Rational(0), Rational(0)}, QVec{Rational(1), Rational(0)},
                  QVec{Rational(0), Rational(1)}}};
}

}  // namespace

TEST_CASE("triangulate the unit square into two triangles") {
  Polytope sq = catalog_polytope("square01");
  std::vector<Simplex> tri = triangulate(sq);
  REQUIRE(tri.size() == 2);
  Rational total = 0;
  for (const Simplex& s : tri) {
    CHECK(simplex_volume(s) == Rational(1, 2));
    total += simplex_volume(s);
  }
  CHECK(total == 1);
}

TEST_CASE("a simplex triangulates to itself") {
  std::vector<Simplex> tri = triangulate(catalog_polytope("simplex2"));
  REQUIRE(tri.size() == 1);
  CHECK(simplex_volume(tri[0]) == Rational(1, 2));
}

TEST_CASE("the hexagon triangulates into four triangles of total area 3") {
  std::vector<Simplex> tri = triangulate(catalog_polytope("bl3p2"));
  REQUIRE(tri.size() == 4);
  Rational total = 0;
  for (const Simplex& s : tri) total += simplex_volume(s);
  CHECK(total == 3);
}

TEST_CASE("simplex moments over the standard 2-simplex") {
  Simplex s = standard2();
  CHECK(simplex_moment(s, {0, 0}) == Rational(1, 2));
  CHECK(simplex_moment(s, {1, 0}) == Rational(1, 6));
  CHECK(simplex_moment(s, {1, 1}) == Rational(1, 24));
  CHECK(simplex_moment(s, {2, 0}) == Rational(1, 12));
}

TEST_CASE("moment tables of the reference polytopes") {
  MomentTable sq = moments(catalog_polytope("square01"));
  CHECK(sq.vol == 1);
  CHECK(sq.sigma_boundary == 4);
  CHECK(sq.barycenter == (QVec{Rational(1, 2), Rational(1, 2)}));

  MomentTable sim = moments(catalog_polytope("simplex2"));
  CHECK(sim.vol == Rational(1, 2));
  CHECK(sim.sigma_boundary == 3);  // the hypotenuse has lattice length 1

  MomentTable p2 = moments(catalog_polytope("p2"));
  CHECK(p2.vol == Rational(9, 2));
  CHECK(p2.sigma_boundary == 9);
  CHECK(p2.barycenter == (QVec{Rational(0), Rational(0)}));
}

TEST_CASE("second moment matrix is symmetric") {
  for (const char* name : {"p2", "bl1p2", "p1xp2"}) {
    MomentTable mt = moments(catalog_polytope(name));
    for (int i = 0; i < mt.dim; ++i)
      for (int j = 0; j < mt.dim; ++j)
        CHECK(mt.second_moment[i][j] == mt.second_moment[j][i]);
  }
}

TEST_CASE("subdivision by PL functions") {
  Polytope cube = catalog_polytope("cube2");

  PLConvexFn affine;
  affine.pieces.push_back(AffineFn({Rational(1), Rational(2)}, Rational(3)));
  CHECK(subdivide_by_pl(cube, affine).cells.size() == 1);

  Subdivision two = subdivide_by_pl(cube, max0x(2));
  CHECK(two.cells.size() == 2);
  Rational vol_sum = 0;
  for (const SubdivisionCell& cell : two.cells) vol_sum += volume(cell.cell);
  CHECK(vol_sum == 4);

  PLConvexFn three = max0x(2);
  three.pieces.push_back(AffineFn({Rational(0), Rational(1)}, Rational(0)));
  Subdivision sub3 = subdivide_by_pl(cube, three);
  CHECK(sub3.cells.size() == 3);
  CHECK(sub3.fn.pieces.size() == 3);

  PLConvexFn redundant = max0x(2);
  redundant.pieces.push_back(AffineFn({Rational(1), Rational(0)}, Rational(-5)));
  Subdivision cleaned = subdivide_by_pl(cube, redundant);
  CHECK(cleaned.fn.pieces.size() == 2);
  CHECK(cleaned.cells.size() == 2);
}

TEST_CASE("integral_pl on the reference examples") {
  Polytope cube = catalog_polytope("cube2");
  PLIntegrals crease = integral_pl(cube, max0x(2));
  CHECK(crease.interior == 1);
  CHECK(crease.boundary == 3);

  PLConvexFn one;
  one.pieces.push_back(AffineFn({Rational(0), Rational(0)}, Rational(1)));
  for (const char* name : {"square01", "p2", "bl3p2", "p3"}) {
    Polytope p = catalog_polytope(name);
    MomentTable mt = moments(p);
    PLConvexFn c = one;
    if (p.dim == 3) c.pieces[0] = AffineFn(QVec(3, Rational(0)), Rational(1));
    PLIntegrals ints = integral_pl(p, c);
    CHECK(ints.interior == mt.vol);
    CHECK(ints.boundary == mt.sigma_boundary);
  }

  Polytope sim = catalog_polytope("simplex2");
  PLConvexFn x;
  x.pieces.push_back(AffineFn({Rational(1), Rational(0)}, Rational(0)));
  PLIntegrals xi = integral_pl(sim, x);
  CHECK(xi.interior == Rational(1, 6));
  CHECK(xi.boundary == 1);
}

TEST_CASE("sublevel volumes of the crease on the centered square") {
  Polytope cube = catalog_polytope("cube2");
  PLConvexFn f = max0x(2);
  CHECK(sublevel_volume(cube, f, Rational(2)) == 4);
  CHECK(sublevel_volume(cube, f, Rational(1)) == 4);
  CHECK(sublevel_volume(cube, f, Rational(-1, 100)) == 0);
  CHECK(sublevel_volume(cube, f, Rational(1, 2)) == 3);
  CHECK(sublevel_volume(cube, f, Rational(0)) == 2);

  Rational prev = -1;
  for (int k = -3; k <= 5; ++k) {
    Rational v = sublevel_volume(cube, f, Rational(k, 4));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("triangulation independence of full moment tables") {
  for (const CatalogEntry& e : catalog()) {
    Polytope p = document_to_polytope(e.document);
    MomentTable a = moments(p, FanBase::LexSmallest);
    MomentTable b = moments(p, FanBase::LexLargest);
    CHECK(a.vol == b.vol);
    CHECK(a.sigma_boundary == b.sigma_boundary);
    CHECK(a.barycenter == b.barycenter);
    CHECK(a.interior == b.interior);
    CHECK(a.boundary == b.boundary);
    CHECK(a.second_moment == b.second_moment);
  }
}

TEST_CASE("subdivision cell volumes add up") {
  auto rng = testing::make_rng(42);
  for (const char* name : {"cube2", "p2", "bl2p2", "p1xp2"}) {
    Polytope p = catalog_polytope(name);
    Rational vol = volume(p);
    for (int trial = 0; trial < 10; ++trial) {
      PLConvexFn f = testing::random_pl(rng, p.dim);
      Subdivision sub = subdivide_by_pl(p, f);
      Rational total = 0;
      for (const SubdivisionCell& cell : sub.cells) total += volume(cell.cell);
      CHECK(total == vol);
    }
  }
}

TEST_CASE("adding an affine function shifts integrals by moment contractions") {
  auto rng = testing::make_rng(4242);
  for (const char* name : {"cube2", "p2", "bl1p2"}) {
    Polytope p = catalog_polytope(name);
    MomentTable mt = moments(p);
    for (int trial = 0; trial < 10; ++trial) {
      PLConvexFn f = testing::random_pl(rng, p.dim);
      AffineFn ell = testing::random_affine(rng, p.dim);

      PLConvexFn shifted = f;
      for (AffineFn& piece : shifted.pieces) piece = piece + ell;

      Rational interior_ell = ell.constant * mt.vol;
      Rational boundary_ell = ell.constant * mt.sigma_boundary;
      for (int i = 0; i < p.dim; ++i) {
        interior_ell += ell.linear[i] * mt.interior.at(unit(p.dim, i));
        for (const auto& facet : mt.boundary)
          boundary_ell += ell.linear[i] * facet.at(unit(p.dim, i));
      }

      PLIntegrals base = integral_pl(p, f);
      PLIntegrals moved = integral_pl(p, shifted);
      CHECK(moved.interior == base.interior + interior_ell);
      CHECK(moved.boundary == base.boundary + boundary_ell);
    }
  }
}

TEST_CASE("interior integral bound against the boundary integral") {
  auto rng = testing::make_rng(90210);
  for (const char* name : {"square01", "cube2", "p2", "bl2p2"}) {
    Polytope p = catalog_polytope(name);
    auto [x0, d] = best_interior_point(p);
    Rational factor = d / (p.dim + 1);
    for (int trial = 0; trial < 20; ++trial) {
      PLConvexFn f = normalize_pl(p, testing::random_pl(rng, p.dim), x0);
      PLIntegrals ints = integral_pl(p, f);
      CHECK(ints.interior >= 0);
      CHECK(ints.interior <= factor * ints.boundary);
    }
  }
}
