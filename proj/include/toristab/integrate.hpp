#pragma once

#include <map>
#include <vector>

#include "toristab/geometry.hpp"
#include "toristab/linalg.hpp"
#include "toristab/rational.hpp"

namespace toristab {

/// Which vertex a fan triangulation cones from. Two choices give two
/// genuinely different triangulations on non-simplex polytopes, which the
/// test suite uses to confirm triangulation independence of integrals.
enum class FanBase { LexSmallest, LexLargest };

/// d+1 affinely independent rational points (d = intrinsic dimension,
/// equal to the ambient dimension for the full-dimensional case).
struct Simplex {
  std::vector<QVec> vertices;
};

/// Monomial exponent vector, one entry per coordinate.
using Exponent = std::vector<int>;

std::vector<Exponent> exponents_up_to(int dim, int max_degree);

/// Fan triangulation: cone from the chosen base vertex over a recursive
/// triangulation of each facet not containing it. Exactness: simplex
/// volumes sum to the polytope volume.
std::vector<Simplex> triangulate(const Polytope& p, FanBase base = FanBase::LexSmallest);

/// Lebesgue volume |det(v_i - v_0)| / d! of a full-dimensional simplex.
Rational simplex_volume(const Simplex& s);

/// Exact integral of x^alpha over a full-dimensional simplex.
Rational simplex_moment(const Simplex& s, const Exponent& alpha);

/// Integral of x^alpha over an m-simplex embedded affinely in R^n, against
/// the measure with total mass `measure`. Works in barycentric coordinates,
/// so only the vertex images and the total mass matter. This is how facet
/// integrals against the boundary measure are evaluated: `measure` is then
/// the lattice volume of the facet simplex.
Rational affine_simplex_moment(const std::vector<QVec>& vertices, const Rational& measure,
                               const Exponent& alpha);

/// Interior and per-facet boundary monomial integrals up to degree 2.
/// The boundary measure on a facet is Lebesgue measure in the coordinates
/// of the facet's hyperplane lattice chart.
struct MomentTable {
  int dim = 0;
  std::map<Exponent, Rational> interior;
  std::vector<std::map<Exponent, Rational>> boundary;  // one per facet

  Rational vol;
  Rational sigma_boundary;  // total boundary measure
  QVec barycenter;
  linalg::QMatrix second_moment;  // [i][j] = integral of x_i x_j
};

MomentTable moments(const Polytope& p, FanBase base = FanBase::LexSmallest);

/// Convex piecewise linear function max_k (<a_k, x> + c_k).
struct PLConvexFn {
  std::vector<AffineFn> pieces;

  int dim() const { return pieces.empty() ? 0 : pieces.front().dim(); }
  Rational value(const QVec& x) const;
  int active_piece(const QVec& x) const;  // smallest index attaining the max
};

struct SubdivisionCell {
  Polytope cell;
  int piece = 0;  // index into Subdivision::fn.pieces
};

/// Partition of a polytope into the domains of linearity of a PL function.
/// fn is the cleaned representation: duplicates merged, pieces that fail to
/// attain the max on a full-dimensional set removed.
struct Subdivision {
  PLConvexFn fn;
  std::vector<SubdivisionCell> cells;
};

Subdivision subdivide_by_pl(const Polytope& p, const PLConvexFn& f);

struct PLIntegrals {
  Rational interior;  // integral of f over the polytope
  Rational boundary;  // integral of f over the boundary, against sigma
};

PLIntegrals integral_pl(const Polytope& p, const PLConvexFn& f);
PLIntegrals integral_pl(const Polytope& p, const Subdivision& sub);

/// Volume of { x in P : f(x) <= t }.
Rational sublevel_volume(const Polytope& p, const PLConvexFn& f, const Rational& t);

Rational volume(const Polytope& p);

/// Monomial integrals over a single polytope (used cell by cell).
std::map<Exponent, Rational> interior_moments(const Polytope& p, int max_degree,
                                              FanBase base = FanBase::LexSmallest);

/// Facet triangulation with lattice-normalized measures: (vertex tuple,
/// sigma measure) pairs covering the given facet.
std::vector<std::pair<std::vector<QVec>, Rational>> facet_sigma_simplices(
    const Polytope& p, int facet_index, FanBase base = FanBase::LexSmallest);

/// Integral of f * g over the polytope (g affine), cell by cell.
Rational pl_times_affine_integral(const Subdivision& sub, const AffineFn& g);

/// All cell vertices, deduplicated and sorted. A convex PL function on the
/// polytope attains its minimum on this finite set.
std::vector<QVec> subdivision_vertices(const Subdivision& sub);

}  // namespace toristab
