#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toristab/rational.hpp"

namespace toristab {

/// x |-> <linear, x> + constant.
struct AffineFn {
  QVec linear;
  Rational constant = 0;

  AffineFn() = default;
  AffineFn(QVec linear_, Rational constant_)
      : linear(std::move(linear_)), constant(std::move(constant_)) {}

  static AffineFn zero(int dim) { return AffineFn(QVec(dim, Rational(0)), Rational(0)); }

  int dim() const { return static_cast<int>(linear.size()); }
  Rational value(const QVec& x) const { return dot(linear, x) + constant; }
  bool is_constant() const;
  bool is_zero() const;

  AffineFn operator+(const AffineFn& other) const;
  AffineFn operator-() const;
  AffineFn scaled(const Rational& factor) const;
  bool operator==(const AffineFn& other) const = default;

  std::string to_string() const;  // e.g. "2*x1 - 1/3*x2 + 5"
};

/// Closed half-space { x : <normal, x> + offset >= 0 } with primitive
/// integer normal. The boundary hyperplane carries the facet of a polytope
/// whose facet list contains it.
struct HalfSpace {
  ZVec normal;
  Rational offset = 0;

  bool operator==(const HalfSpace& other) const = default;

  AffineFn support() const;  // the defining affine function
  std::string to_string() const;
};

/// Rescales <normal, x> + offset >= 0 so the normal is primitive integer.
/// The normal must be nonzero.
HalfSpace canonical_halfspace(const QVec& normal, const Rational& offset);

/// Full-dimensional bounded polytope in facet representation, with the
/// vertex list enumerated exactly and sorted lexicographically.
///
/// Invariants, enforced on construction:
///   - every facet normal is primitive integer and no two facets coincide;
///   - the polytope is bounded with nonempty interior;
///   - every half-space in the list is tight on an (n-1)-dimensional face;
///   - every vertex is the unique solution of its active facet equations.
struct Polytope {
  int dim = 0;
  std::vector<HalfSpace> facets;
  std::vector<QVec> vertices;
  std::string name;

  /// Indices of facets tight at the given vertex.
  std::vector<int> active_facets(const QVec& vertex) const;
  bool contains(const QVec& point) const;
  bool strictly_contains(const QVec& point) const;
};

enum class RedundancyPolicy {
  Reject,  // redundant or duplicate facets are an input error
  Drop,    // silently remove them (used for internally built cells)
};

struct PolytopeOptions {
  RedundancyPolicy policy = RedundancyPolicy::Reject;
  /// Skip the LP boundedness probe. Safe whenever the half-space list
  /// contains the facets of a polytope already known to be bounded.
  bool assume_bounded = false;
};

/// Validates and builds a Polytope. Throws ValidationError per the policy.
Polytope make_polytope(int dim, std::vector<HalfSpace> facets, std::string name,
                       const PolytopeOptions& options = {});

/// Like make_polytope with RedundancyPolicy::Drop, but returns nullopt for
/// an empty or lower-dimensional intersection instead of throwing.
std::optional<Polytope> try_make_cell(int dim, std::vector<HalfSpace> facets,
                                      std::string name);

/// Exhaustive exact vertex enumeration from the facet list, sorted
/// lexicographically. (Re)computes rather than returning the cached list.
std::vector<QVec> vertices_from_facets(const Polytope& p);

struct VertexDiagnostic {
  QVec vertex;
  std::vector<int> active;  // facet indices tight at the vertex
  bool simple = false;      // exactly dim facets active
  Int normal_det = 0;       // determinant of the active normal matrix (when simple)
  bool unimodular = false;
};

struct DelzantReport {
  bool delzant = false;
  std::vector<VertexDiagnostic> vertices;
};

/// A vertex passes when exactly n facets are active and their normals form
/// a matrix of determinant +/-1. The polytope is Delzant when all pass.
DelzantReport delzant_check(const Polytope& p);

bool is_integral(const Polytope& p);

/// Integral, contains 0 in the interior, and every facet offset equals 1.
bool is_reflexive(const Polytope& p);

/// Affine chart of a facet hyperplane H = { x : <normal, x> + offset = 0 }:
/// x = anchor + sum_i t_i basis[i] identifies H with R^(n-1) so that the
/// induced lattice Z^n  intersect  (H - anchor) becomes Z^(n-1). Lebesgue
/// measure in the t coordinates is the boundary measure this library uses.
struct LatticeBasisMap {
  ZVec normal;
  std::vector<ZVec> basis;  // n-1 lattice vectors spanning the normal's kernel
  QVec anchor;              // a rational point on the hyperplane
  std::vector<QVec> inverse_rows;  // n rows mapping x - anchor to coordinates

  /// Coordinates of a point lying on the hyperplane (first n-1 entries of
  /// the inverse image; the last entry vanishes on the hyperplane).
  QVec coordinates(const QVec& x) const;
};

LatticeBasisMap hyperplane_lattice_basis(const HalfSpace& h);

/// Minimizer of x |-> max_j (<normal_j, x> + offset_j) over the polytope,
/// with ties broken by the lexicographically smallest optimal point.
/// Returns (point, optimal value); the value is strictly positive.
std::pair<QVec, Rational> best_interior_point(const Polytope& p);

/// Translates the polytope so its barycenter moves to the origin.
/// Returns the translated polytope and the translation vector applied.
std::pair<Polytope, QVec> recenter(const Polytope& p);

}  // namespace toristab
