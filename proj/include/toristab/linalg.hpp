#pragma once

#include <optional>
#include <vector>

#include "toristab/rational.hpp"

namespace toristab::linalg {

using QMatrix = std::vector<QVec>;

/// Exact Gaussian elimination. Returns the unique solution of A x = b,
/// or nullopt when A is singular. A must be square.
std::optional<QVec> solve(QMatrix a, QVec b);

Rational determinant(QMatrix a);

int rank(QMatrix a);

/// Dimension of the affine hull of a point set (-1 for an empty set).
int affine_rank(const std::vector<QVec>& points);

std::optional<QMatrix> inverse(const QMatrix& a);

/// Symmetric positive definite solve by elimination without pivoting.
/// Returns (solution, pivots); nullopt when a pivot fails to be positive,
/// which means the matrix is not positive definite.
std::optional<std::pair<QVec, QVec>> solve_spd(QMatrix a, QVec b);

/// For a primitive integer row vector r of length n, returns an n x n
/// unimodular matrix U (as columns) with r * U = (0, ..., 0, 1).
/// The first n-1 columns are a lattice basis of { u in Z^n : <r,u> = 0 }
/// and the last column v satisfies <r,v> = 1.
std::vector<ZVec> unimodular_complement(const ZVec& row);

Int content(const ZVec& v);  // gcd of the entries, 0 for the zero vector

}  // namespace toristab::linalg
