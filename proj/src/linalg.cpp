#include "toristab/linalg.hpp"

#include <cassert>
#include <cstdlib>

namespace toristab::linalg {

namespace {

// Row echelon elimination in place; returns (rank, det of the leading square
// part when square, else 0). Pivoting is restricted to the first pivot_cols
// columns so augmented systems cannot pivot inside their right-hand block.
// Picking the first nonzero pivot keeps everything deterministic.
std::pair<int, Rational> echelon(QMatrix& m, int pivot_cols = -1) {
  const int rows = static_cast<int>(m.size());
  const int width = rows ? static_cast<int>(m[0].size()) : 0;
  const int cols = pivot_cols >= 0 ? pivot_cols : width;
  Rational det = 1;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      det = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      det = -det;
    }
    det *= m[rank][col];
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      Rational factor = m[r][col] / m[rank][col];
      for (int c = col; c < width; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  if (rank < rows) det = 0;
  return {rank, det};
}

}  // namespace

std::optional<QVec> solve(QMatrix a, QVec b) {
  const int n = static_cast<int>(a.size());
  assert(static_cast<int>(b.size()) == n);
  for (int i = 0; i < n; ++i) {
    assert(static_cast<int>(a[i].size()) == n);
    a[i].push_back(b[i]);
  }
  auto [rank, det] = echelon(a, n);
  (void)det;
  if (rank < n) return std::nullopt;
  QVec x(n, Rational(0));
  for (int i = n - 1; i >= 0; --i) {
    Rational s = a[i][n];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

Rational determinant(QMatrix a) {
  if (a.empty()) return 1;
  auto [rank, det] = echelon(a);
  (void)rank;
  return det;
}

int rank(QMatrix a) {
  if (a.empty()) return 0;
  return echelon(a).first;
}

int affine_rank(const std::vector<QVec>& points) {
  if (points.empty()) return -1;
  QMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    QVec d(points[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  const int n = static_cast<int>(a.size());
  QMatrix aug = a;
  for (int i = 0; i < n; ++i) {
    assert(static_cast<int>(a[i].size()) == n);
    for (int j = 0; j < n; ++j) aug[i].push_back(i == j ? Rational(1) : Rational(0));
  }
  auto [rank_, det] = echelon(aug, n);
  (void)det;
  if (rank_ < n) return std::nullopt;
  // Back substitution on the augmented block.
  QMatrix inv(n, QVec(n, Rational(0)));
  for (int col = 0; col < n; ++col) {
    for (int i = n - 1; i >= 0; --i) {
      Rational s = aug[i][n + col];
      for (int j = i + 1; j < n; ++j) s -= aug[i][j] * inv[j][col];
      inv[i][col] = s / aug[i][i];
    }
  }
  return inv;
}

std::optional<std::pair<QVec, QVec>> solve_spd(QMatrix a, QVec b) {
  const int n = static_cast<int>(a.size());
  QVec pivots;
  pivots.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return std::nullopt;
    pivots.push_back(a[k][k]);
    for (int r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      Rational factor = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] -= factor * a[k][c];
      b[r] -= factor * b[k];
    }
  }
  QVec x(n, Rational(0));
  for (int i = n - 1; i >= 0; --i) {
    Rational s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return std::make_pair(std::move(x), std::move(pivots));
}

std::vector<ZVec> unimodular_complement(const ZVec& row) {
  const int n = static_cast<int>(row.size());
  assert(n >= 1);
  // Columns of U, acted on by the same elementary operations that reduce
  // a working copy of the row to a single +/-1 entry.
  std::vector<ZVec> cols(n, ZVec(n, Int(0)));
  for (int i = 0; i < n; ++i) cols[i][i] = 1;
  ZVec a = row;

  auto nonzero_count = [&]() {
    int c = 0;
    for (const Int& v : a)
      if (v != 0) ++c;
    return c;
  };

  while (nonzero_count() > 1) {
    // Pick the nonzero entry of smallest magnitude as the reducer.
    int j = -1;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      if (j < 0 || abs(a[i]) < abs(a[j])) j = i;
    }
    for (int i = 0; i < n; ++i) {
      if (i == j || a[i] == 0) continue;
      Int q = a[i] / a[j];  // truncated quotient keeps |a[i] - q*a[j]| < |a[j]|
      if (q != 0) {
        a[i] -= q * a[j];
        for (int r = 0; r < n; ++r) cols[i][r] -= q * cols[j][r];
      }
    }
  }

  int k = 0;
  while (a[k] == 0) ++k;
  assert(abs(a[k]) == 1 && "row must be primitive");
  if (a[k] < 0) {
    for (int r = 0; r < n; ++r) cols[k][r] = -cols[k][r];
  }
  std::swap(cols[k], cols[n - 1]);
  return cols;
}

Int content(const ZVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

}  // namespace toristab::linalg
