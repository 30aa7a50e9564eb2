#pragma once

#include <random>
#include <vector>

#include "toristab/functionals.hpp"
#include "toristab/geometry.hpp"
#include "toristab/integrate.hpp"

namespace toristab::testing {

/// Deterministic RNG for the randomized property suites.
inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline QVec random_qvec(std::mt19937_64& rng, int dim, int max_num = 3,
                        int max_den = 4) {
  QVec v;
  for (int i = 0; i < dim; ++i) v.push_back(random_rational(rng, max_num, max_den));
  return v;
}

inline AffineFn random_affine(std::mt19937_64& rng, int dim) {
  return AffineFn(random_qvec(rng, dim), random_rational(rng, 3, 4));
}

/// Convex PL function with 2..4 random pieces.
inline PLConvexFn random_pl(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> count(2, 4);
  PLConvexFn f;
  int pieces = count(rng);
  for (int k = 0; k < pieces; ++k) f.pieces.push_back(random_affine(rng, dim));
  return f;
}

/// Crease function max(0, <a,x> + b) with primitive integer slope whose
/// crease hyperplane passes strictly through the interior of p.
inline PLConvexFn random_crease(std::mt19937_64& rng, const Polytope& p,
                                int max_slope = 3) {
  std::uniform_int_distribution<int> entry(-max_slope, max_slope);
  std::uniform_int_distribution<int> num(1, 7);
  while (true) {
    ZVec a;
    bool zero = true;
    for (int i = 0; i < p.dim; ++i) {
      a.push_back(Int(entry(rng)));
      zero = zero && a.back() == 0;
    }
    if (zero) continue;

    QVec slope;
    for (const Int& c : a) slope.push_back(Rational(c));
    Rational lo = dot(slope, p.vertices.front());
    Rational hi = lo;
    for (const QVec& v : p.vertices) {
      Rational s = dot(slope, v);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (lo == hi) continue;
    // b so that <a,x> + b changes sign across P: -b strictly inside (lo, hi).
    Rational t = Rational(num(rng), 8);
    Rational b = -(lo + t * (hi - lo));

    PLConvexFn f;
    f.pieces.push_back(AffineFn::zero(p.dim));
    f.pieces.push_back(AffineFn(slope, b));
    return f;
  }
}

}  // namespace toristab::testing
