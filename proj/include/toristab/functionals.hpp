#pragma once

#include <vector>

#include "toristab/integrate.hpp"
#include "toristab/rational.hpp"

namespace toristab {

/// Average boundary density: total boundary measure / volume. Equals the
/// dimension exactly for reflexive polytopes.
Rational sbar(const MomentTable& mt);

/// The extremal affine function V: the unique affine function with zero
/// mean against Lebesgue measure on the polytope such that
///   L_V(f) = (boundary integral of f) - (integral of (sbar + V) f)
/// annihilates every affine f. Its linear part solves the centered
/// covariance system gram * a = rhs kept here for audit.
struct ExtremalData {
  Rational sbar_value;
  AffineFn v;
  MomentTable mt;
  linalg::QMatrix gram;  // centered second moments, positive definite
  QVec rhs;
  QVec pivots;  // elimination pivots of the solve, all positive
};

ExtremalData extremal_affine(const MomentTable& mt);

/// L_V(f) for a convex PL function, all terms exact.
Rational l_v(const Polytope& p, const ExtremalData& ed, const PLConvexFn& f);
Rational l_v(const Polytope& p, const ExtremalData& ed, const Subdivision& sub);

/// Adds the affine function -f(x0) - <g, x - x0> with g a subgradient of f
/// at the interior point x0, making the result nonnegative on the polytope
/// and zero at x0. The subgradient comes from a feasibility LP over the
/// subdivision vertices, so repeated runs pick the same one.
PLConvexFn normalize_pl(const Polytope& p, const PLConvexFn& f, const QVec& x0);

/// mean(f) - min(f) over the polytope.
Rational jnorm_raw(const Polytope& p, const MomentTable& mt, const PLConvexFn& f);

/// inf over affine xi of mean(f + xi) - min(f + xi), by LP over the
/// subdivision vertices. Zero exactly when f is affine. The witness xi
/// attains the value (its constant term is immaterial and set to zero).
struct JNormResult {
  Rational value;
  AffineFn witness;
};

JNormResult jnorm(const Polytope& p, const MomentTable& mt, const PLConvexFn& f);

/// Certified enclosure of inf over affine xi of the L^1 distance between
/// f + xi and its mean. Cutting planes with exact inner evaluations; the
/// lower bound comes from the cut model, the upper bound from the best
/// evaluated point, so lower <= true value <= upper holds unconditionally.
struct Bracket {
  Rational lower;
  Rational upper;
  bool converged = false;
  int iterations = 0;
};

Bracket reduced_l1_norm(const Polytope& p, const MomentTable& mt, const PLConvexFn& f,
                        const Rational& rel_tol, int max_iterations = 10000);

/// Pushforward of normalized Lebesgue measure under x |-> L - f(x).
struct DHMeasure {
  Polytope domain;
  PLConvexFn fn;
  Rational level;  // L

  Rational support_min;  // L - max f
  Rational support_max;  // L - min f
  std::vector<std::pair<Rational, Rational>> atoms;  // (location, mass), sorted
  Rational mean;
  Rational total_volume;

  /// Exact distribution function: measure of (-infinity, y].
  Rational cdf(const Rational& y) const;
};

/// Test-configuration invariants of (polytope, convex PL f, level L).
struct NAFunctionalReport {
  Rational level;          // L
  Rational energy;         // L - mean(f)
  Rational jnorm_raw_value;  // mean(f) - min(f)
  Rational jnorm_value;      // reduced J
  AffineFn jnorm_witness;
  Rational h_v;     // -(1/vol) integral of f V
  Rational m_na;    // (1/vol) (boundary integral - sbar * interior integral)
  Rational m_v_na;  // m_na + h_v
};

struct TestConfiguration {
  NAFunctionalReport na;
  DHMeasure dh;
  Polytope compactification;  // { (x,y) : x in P, f(x) - L <= y <= 0 }
};

/// Requires L >= max f (checked; ValidationError otherwise). Equality is
/// allowed as long as the compactification stays full-dimensional, which
/// rules out exactly the constant f with L = max f.
TestConfiguration na_report(const Polytope& p, const ExtremalData& ed,
                            const PLConvexFn& f, const Rational& level);

}  // namespace toristab
