#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toristab/functionals.hpp"

namespace toristab {

/// Closed-form sufficient test. With x0 minimizing the largest facet
/// support value d_x0 = max_j (<normal_j, x0> + offset_j), the polarization
/// is uniformly relatively K-polystable whenever
///   sbar + max_P V <= (n+1) / d_x0,
/// strictly when V = 0. The margin delta = 1 - d_x0 (sbar + max V)/(n+1)
/// then bounds L_V(f) from below by delta times the boundary integral of f
/// for every normalized convex PL function f.
struct SuffVerdict {
  bool applies = false;
  bool v_zero = true;
  QVec x0;
  Rational d_x0;
  Rational threshold;  // (n+1)/d_x0
  Rational sbar_value;
  Rational max_v;      // max of V over the polytope, 0 when V = 0
  Rational delta;
  std::string branch;  // "V=0 strict", "V!=0 non-strict", or "inconclusive"
  std::string verdict;
};

SuffVerdict sufficient_condition(const Polytope& p, const ExtremalData& ed,
                                 const std::optional<QVec>& x0 = std::nullopt);

/// One clause of the equivalence chain reported by fano_analysis. Implied
/// clauses restate the combinatorial ones rather than being computed.
struct FanoCondition {
  std::string label;
  bool holds = false;
  bool implied = false;
};

/// Barycenter test for reflexive polytopes: the extremal affine function
/// vanishes exactly when the barycenter is the origin, and both are
/// equivalent to uniform K-polystability of the anticanonical polarization.
struct FanoVerdict {
  bool reflexive = false;
  QVec barycenter;
  QVec rhs;          // boundary-minus-scaled-interior vector driving V
  bool v_zero = true;
  bool consistent = true;  // rhs == vol * barycenter, reflexive entries only
  std::vector<FanoCondition> conditions;  // empty unless reflexive
  std::string verdict;
};

FanoVerdict fano_analysis(const Polytope& p, const ExtremalData& ed);

/// One crease function f = max(0, <slope, x> + intercept) whose crease
/// hyperplane meets the interior, with its functional values.
struct DestabCandidate {
  ZVec slope;
  Rational intercept;
  PLConvexFn fn;
  Rational lv;     // L_V(f)
  Rational jn;     // reduced J norm, strictly positive for crease functions
  Rational ratio;  // lv / jn
};

/// Exhaustive scan over primitive slopes with entries bounded by max_slope
/// and intercepts in (1/grid_depth) Z, keeping functions whose crease meets
/// the interior. Candidates are sorted by ratio, then slope, then
/// intercept; a nonpositive best ratio exhibits a destabilizer.
struct DestabReport {
  int grid_depth = 1;
  int max_slope = 1;
  std::string family;  // human-readable description of the scanned family
  std::vector<DestabCandidate> candidates;
  bool destabilizer_found = false;
  std::string verdict;  // "no-destabilizer-found" or "destabilizer-certificate"
};

DestabReport destabilizer_search(const Polytope& p, const ExtremalData& ed,
                                 int grid_depth, int max_slope);

/// Number of lattice points in the m-th dilate of an integral polytope,
/// m >= 0.
Int ehrhart_count(const Polytope& p, int m);

/// Exact interpolation of the count through m = 1..n+1, then verification
/// of the interpolant against the true counts up to m_max (default n+1,
/// i.e. no extra samples). For a Delzant lattice polytope the leading
/// coefficient is the volume and the subleading one is half the boundary
/// measure.
struct EhrhartFit {
  std::vector<Rational> coeffs;  // c_0..c_n, count(m) = sum c_k m^k
  Rational leading;
  Rational subleading;
  std::vector<Int> counts;  // counts for m = 1..m_max
};

EhrhartFit ehrhart_fit(const Polytope& p, int m_max = -1);

/// w_m = sum over lattice points alpha of the m-th dilate of
/// m * (level - f(alpha / m)). Requires an integral polytope and
/// level >= max f.
Rational weight_sum(const Polytope& p, const PLConvexFn& f, const Rational& level,
                    int m);

/// Finite-m check of the expansion w_m / (m count(m)) = F0 + F1/m + O(1/m^2):
/// exact least-squares fit of (F0, F1) over at least three increasing
/// samples, compared against the predicted limits F0 = energy and
/// -2 F1 = m_na.
struct OracleReport {
  std::vector<int> sample_m;
  std::vector<Int> counts;
  std::vector<Rational> weights;  // w_m
  std::vector<Rational> y;        // w_m / (m count(m))
  Rational f0;
  Rational f1;
  Rational energy;  // E^NA, the limit of y
  Rational m_na;    // compared against -2 f1
  double f0_rel_err = 0;
  double m_na_rel_err = 0;
};

OracleReport df_asymptotic_check(const Polytope& p, const ExtremalData& ed,
                                 const PLConvexFn& f, const Rational& level,
                                 const std::vector<int>& sample_m);

}  // namespace toristab
