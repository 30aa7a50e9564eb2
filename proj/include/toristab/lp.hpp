#pragma once

#include <optional>
#include <vector>

#include "toristab/geometry.hpp"
#include "toristab/rational.hpp"

namespace toristab {

enum class Rel { Le, Eq, Ge };

struct LPConstraint {
  QVec coeffs;
  Rel rel = Rel::Le;
  Rational rhs = 0;
};

/// minimize <objective, x> subject to the constraints and optional
/// per-variable bounds. Variables without bounds are free.
struct LinearProgram {
  QVec objective;
  std::vector<LPConstraint> constraints;
  std::vector<std::optional<Rational>> lower;  // empty or one entry per variable
  std::vector<std::optional<Rational>> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  QVec point;      // optimal primal point (original variables)
  Rational value;  // optimal objective value
  QVec dual;       // one multiplier per constraint, from the final basis
};

/// Exact two-phase primal simplex with Bland's rule. Deterministic: the
/// same program always yields the same solution, and termination is
/// guaranteed (no cycling).
LPSolution solve_lp(const LinearProgram& lp);

/// Exact KKT check of an Optimal solution: primal feasibility, dual sign
/// conditions, complementary slackness, and vanishing reduced costs for
/// variables strictly between their bounds.
bool verify_certificate(const LinearProgram& lp, const LPSolution& sol);

/// min over the polytope of max_k fns[k], via the epigraph program
/// min t s.t. fns[k](x) <= t, x in domain. Returns (minimizer, value).
std::pair<QVec, Rational> minimize_maximum(const std::vector<AffineFn>& fns,
                                           const Polytope& domain);

}  // namespace toristab
