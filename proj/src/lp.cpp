#include "toristab/lp.hpp"

#include <cassert>

#include "toristab/errors.hpp"

namespace toristab {

namespace {

// Internal standard form: minimize c*u subject to T u = rhs, u >= 0, where
// every original variable has been shifted, negated or split to become
// nonnegative and every row has nonnegative right-hand side. One artificial
// column per row supplies the phase-1 basis and, at the end, the duals.
struct Standardized {
  std::vector<QVec> rows;      // coefficients of the structural+slack columns
  QVec rhs;                    // nonnegative
  std::vector<Rel> rels;       // relation after sign normalization (pre-slack)
  std::vector<bool> flipped;   // row was multiplied by -1
  std::vector<int> row_origin; // index of the source constraint, -1 for bound rows
  QVec cost;                   // per column
  int num_cols = 0;

  // Original variable j maps to columns pos[j] (and neg[j] when split),
  // with x_j = shift[j] + sign[j]*u_pos + (split ? -u_neg : 0).
  std::vector<int> pos, neg;
  QVec shift;
  std::vector<int> sign;
};

Standardized standardize(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  auto bound = [&](const std::vector<std::optional<Rational>>& b, int j)
      -> std::optional<Rational> {
    if (static_cast<int>(b.size()) <= j) return std::nullopt;
    return b[j];
  };

  Standardized s;
  s.pos.assign(nv, -1);
  s.neg.assign(nv, -1);
  s.shift.assign(nv, Rational(0));
  s.sign.assign(nv, 1);

  int cols = 0;
  struct BoundRow {
    int var;
    Rational range;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < nv; ++j) {
    auto lo = bound(lp.lower, j);
    auto hi = bound(lp.upper, j);
    if (lo && hi && *hi < *lo)
      return s;  // caught by caller: empty column set marks trivial infeasibility
    if (lo) {
      s.pos[j] = cols++;
      s.shift[j] = *lo;
      s.sign[j] = 1;
      if (hi) bound_rows.push_back({j, *hi - *lo});
    } else if (hi) {
      s.pos[j] = cols++;
      s.shift[j] = *hi;
      s.sign[j] = -1;
    } else {
      s.pos[j] = cols++;
      s.neg[j] = cols++;
      s.sign[j] = 1;
    }
  }

  auto add_row = [&](const QVec& coeffs, Rel rel, const Rational& rhs_raw, int origin) {
    QVec row(cols, Rational(0));
    Rational rhs = rhs_raw;
    for (int j = 0; j < nv; ++j) {
      if (coeffs[j] == 0) continue;
      rhs -= coeffs[j] * s.shift[j];
      row[s.pos[j]] += coeffs[j] * s.sign[j];
      if (s.neg[j] >= 0) row[s.neg[j]] -= coeffs[j];
    }
    bool flip = rhs < 0;
    if (flip) {
      for (auto& v : row) v = -v;
      rhs = -rhs;
      rel = rel == Rel::Le ? Rel::Ge : rel == Rel::Ge ? Rel::Le : Rel::Eq;
    }
    s.rows.push_back(std::move(row));
    s.rhs.push_back(rhs);
    s.rels.push_back(rel);
    s.flipped.push_back(flip);
    s.row_origin.push_back(origin);
  };

  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    assert(static_cast<int>(c.coeffs.size()) == nv);
    add_row(c.coeffs, c.rel, c.rhs, static_cast<int>(i));
  }
  for (const auto& br : bound_rows) {
    QVec coeffs(nv, Rational(0));
    coeffs[br.var] = 1;
    add_row(coeffs, Rel::Le, s.shift[br.var] + br.range, -1);
  }

  // Slack columns.
  const int m = static_cast<int>(s.rows.size());
  int slack_cols = 0;
  for (int i = 0; i < m; ++i)
    if (s.rels[i] != Rel::Eq) ++slack_cols;
  for (int i = 0; i < m; ++i) s.rows[i].resize(cols + slack_cols, Rational(0));
  int next = cols;
  for (int i = 0; i < m; ++i) {
    if (s.rels[i] == Rel::Le)
      s.rows[i][next++] = 1;
    else if (s.rels[i] == Rel::Ge)
      s.rows[i][next++] = -1;
  }
  s.num_cols = cols + slack_cols;

  s.cost.assign(s.num_cols, Rational(0));
  for (int j = 0; j < nv; ++j) {
    if (lp.objective[j] == 0) continue;
    s.cost[s.pos[j]] += lp.objective[j] * Rational(s.sign[j]);
    if (s.neg[j] >= 0) s.cost[s.neg[j]] -= lp.objective[j];
  }
  return s;
}

struct Tableau {
  std::vector<QVec> t;     // m rows, num_cols + m artificials + 1 rhs
  std::vector<int> basis;  // column index basic in each row
  int structural_cols = 0;
  int total_cols = 0;  // structural + artificial
  std::vector<bool> row_alive;

  int art_col(int row) const { return structural_cols + row; }
  Rational& rhs(int row) { return t[row][total_cols]; }
  const Rational& rhs(int row) const { return t[row][total_cols]; }
};

// One simplex phase with Bland's rule. cost covers all columns (artificials
// included). enterable[j] == false bars a column from entering the basis.
// Returns false when the objective is unbounded below.
bool run_simplex(Tableau& tb, const QVec& cost, const std::vector<bool>& enterable) {
  const int m = static_cast<int>(tb.t.size());
  const int n = tb.total_cols;

  QVec z(n + 1, Rational(0));
  for (int j = 0; j <= n; ++j) {
    Rational acc = j < n ? cost[j] : Rational(0);
    for (int r = 0; r < m; ++r) {
      if (!tb.row_alive[r]) continue;
      const Rational& coef = tb.t[r][j];
      if (coef != 0) acc -= cost[tb.basis[r]] * coef;
    }
    z[j] = acc;  // for j == n this is minus the objective value; unused
  }

  for (;;) {
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (!enterable[j]) continue;
      if (z[j] < 0) {
        enter = j;
        break;  // Bland: smallest eligible index
      }
    }
    if (enter < 0) return true;

    int leave_row = -1;
    Rational best_ratio;
    for (int r = 0; r < m; ++r) {
      if (!tb.row_alive[r]) continue;
      const Rational& a = tb.t[r][enter];
      if (a <= 0) continue;
      Rational ratio = tb.rhs(r) / a;
      if (leave_row < 0 || ratio < best_ratio ||
          (ratio == best_ratio && tb.basis[r] < tb.basis[leave_row])) {
        leave_row = r;
        best_ratio = ratio;
      }
    }
    if (leave_row < 0) return false;  // unbounded

    // Pivot.
    QVec& prow = tb.t[leave_row];
    const Rational piv = prow[enter];
    for (int j = 0; j <= n; ++j)
      if (prow[j] != 0) prow[j] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == leave_row || !tb.row_alive[r]) continue;
      const Rational factor = tb.t[r][enter];
      if (factor == 0) continue;
      for (int j = 0; j <= n; ++j)
        if (prow[j] != 0) tb.t[r][j] -= factor * prow[j];
    }
    {
      const Rational factor = z[enter];
      if (factor != 0)
        for (int j = 0; j <= n; ++j)
          if (prow[j] != 0) z[j] -= factor * prow[j];
    }
    tb.basis[leave_row] = enter;
  }
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  for (const auto& c : lp.constraints)
    if (static_cast<int>(c.coeffs.size()) != nv)
      throw Error("solve_lp: constraint arity mismatch");
  {
    auto bound = [&](const std::vector<std::optional<Rational>>& b, int j)
        -> std::optional<Rational> {
      if (static_cast<int>(b.size()) <= j) return std::nullopt;
      return b[j];
    };
    for (int j = 0; j < nv; ++j) {
      auto lo = bound(lp.lower, j), hi = bound(lp.upper, j);
      if (lo && hi && *hi < *lo) return LPSolution{LPStatus::Infeasible, {}, 0, {}};
    }
  }

  Standardized s = standardize(lp);
  const int m = static_cast<int>(s.rows.size());

  Tableau tb;
  tb.structural_cols = s.num_cols;
  tb.total_cols = s.num_cols + m;
  tb.t.assign(m, QVec(tb.total_cols + 1, Rational(0)));
  tb.basis.assign(m, -1);
  tb.row_alive.assign(m, true);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < s.num_cols; ++j) tb.t[r][j] = s.rows[r][j];
    tb.t[r][tb.art_col(r)] = 1;
    tb.rhs(r) = s.rhs[r];
    tb.basis[r] = tb.art_col(r);
  }

  // Phase 1: drive the artificials to zero.
  QVec phase1_cost(tb.total_cols, Rational(0));
  for (int r = 0; r < m; ++r) phase1_cost[tb.art_col(r)] = 1;
  std::vector<bool> enter_all(tb.total_cols, true);
  bool ok = run_simplex(tb, phase1_cost, enter_all);
  assert(ok && "phase 1 is bounded below by zero");
  Rational infeas = 0;
  for (int r = 0; r < m; ++r)
    if (tb.basis[r] >= tb.structural_cols) infeas += tb.rhs(r);
  if (infeas != 0) return LPSolution{LPStatus::Infeasible, {}, 0, {}};

  // Clear surviving zero-level artificials from the basis; a row with no
  // structural entry left is redundant and is dropped.
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] < tb.structural_cols) continue;
    int pivot_col = -1;
    for (int j = 0; j < tb.structural_cols; ++j) {
      if (tb.t[r][j] != 0) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col < 0) {
      tb.row_alive[r] = false;
      continue;
    }
    const Rational piv = tb.t[r][pivot_col];
    for (int j = 0; j <= tb.total_cols; ++j)
      if (tb.t[r][j] != 0) tb.t[r][j] /= piv;
    for (int r2 = 0; r2 < m; ++r2) {
      if (r2 == r || !tb.row_alive[r2]) continue;
      const Rational factor = tb.t[r2][pivot_col];
      if (factor == 0) continue;
      for (int j = 0; j <= tb.total_cols; ++j)
        if (tb.t[r][j] != 0) tb.t[r2][j] -= factor * tb.t[r][j];
    }
    tb.basis[r] = pivot_col;
  }

  // Phase 2: original cost; artificials may not re-enter.
  QVec phase2_cost(tb.total_cols, Rational(0));
  for (int j = 0; j < tb.structural_cols; ++j) phase2_cost[j] = s.cost[j];
  std::vector<bool> enter_structural(tb.total_cols, false);
  for (int j = 0; j < tb.structural_cols; ++j) enter_structural[j] = true;
  if (!run_simplex(tb, phase2_cost, enter_structural))
    return LPSolution{LPStatus::Unbounded, {}, 0, {}};

  // Primal point.
  QVec u(tb.structural_cols, Rational(0));
  for (int r = 0; r < m; ++r)
    if (tb.row_alive[r] && tb.basis[r] < tb.structural_cols) u[tb.basis[r]] = tb.rhs(r);
  QVec x(nv, Rational(0));
  for (int j = 0; j < nv; ++j) {
    Rational v = s.shift[j] + Rational(s.sign[j]) * u[s.pos[j]];
    if (s.neg[j] >= 0) v -= u[s.neg[j]];
    x[j] = v;
  }
  Rational value = dot(lp.objective, x);

  // Duals from the artificial columns: in phase 2 their cost is zero, so the
  // reduced cost of artificial i equals -y_i for the sign-normalized row i.
  QVec y_rows(m, Rational(0));
  for (int i = 0; i < m; ++i) {
    if (!tb.row_alive[i]) continue;
    Rational red = 0;
    for (int r = 0; r < m; ++r) {
      if (!tb.row_alive[r]) continue;
      const Rational& coef = tb.t[r][tb.art_col(i)];
      if (coef != 0) red -= phase2_cost[tb.basis[r]] * coef;
    }
    y_rows[i] = s.flipped[i] ? red : Rational(-red);
  }
  QVec dual(lp.constraints.size(), Rational(0));
  for (int i = 0; i < m; ++i)
    if (s.row_origin[i] >= 0) dual[s.row_origin[i]] = y_rows[i];

  return LPSolution{LPStatus::Optimal, std::move(x), std::move(value), std::move(dual)};
}

bool verify_certificate(const LinearProgram& lp, const LPSolution& sol) {
  if (sol.status != LPStatus::Optimal) return false;
  const int nv = lp.num_vars();
  const auto& x = sol.point;
  if (static_cast<int>(x.size()) != nv) return false;
  if (sol.dual.size() != lp.constraints.size()) return false;

  auto bound = [&](const std::vector<std::optional<Rational>>& b, int j)
      -> std::optional<Rational> {
    if (static_cast<int>(b.size()) <= j) return std::nullopt;
    return b[j];
  };

  // Primal feasibility and complementary slackness on the rows.
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    Rational lhs = dot(c.coeffs, x);
    const Rational& y = sol.dual[i];
    switch (c.rel) {
      case Rel::Le:
        if (lhs > c.rhs) return false;
        if (y > 0) return false;
        break;
      case Rel::Ge:
        if (lhs < c.rhs) return false;
        if (y < 0) return false;
        break;
      case Rel::Eq:
        if (lhs != c.rhs) return false;
        break;
    }
    if (y != 0 && lhs != c.rhs) return false;
  }
  for (int j = 0; j < nv; ++j) {
    auto lo = bound(lp.lower, j), hi = bound(lp.upper, j);
    if (lo && x[j] < *lo) return false;
    if (hi && x[j] > *hi) return false;
  }

  // Stationarity: z = c - A^T y must vanish for variables strictly between
  // their bounds, be >= 0 at a lower bound and <= 0 at an upper bound.
  for (int j = 0; j < nv; ++j) {
    Rational z = lp.objective[j];
    for (std::size_t i = 0; i < lp.constraints.size(); ++i)
      z -= sol.dual[i] * lp.constraints[i].coeffs[j];
    auto lo = bound(lp.lower, j), hi = bound(lp.upper, j);
    bool at_lo = lo && x[j] == *lo;
    bool at_hi = hi && x[j] == *hi;
    if (at_lo && at_hi) continue;  // pinned variable, any z is fine
    if (at_lo) {
      if (z < 0) return false;
    } else if (at_hi) {
      if (z > 0) return false;
    } else {
      if (z != 0) return false;
    }
  }

  return dot(lp.objective, x) == sol.value;
}

std::pair<QVec, Rational> minimize_maximum(const std::vector<AffineFn>& fns,
                                           const Polytope& domain) {
  assert(!fns.empty());
  const int n = domain.dim;
  LinearProgram lp;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;  // minimize t
  for (const auto& f : fns) {
    LPConstraint c;
    c.coeffs = f.linear;
    c.coeffs.push_back(Rational(-1));
    c.rel = Rel::Le;
    c.rhs = -f.constant;
    lp.constraints.push_back(std::move(c));
  }
  for (const auto& h : domain.facets) {
    LPConstraint c;
    c.coeffs.reserve(n + 1);
    for (const Int& v : h.normal) c.coeffs.push_back(Rational(v));
    c.coeffs.push_back(Rational(0));
    c.rel = Rel::Ge;
    c.rhs = -h.offset;
    lp.constraints.push_back(std::move(c));
  }
  LPSolution sol = solve_lp(lp);
  if (sol.status != LPStatus::Optimal)
    throw Error("minimize_maximum: expected a bounded feasible program");
  QVec x(sol.point.begin(), sol.point.begin() + n);
  return {std::move(x), sol.value};
}

}  // namespace toristab
