#include "toristab/functionals.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "toristab/errors.hpp"
#include "toristab/linalg.hpp"
#include "toristab/lp.hpp"

namespace toristab {

namespace {

Exponent unit_exponent(int n, int i) {
  Exponent e(n, 0);
  e[i] = 1;
  return e;
}

/// Integral of an affine function from a degree-1 moment map.
Rational affine_cell_integral(const std::map<Exponent, Rational>& m, const AffineFn& g,
                              int n) {
  Rational out = g.constant * m.at(Exponent(n, 0));
  for (int i = 0; i < n; ++i) {
    if (g.linear[i] != 0) out += g.linear[i] * m.at(unit_exponent(n, i));
  }
  return out;
}

/// Nearest multiple of 2^-bits. Caps coefficient growth across iterations
/// of the cutting-plane loop without giving up exactness.
Rational round_dyadic(const Rational& v, unsigned bits) {
  Int scale = Int(1) << bits;
  Int nearest = rational_floor(v * Rational(scale) + Rational(1, 2));
  return Rational(nearest, scale);
}

}  // namespace

Rational sbar(const MomentTable& mt) { return mt.sigma_boundary / mt.vol; }

ExtremalData extremal_affine(const MomentTable& mt) {
  const int n = mt.dim;
  linalg::QMatrix cov(n, QVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      cov[i][k] =
          mt.second_moment[i][k] - mt.vol * mt.barycenter[i] * mt.barycenter[k];
    }
  }
  const Rational sb = sbar(mt);
  QVec rhs(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    const Exponent ei = unit_exponent(n, i);
    Rational boundary(0);
    for (const auto& facet_map : mt.boundary) boundary += facet_map.at(ei);
    rhs[i] = boundary - sb * mt.interior.at(ei);
  }
  auto solved = linalg::solve_spd(cov, rhs);
  if (!solved) throw Error("covariance matrix is not positive definite");
  ExtremalData ed;
  ed.sbar_value = sb;
  ed.v = AffineFn(solved->first, -dot(solved->first, mt.barycenter));
  ed.mt = mt;
  ed.gram = std::move(cov);
  ed.rhs = std::move(rhs);
  ed.pivots = std::move(solved->second);
  return ed;
}

Rational l_v(const Polytope& p, const ExtremalData& ed, const Subdivision& sub) {
  const PLIntegrals ints = integral_pl(p, sub);
  Rational out = ints.boundary - ed.sbar_value * ints.interior;
  if (!ed.v.is_zero()) out -= pl_times_affine_integral(sub, ed.v);
  return out;
}

Rational l_v(const Polytope& p, const ExtremalData& ed, const PLConvexFn& f) {
  return l_v(p, ed, subdivide_by_pl(p, f));
}

PLConvexFn normalize_pl(const Polytope& p, const PLConvexFn& f, const QVec& x0) {
  if (!p.strictly_contains(x0)) {
    throw ValidationError("normalization point must lie in the interior, got " +
                          format_vector(x0));
  }
  const int n = p.dim;
  const Subdivision sub = subdivide_by_pl(p, f);
  const Rational fx0 = f.value(x0);

  // Any g with <g, v - x0> <= f(v) - f(x0) at every subdivision vertex is a
  // subgradient of f at x0. The zero objective makes Bland's rule pick one
  // deterministically.
  LinearProgram lp;
  lp.objective = QVec(n, Rational(0));
  for (const QVec& v : subdivision_vertices(sub)) {
    QVec row(n);
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      row[i] = v[i] - x0[i];
      if (row[i] != 0) zero = false;
    }
    if (zero) continue;
    lp.constraints.push_back({std::move(row), Rel::Le, f.value(v) - fx0});
  }
  const LPSolution sol = solve_lp(lp);
  if (sol.status != LPStatus::Optimal) throw Error("subgradient program failed");

  AffineFn shift(QVec(n), -fx0 + dot(sol.point, x0));
  for (int i = 0; i < n; ++i) shift.linear[i] = -sol.point[i];

  PLConvexFn out;
  for (const AffineFn& piece : f.pieces) {
    AffineFn cand = piece + shift;
    if (std::find(out.pieces.begin(), out.pieces.end(), cand) == out.pieces.end()) {
      out.pieces.push_back(std::move(cand));
    }
  }
  return out;
}

Rational jnorm_raw(const Polytope& p, const MomentTable& mt, const PLConvexFn& f) {
  const Subdivision sub = subdivide_by_pl(p, f);
  const Rational mean = integral_pl(p, sub).interior / mt.vol;
  const std::vector<QVec> verts = subdivision_vertices(sub);
  Rational mn = f.value(verts.front());
  for (const QVec& v : verts) mn = std::min(mn, f.value(v));
  return mean - mn;
}

JNormResult jnorm(const Polytope& p, const MomentTable& mt, const PLConvexFn& f) {
  const int n = p.dim;
  const Subdivision sub = subdivide_by_pl(p, f);
  const Rational mean = integral_pl(p, sub).interior / mt.vol;

  // Variables (a, m): minimize <barycenter, a> - m subject to
  // m <= f(v) + <a, v> at every subdivision vertex. The minimum of the
  // twisted function over the polytope is attained at one of these
  // vertices, so the optimum is mean(f + a) - min(f + a) - mean(f).
  LinearProgram lp;
  lp.objective = QVec(n + 1, Rational(0));
  for (int i = 0; i < n; ++i) lp.objective[i] = mt.barycenter[i];
  lp.objective[n] = -1;
  for (const QVec& v : subdivision_vertices(sub)) {
    QVec row(n + 1);
    for (int i = 0; i < n; ++i) row[i] = -v[i];
    row[n] = 1;
    lp.constraints.push_back({std::move(row), Rel::Le, f.value(v)});
  }
  const LPSolution sol = solve_lp(lp);
  if (sol.status != LPStatus::Optimal) throw Error("twist program did not solve");

  JNormResult out;
  out.value = mean + sol.value;
  out.witness = AffineFn(QVec(sol.point.begin(), sol.point.begin() + n), Rational(0));
  return out;
}

Bracket reduced_l1_norm(const Polytope& p, const MomentTable& mt, const PLConvexFn& f,
                        const Rational& rel_tol, int max_iterations) {
  const int n = p.dim;
  const Subdivision sub = subdivide_by_pl(p, f);
  const Rational mean_f = integral_pl(p, sub).interior / mt.vol;
  const QVec& bary = mt.barycenter;
  const Exponent zero(n, 0);

  struct CellData {
    const SubdivisionCell* cell;
    AffineFn piece;
    std::map<Exponent, Rational> m;  // degree-1 moments, cached
  };
  std::vector<CellData> cells;
  for (const SubdivisionCell& c : sub.cells) {
    cells.push_back({&c, sub.fn.pieces[c.piece], interior_moments(c.cell, 1)});
  }

  // phi(a) = integral of |f(x) + <a, x> - mean(f + a)|, a convex coercive
  // function of the twist a. Evaluation splits every subdivision cell along
  // the zero set of the integrand; the subgradient is the signed first
  // moment about the barycenter.
  struct CutEval {
    QVec point;
    Rational value;
    QVec grad;
  };
  auto eval = [&](const QVec& a) -> CutEval {
    const Rational mean_a = mean_f + dot(a, bary);
    Rational val(0);
    QVec grad(n, Rational(0));
    for (const CellData& cd : cells) {
      AffineFn g(QVec(n), cd.piece.constant - mean_a);
      bool linear_zero = true;
      for (int i = 0; i < n; ++i) {
        g.linear[i] = cd.piece.linear[i] + a[i];
        if (g.linear[i] != 0) linear_zero = false;
      }
      if (linear_zero) {
        const int sgn = g.constant > 0 ? 1 : (g.constant < 0 ? -1 : 0);
        if (sgn == 0) continue;
        val += (sgn > 0 ? g.constant : -g.constant) * cd.m.at(zero);
        for (int i = 0; i < n; ++i) {
          grad[i] += Rational(sgn) *
                     (cd.m.at(unit_exponent(n, i)) - bary[i] * cd.m.at(zero));
        }
        continue;
      }
      auto add_side = [&](const HalfSpace& cut, int sgn) {
        std::vector<HalfSpace> facets = cd.cell->cell.facets;
        facets.push_back(cut);
        auto region = try_make_cell(n, std::move(facets), "");
        if (!region) return;
        const auto m = interior_moments(*region, 1);
        const Rational part = affine_cell_integral(m, g, n);
        val += sgn > 0 ? part : -part;
        for (int i = 0; i < n; ++i) {
          grad[i] +=
              Rational(sgn) * (m.at(unit_exponent(n, i)) - bary[i] * m.at(zero));
        }
      };
      QVec neg_linear(n);
      for (int i = 0; i < n; ++i) neg_linear[i] = -g.linear[i];
      add_side(canonical_halfspace(g.linear, g.constant), 1);
      add_side(canonical_halfspace(neg_linear, -g.constant), -1);
    }
    return {a, val, grad};
  };

  std::vector<CutEval> cuts;
  Rational upper;
  auto add_cut = [&](const QVec& a) {
    CutEval e = eval(a);
    if (cuts.empty() || e.value < upper) upper = e.value;
    cuts.push_back(std::move(e));
  };
  auto seen = [&](const QVec& a) {
    for (const CutEval& c : cuts)
      if (c.point == a) return true;
    return false;
  };

  add_cut(QVec(n, Rational(0)));

  Bracket out;
  Rational lower(0);  // phi is an L^1 distance, never negative

  // Trust box around the origin. Values from the boxed model are valid
  // global lower bounds only when the minimizer lands strictly inside.
  Rational box(2);
  for (const AffineFn& piece : f.pieces) {
    for (int i = 0; i < n; ++i) {
      const Rational mag = piece.linear[i] < 0 ? -piece.linear[i] : piece.linear[i];
      box = std::max(box, Rational(2 * mag));
    }
  }

  while (out.iterations < max_iterations) {
    ++out.iterations;
    if (upper == 0) {
      lower = 0;
      out.converged = true;
      break;
    }
    if (upper - lower <= rel_tol * upper) {
      out.converged = true;
      break;
    }

    // Model: minimize t over the box, t >= value_i + <grad_i, a - point_i>.
    LinearProgram lp;
    lp.objective = QVec(n + 1, Rational(0));
    lp.objective[n] = 1;
    lp.lower.assign(n + 1, std::nullopt);
    lp.upper.assign(n + 1, std::nullopt);
    for (int i = 0; i < n; ++i) {
      lp.lower[i] = -box;
      lp.upper[i] = box;
    }
    lp.lower[n] = Rational(0);
    for (const CutEval& c : cuts) {
      QVec row(n + 1);
      for (int i = 0; i < n; ++i) row[i] = -c.grad[i];
      row[n] = 1;
      lp.constraints.push_back({std::move(row), Rel::Ge, c.value - dot(c.grad, c.point)});
    }
    const LPSolution sol = solve_lp(lp);
    if (sol.status != LPStatus::Optimal) throw Error("cut model did not solve");

    bool interior = true;
    for (int i = 0; i < n; ++i) {
      if (sol.point[i] == box || sol.point[i] == -box) interior = false;
    }
    if (interior) {
      if (sol.value > lower) lower = sol.value;
      if (upper - lower <= rel_tol * upper) {
        out.converged = true;
        break;
      }
    } else {
      box *= 2;
    }

    QVec next(n);
    for (int i = 0; i < n; ++i) next[i] = round_dyadic(sol.point[i], 48);
    if (seen(next)) next = QVec(sol.point.begin(), sol.point.begin() + n);
    if (seen(next)) continue;
    add_cut(next);
  }

  out.lower = lower;
  out.upper = upper;
  return out;
}

Rational DHMeasure::cdf(const Rational& y) const {
  // Mass at or below y is the normalized volume of { f >= level - y }. The
  // sublevel volume counts { f <= t } including the plateau { f = t }, which
  // belongs to the upper side, so it is added back.
  const Rational t = level - y;
  const Rational sub = sublevel_volume(domain, fn, t);
  Rational plateau(0);
  for (const auto& [location, mass] : atoms) {
    if (location == y) plateau = mass * total_volume;
  }
  return (total_volume - sub + plateau) / total_volume;
}

TestConfiguration na_report(const Polytope& p, const ExtremalData& ed,
                            const PLConvexFn& f, const Rational& level) {
  const int n = p.dim;
  const MomentTable& mt = ed.mt;

  Rational maxf = f.value(p.vertices.front());
  for (const QVec& v : p.vertices) maxf = std::max(maxf, f.value(v));
  if (level < maxf) {
    throw ValidationError("level must be at least max f = " + format_rational(maxf) +
                          ", got " + format_rational(level));
  }

  const Subdivision sub = subdivide_by_pl(p, f);
  const PLIntegrals ints = integral_pl(p, sub);
  const Rational mean = ints.interior / mt.vol;

  const std::vector<QVec> verts = subdivision_vertices(sub);
  Rational minf = f.value(verts.front());
  for (const QVec& v : verts) minf = std::min(minf, f.value(v));

  NAFunctionalReport na;
  na.level = level;
  na.energy = level - mean;
  na.jnorm_raw_value = mean - minf;
  const JNormResult jn = jnorm(p, mt, f);
  na.jnorm_value = jn.value;
  na.jnorm_witness = jn.witness;
  na.h_v = ed.v.is_zero() ? Rational(0) : -pl_times_affine_integral(sub, ed.v) / mt.vol;
  na.m_na = (ints.boundary - ed.sbar_value * ints.interior) / mt.vol;
  na.m_v_na = na.m_na + na.h_v;

  DHMeasure dh;
  dh.domain = p;
  dh.fn = f;
  dh.level = level;
  dh.support_min = level - maxf;
  dh.support_max = level - minf;
  dh.total_volume = mt.vol;
  std::map<Rational, Rational> atom_mass;
  Rational mean_acc(0);
  for (const SubdivisionCell& c : sub.cells) {
    const AffineFn& piece = sub.fn.pieces[c.piece];
    const auto m = interior_moments(c.cell, 1);
    mean_acc += level * m.at(Exponent(n, 0)) - affine_cell_integral(m, piece, n);
    if (piece.is_constant()) {
      atom_mass[level - piece.constant] += m.at(Exponent(n, 0)) / mt.vol;
    }
  }
  dh.mean = mean_acc / mt.vol;
  dh.atoms.assign(atom_mass.begin(), atom_mass.end());

  // Compactification { (x, y) : x in P, f(x) - level <= y <= 0 }. The graph
  // constraints come from the pieces; redundant ones drop out.
  std::vector<HalfSpace> lifted;
  for (const HalfSpace& facet : p.facets) {
    ZVec normal = facet.normal;
    normal.push_back(Int(0));
    lifted.push_back({std::move(normal), facet.offset});
  }
  ZVec top(n + 1, Int(0));
  top[n] = -1;
  lifted.push_back({std::move(top), Rational(0)});
  for (const AffineFn& piece : sub.fn.pieces) {
    QVec normal(n + 1);
    for (int i = 0; i < n; ++i) normal[i] = -piece.linear[i];
    normal[n] = 1;
    lifted.push_back(canonical_halfspace(normal, level - piece.constant));
  }
  auto q = try_make_cell(n + 1, std::move(lifted), p.name + ":test-config");
  if (!q) {
    throw ValidationError(
        "compactification is degenerate (constant f with level = max f)");
  }

  return {std::move(na), std::move(dh), std::move(*q)};
}

}  // namespace toristab
