// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the exit code is the number of failures.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "toristab/catalog.hpp"
#include "toristab/cli.hpp"
#include "toristab/stability.hpp"

using namespace toristab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d  %s (%s)\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Analysis {
  Polytope p;
  MomentTable mt;
  ExtremalData ed;
};

Analysis analyze(const std::string& name) {
  Analysis a;
  a.p = catalog_polytope(name);
  a.mt = moments(a.p);
  a.ed = extremal_affine(a.mt);
  return a;
}

bool all_zero(const QVec& v) {
  for (const Rational& c : v) {
    if (c != 0) return false;
  }
  return true;
}

PLConvexFn constant_pl(int dim, const Rational& c) {
  PLConvexFn f;
  f.pieces.push_back(AffineFn(QVec(dim, Rational(0)), c));
  return f;
}

PLConvexFn plus_affine(const PLConvexFn& f, const AffineFn& ell) {
  PLConvexFn g = f;
  for (AffineFn& piece : g.pieces) piece = piece + ell;
  return g;
}

PLConvexFn scaled(const PLConvexFn& f, const Rational& c) {
  PLConvexFn g = f;
  for (AffineFn& piece : g.pieces) piece = piece.scaled(c);
  return g;
}

// 1. All five smooth reflexive polygons come back positive through the CLI.
void criterion_del_pezzo() {
  const auto start = Clock::now();
  int positive = 0;
  for (const char* name :
       {"delpezzo-p2", "delpezzo-p1xp1", "delpezzo-bl1p2", "delpezzo-bl2p2",
        "delpezzo-bl3p2"}) {
    std::ostringstream out, err;
    int code = run_cli({"analyze", std::string("catalog:") + name}, out, err);
    if (code == 0 &&
        out.str().find("uniformly relatively K-polystable") != std::string::npos) {
      ++positive;
    }
  }
  const double elapsed = ms_since(start);
  std::ostringstream detail;
  detail << positive << "/5 positive, " << elapsed << " ms";
  report(1, "del Pezzo surfaces all uniformly relatively K-polystable in < 1 s",
         positive == 5 && elapsed < 1000.0, detail.str());
}

// 2. Average boundary density equals the dimension on reflexive entries.
void criterion_reflexive_sbar() {
  int checked = 0;
  bool ok = true;
  for (const CatalogEntry& e : catalog()) {
    Polytope p = document_to_polytope(e.document);
    if (!is_reflexive(p)) continue;
    ++checked;
    if (sbar(moments(p)) != p.dim) ok = false;
  }
  report(2, "sbar = n exactly on every reflexive entry",
         ok && checked >= 9, std::to_string(checked) + " reflexive entries");
}

// 3. The extremal affine function vanishes exactly when the barycenter does.
void criterion_barycenter() {
  bool ok = true;
  int negatives = 0;
  for (const CatalogEntry& e : catalog()) {
    Polytope p = document_to_polytope(e.document);
    if (!is_reflexive(p)) {
      // Not anticanonically normalized: recenter first, then both sides of
      // the equivalence must come out true.
      auto [shifted, translation] = recenter(p);
      MomentTable mt = moments(shifted);
      if (!all_zero(mt.barycenter) || !extremal_affine(mt).v.is_zero()) ok = false;
      continue;
    }
    MomentTable mt = moments(p);
    ExtremalData ed = extremal_affine(mt);
    const bool bary_zero = all_zero(mt.barycenter);
    const bool v_zero = ed.v.is_zero();
    if (bary_zero != v_zero) ok = false;
    const bool expect_negative = e.name == "bl1p2" || e.name == "bl2p2";
    if (bary_zero == expect_negative) ok = false;
    if (!bary_zero) ++negatives;
  }
  report(3, "V = 0 iff barycenter = 0 across the catalog", ok && negatives == 2,
         std::to_string(negatives) + " negative cases");
}

// 4. Ehrhart interpolation recovers volume and half the boundary measure.
void criterion_ehrhart() {
  bool ok = true;
  int checked = 0;
  for (const CatalogEntry& e : catalog()) {
    Polytope p = document_to_polytope(e.document);
    EhrhartFit fit = ehrhart_fit(p, 6);  // throws if counts disagree up to m = 6
    MomentTable mt = moments(p);
    if (fit.leading != mt.vol) ok = false;
    if (2 * fit.subleading != mt.sigma_boundary) ok = false;
    ++checked;
  }
  report(4, "Ehrhart leading = vol and subleading = boundary/2, counts to m = 6",
         ok && checked == 15, std::to_string(checked) + " entries");
}

// 5. Weight-sum oracle at m = 16, 32, 64 approaches the exact functionals.
void criterion_oracle() {
  const auto start = Clock::now();
  Analysis cube = analyze("cube2");
  PLConvexFn f;
  f.pieces.push_back(AffineFn::zero(2));
  f.pieces.push_back(AffineFn({Rational(1), Rational(0)}, Rational(0)));
  OracleReport rep =
      df_asymptotic_check(cube.p, cube.ed, f, Rational(1), {16, 32, 64});
  const double elapsed = ms_since(start);
  const bool ok = rep.energy == Rational(3, 4) && rep.m_na == Rational(1, 4) &&
                  rep.f0_rel_err <= 0.01 && rep.m_na_rel_err <= 0.05 &&
                  elapsed < 10000.0;
  std::ostringstream detail;
  detail << "F0 err " << rep.f0_rel_err * 100 << "%, M err "
         << rep.m_na_rel_err * 100 << "%, " << elapsed << " ms";
  report(5, "weight-sum oracle hits E within 1% and M within 5% in < 10 s", ok,
         detail.str());
}

// 6. Exact functional identities on random piecewise linear data.
void criterion_identities() {
  const char* names[] = {"cube2", "p2", "square01", "bl2p2"};
  std::vector<Analysis> entries;
  for (const char* name : names) entries.push_back(analyze(name));

  auto rng = testing::make_rng(20240817);
  int checks = 0;
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const Analysis& a = entries[trial % 4];
    PLConvexFn f = testing::random_pl(rng, a.p.dim);
    AffineFn ell = testing::random_affine(rng, a.p.dim);
    Rational c(std::uniform_int_distribution<int>(1, 7)(rng),
               std::uniform_int_distribution<int>(1, 3)(rng));

    PLConvexFn affine_only;
    affine_only.pieces.push_back(ell);
    if (l_v(a.p, a.ed, affine_only) != 0) ok = false;
    if (l_v(a.p, a.ed, constant_pl(a.p.dim, Rational(1))) != 0) ok = false;
    if (l_v(a.p, a.ed, plus_affine(f, ell)) != l_v(a.p, a.ed, f)) ok = false;
    Rational jn = jnorm(a.p, a.mt, f).value;
    if (jnorm(a.p, a.mt, plus_affine(f, ell)).value != jn) ok = false;
    if (jnorm(a.p, a.mt, scaled(f, c)).value != c * jn) ok = false;
    ++checks;
  }
  report(6, "exact identities for L_V and the J norm, zero tolerance",
         ok && checks == 200, "200 trials x 5 identities");
}

// 7. The J-norm LP against a brute-force grid of twists.
void criterion_jnorm_grid() {
  Analysis cube = analyze("cube2");

  std::vector<PLConvexFn> fns;
  {
    PLConvexFn f1;
    f1.pieces.push_back(AffineFn::zero(2));
    f1.pieces.push_back(AffineFn({Rational(1), Rational(0)}, Rational(0)));
    PLConvexFn f2 = f1;
    f2.pieces.push_back(AffineFn({Rational(0), Rational(1)}, Rational(0)));
    PLConvexFn f3;
    f3.pieces.push_back(AffineFn::zero(2));
    f3.pieces.push_back(AffineFn({Rational(2), Rational(1)}, Rational(-1, 2)));
    f3.pieces.push_back(AffineFn({Rational(0), Rational(-1)}, Rational(1, 4)));
    fns = {f1, f2, f3};
  }

  // One grid step is 1/8, so the optimum sits within 1/16 per coordinate of
  // a grid point and the objective moves by at most
  //   sum_i (1/16) (|bary_i| + max_vertex |v_i|) = 1/8 on the centered cube.
  Rational slack(0);
  for (int i = 0; i < 2; ++i) {
    Rational coord_max(0);
    for (const QVec& v : cube.p.vertices) {
      coord_max = std::max(coord_max, Rational(abs(v[i])));
    }
    slack += Rational(1, 16) * (Rational(abs(cube.mt.barycenter[i])) + coord_max);
  }

  bool ok = true;
  std::ostringstream detail;
  detail << "slack " << format_rational(slack);
  for (const PLConvexFn& f : fns) {
    JNormResult lp = jnorm(cube.p, cube.mt, f);

    // Twisting by xi changes neither the subdivision nor the mean formula,
    // so the grid objective only needs f's values on its cell vertices.
    std::vector<QVec> verts = subdivision_vertices(subdivide_by_pl(cube.p, f));
    PLIntegrals ints = integral_pl(cube.p, f);
    Rational mean_f = ints.interior / cube.mt.vol;

    Rational best_grid;
    bool first = true;
    for (int gx = -32; gx <= 32; ++gx) {
      for (int gy = -32; gy <= 32; ++gy) {
        QVec xi{Rational(gx, 8), Rational(gy, 8)};
        Rational mean = mean_f + dot(xi, cube.mt.barycenter);
        Rational lowest = f.value(verts.front()) + dot(xi, verts.front());
        for (const QVec& v : verts) {
          lowest = std::min(lowest, f.value(v) + dot(xi, v));
        }
        Rational objective = mean - lowest;
        if (objective < lp.value) ok = false;  // LP must be a true lower bound
        if (first || objective < best_grid) best_grid = objective;
        first = false;
      }
    }
    if (best_grid - lp.value > slack) ok = false;
    for (const Rational& w : lp.witness.linear) {
      if (Rational(abs(w)) > 4) ok = false;  // optimum must live inside the scanned box
    }
    detail << ", gap " << format_rational(Rational(best_grid - lp.value));
  }
  report(7, "J-norm LP matches the twist grid within the Lipschitz slack", ok,
         detail.str());
}

// 8. The certified stability margin delta = 1/3 on the square and the plane.
void criterion_delta_certificate() {
  const Rational delta(1, 3);
  auto rng = testing::make_rng(90210);
  bool ok = true;
  int checks = 0;
  for (const char* name : {"square01", "p2"}) {
    Analysis a = analyze(name);
    SuffVerdict sv = sufficient_condition(a.p, a.ed);
    if (sv.delta != delta) ok = false;
    QVec x0 = best_interior_point(a.p).first;
    for (int trial = 0; trial < 100; ++trial) {
      PLConvexFn f = normalize_pl(a.p, testing::random_crease(rng, a.p), x0);
      Rational lhs = l_v(a.p, a.ed, f);
      Rational boundary = integral_pl(a.p, f).boundary;
      if (lhs < delta * boundary) ok = false;
      ++checks;
    }
  }
  report(8, "delta = 1/3 certificate holds exactly for random normalized creases",
         ok && checks == 200, "200 creases");
}

// 9. Integration is triangulation-independent and obeys the boundary bound.
void criterion_integration() {
  auto rng = testing::make_rng(424242);
  bool ok = true;
  int bound_checks = 0;
  for (const CatalogEntry& e : catalog()) {
    Polytope p = document_to_polytope(e.document);
    MomentTable a = moments(p, FanBase::LexSmallest);
    MomentTable b = moments(p, FanBase::LexLargest);
    if (a.interior != b.interior || a.boundary != b.boundary) ok = false;

    auto [x0, d_x0] = best_interior_point(p);
    const Rational factor = d_x0 / Rational(p.dim + 1);
    for (int trial = 0; trial < 100; ++trial) {
      PLConvexFn f = normalize_pl(p, testing::random_pl(rng, p.dim), x0);
      PLIntegrals ints = integral_pl(p, f);
      if (ints.interior > factor * ints.boundary) ok = false;
      ++bound_checks;
    }
  }
  report(9, "triangulation independence and the sharp integral bound", ok,
         std::to_string(bound_checks) + " bound checks");
}

// 10. Duistermaat-Heckman bookkeeping for the reference configuration.
void criterion_dh() {
  Analysis cube = analyze("cube2");
  PLConvexFn f;
  f.pieces.push_back(AffineFn::zero(2));
  f.pieces.push_back(AffineFn({Rational(1), Rational(0)}, Rational(0)));
  TestConfiguration tc = na_report(cube.p, cube.ed, f, Rational(1));

  bool ok = tc.dh.mean == tc.na.energy;
  ok = ok && tc.dh.cdf(tc.dh.support_min - 1) == 0;
  ok = ok && tc.dh.cdf(tc.dh.support_max) == 1;
  ok = ok && tc.dh.atoms.size() == 1 && tc.dh.atoms[0].first == 1 &&
       tc.dh.atoms[0].second == Rational(1, 2);

  // The same bookkeeping must hold away from the reference example.
  auto rng = testing::make_rng(1618);
  for (const char* name : {"p2", "bl1p2"}) {
    Analysis a = analyze(name);
    for (int trial = 0; trial < 5; ++trial) {
      PLConvexFn g = testing::random_crease(rng, a.p);
      Rational maxg = g.value(a.p.vertices.front());
      for (const QVec& v : a.p.vertices) maxg = std::max(maxg, g.value(v));
      TestConfiguration t2 = na_report(a.p, a.ed, g, maxg + 1);
      if (t2.dh.mean != t2.na.energy) ok = false;
      if (t2.dh.cdf(t2.dh.support_min - 1) != 0) ok = false;
      if (t2.dh.cdf(t2.dh.support_max) != 1) ok = false;
    }
  }
  report(10, "DH measure: mean, distribution endpoints, and atom mass", ok,
         "atom (1, 1/2) on the reference crease");
}

}  // namespace

int main() {
  criterion_del_pezzo();
  criterion_reflexive_sbar();
  criterion_barycenter();
  criterion_ehrhart();
  criterion_oracle();
  criterion_identities();
  criterion_jnorm_grid();
  criterion_delta_certificate();
  criterion_integration();
  criterion_dh();
  if (failures == 0) {
    std::printf("all 10 acceptance criteria satisfied\n");
  } else {
    std::printf("%d acceptance criteria failed\n", failures);
  }
  return failures;
}
