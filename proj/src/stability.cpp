#include "toristab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "toristab/errors.hpp"
#include "toristab/linalg.hpp"
#include "toristab/lp.hpp"

namespace toristab {

namespace {

int thread_budget(std::size_t jobs) {
  long cap = 0;
  if (const char* env = std::getenv("TORIC_K_THREADS"); env && *env) {
    cap = std::strtol(env, nullptr, 10);
  }
  if (cap <= 0) cap = static_cast<long>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  return static_cast<int>(std::min<long>(cap, static_cast<long>(jobs)));
}

/// Runs work(0..count-1) on up to TORIC_K_THREADS threads. The output slot
/// of each job is fixed in advance, so the schedule cannot affect results.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& work) {
  const int threads = thread_budget(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Calls visit(alpha) for every lattice point alpha of the m-th dilate.
void for_each_lattice_point(const Polytope& p, int m,
                            const std::function<void(const ZVec&)>& visit) {
  const int n = p.dim;
  ZVec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rational a = p.vertices.front()[i];
    Rational b = a;
    for (const QVec& v : p.vertices) {
      a = std::min(a, v[i]);
      b = std::max(b, v[i]);
    }
    lo[i] = rational_ceil(Rational(a * m));
    hi[i] = rational_floor(Rational(b * m));
    if (lo[i] > hi[i]) return;
  }
  ZVec alpha = lo;
  for (;;) {
    bool inside = true;
    for (const HalfSpace& facet : p.facets) {
      if (Rational(dot(facet.normal, alpha)) + m * facet.offset < 0) {
        inside = false;
        break;
      }
    }
    if (inside) visit(alpha);
    int i = n - 1;
    while (i >= 0 && alpha[i] == hi[i]) {
      alpha[i] = lo[i];
      --i;
    }
    if (i < 0) return;
    ++alpha[i];
  }
}

bool slope_less(const ZVec& a, const ZVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SuffVerdict sufficient_condition(const Polytope& p, const ExtremalData& ed,
                                 const std::optional<QVec>& x0) {
  const int n = p.dim;
  SuffVerdict out;
  if (x0) {
    if (static_cast<int>(x0->size()) != n || !p.strictly_contains(*x0)) {
      throw ValidationError("base point must lie in the interior of the polytope");
    }
    out.x0 = *x0;
    out.d_x0 = p.facets.front().support().value(out.x0);
    for (const HalfSpace& facet : p.facets) {
      out.d_x0 = std::max(out.d_x0, facet.support().value(out.x0));
    }
  } else {
    auto [point, value] = best_interior_point(p);
    out.x0 = std::move(point);
    out.d_x0 = value;
  }
  if (out.d_x0 <= 0) throw Error("degenerate support value at base point");

  out.sbar_value = ed.sbar_value;
  out.v_zero = ed.v.is_zero();
  out.max_v = 0;
  if (!out.v_zero) {
    out.max_v = ed.v.value(p.vertices.front());
    for (const QVec& v : p.vertices) out.max_v = std::max(out.max_v, ed.v.value(v));
  }
  out.threshold = Rational(n + 1) / out.d_x0;
  const Rational load = out.sbar_value + out.max_v;
  out.applies = out.v_zero ? load < out.threshold : load <= out.threshold;
  out.delta = 1 - out.d_x0 * load / Rational(n + 1);
  out.branch =
      out.applies ? (out.v_zero ? "V=0 strict" : "V!=0 non-strict") : "inconclusive";
  out.verdict = out.applies ? "uniformly relatively K-polystable" : "inconclusive";
  return out;
}

FanoVerdict fano_analysis(const Polytope& p, const ExtremalData& ed) {
  FanoVerdict out;
  out.reflexive = is_reflexive(p);
  out.barycenter = ed.mt.barycenter;
  out.rhs = ed.rhs;
  out.v_zero = ed.v.is_zero();
  bool bary_zero = true;
  for (const Rational& c : out.barycenter) {
    if (c != 0) bary_zero = false;
  }
  bool rhs_zero = true;
  for (const Rational& c : out.rhs) {
    if (c != 0) rhs_zero = false;
  }
  if (out.reflexive) {
    bool rhs_matches = true;
    for (std::size_t i = 0; i < out.rhs.size(); ++i) {
      if (out.rhs[i] != ed.mt.vol * out.barycenter[i]) rhs_matches = false;
    }
    out.consistent = rhs_matches && out.v_zero == bary_zero && rhs_zero == bary_zero;
    out.conditions = {
        {"uniformly K-polystable", bary_zero, true},
        {"K-polystable", bary_zero, true},
        {"K-semistable", bary_zero, true},
        {"Futaki character vanishes", rhs_zero, false},
        {"barycenter at the origin", bary_zero, false},
        {"extremal affine function vanishes", out.v_zero, false},
    };
    out.verdict =
        bary_zero ? "uniformly K-polystable" : "not K-semistable (Fano criterion)";
  } else {
    out.verdict = "barycenter criterion requires a reflexive polytope";
  }
  return out;
}

DestabReport destabilizer_search(const Polytope& p, const ExtremalData& ed,
                                 int grid_depth, int max_slope) {
  if (grid_depth < 1) throw ValidationError("grid depth must be positive");
  if (max_slope < 1) throw ValidationError("max slope must be positive");
  const int n = p.dim;

  std::vector<ZVec> slopes;
  ZVec a(n, Int(-max_slope));
  for (;;) {
    if (linalg::content(a) == 1) slopes.push_back(a);
    int i = n - 1;
    while (i >= 0 && a[i] == max_slope) {
      a[i] = -max_slope;
      --i;
    }
    if (i < 0) break;
    ++a[i];
  }

  struct Job {
    ZVec slope;
    Rational intercept;
  };
  std::vector<Job> jobs;
  for (const ZVec& slope : slopes) {
    Rational lo = dot(slope, p.vertices.front());
    Rational hi = lo;
    for (const QVec& v : p.vertices) {
      const Rational value = dot(slope, v);
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    // The crease { <slope, x> + b = 0 } meets the interior exactly when
    // -b lies strictly between the extreme values of <slope, x>.
    const Int tmin = rational_floor(Rational(-hi * grid_depth)) + 1;
    const Int tmax = rational_ceil(Rational(-lo * grid_depth)) - 1;
    for (Int t = tmin; t <= tmax; ++t) {
      jobs.push_back({slope, Rational(t, Int(grid_depth))});
    }
  }

  std::vector<DestabCandidate> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    QVec linear(n);
    for (int q = 0; q < n; ++q) linear[q] = Rational(job.slope[q]);
    PLConvexFn f;
    f.pieces.push_back(AffineFn(QVec(n, Rational(0)), 0));
    f.pieces.push_back(AffineFn(std::move(linear), job.intercept));

    DestabCandidate c;
    c.slope = job.slope;
    c.intercept = job.intercept;
    c.fn = f;
    c.lv = l_v(p, ed, f);
    c.jn = jnorm(p, ed.mt, f).value;
    if (c.jn <= 0) throw Error("crease function with vanishing norm");
    c.ratio = c.lv / c.jn;
    results[i] = std::move(c);
  });

  std::sort(results.begin(), results.end(),
            [](const DestabCandidate& x, const DestabCandidate& y) {
              if (x.ratio != y.ratio) return x.ratio < y.ratio;
              if (x.slope != y.slope) return slope_less(x.slope, y.slope);
              return x.intercept < y.intercept;
            });

  DestabReport out;
  out.grid_depth = grid_depth;
  out.max_slope = max_slope;
  out.family = "creases max(0, <a,x> + b), a primitive with |a_i| <= " +
               std::to_string(max_slope) + ", b in (1/" +
               std::to_string(grid_depth) + ")Z, crease meeting the interior";
  out.candidates = std::move(results);
  out.destabilizer_found =
      !out.candidates.empty() && out.candidates.front().lv <= 0;
  out.verdict =
      out.destabilizer_found ? "destabilizer-certificate" : "no-destabilizer-found";
  return out;
}

Int ehrhart_count(const Polytope& p, int m) {
  if (m < 0) throw ValidationError("dilate factor must be nonnegative");
  if (!is_integral(p)) {
    throw ValidationError("lattice-point counting requires an integral polytope");
  }
  if (m == 0) return 1;
  Int count = 0;
  for_each_lattice_point(p, m, [&](const ZVec&) { ++count; });
  return count;
}

EhrhartFit ehrhart_fit(const Polytope& p, int m_max) {
  const int n = p.dim;
  if (m_max < 0) m_max = n + 1;
  if (m_max < n + 1) {
    throw ValidationError("need at least " + std::to_string(n + 1) +
                          " samples to interpolate");
  }
  EhrhartFit out;
  for (int m = 1; m <= m_max; ++m) out.counts.push_back(ehrhart_count(p, m));

  linalg::QMatrix vandermonde(n + 1, QVec(n + 1));
  QVec values(n + 1);
  for (int r = 0; r <= n; ++r) {
    const int m = r + 1;
    Rational power(1);
    for (int c = 0; c <= n; ++c) {
      vandermonde[r][c] = power;
      power *= m;
    }
    values[r] = Rational(out.counts[r]);
  }
  auto solved = linalg::solve(std::move(vandermonde), std::move(values));
  if (!solved) throw Error("interpolation system is singular");
  out.coeffs = std::move(*solved);
  out.leading = out.coeffs[n];
  out.subleading = out.coeffs[n - 1];

  for (int m = n + 2; m <= m_max; ++m) {
    Rational predicted(0);
    Rational power(1);
    for (int c = 0; c <= n; ++c) {
      predicted += out.coeffs[c] * power;
      power *= m;
    }
    if (predicted != out.counts[m - 1]) {
      throw Error("lattice-point count at dilate " + std::to_string(m) +
                  " disagrees with the interpolated polynomial");
    }
  }
  return out;
}

Rational weight_sum(const Polytope& p, const PLConvexFn& f, const Rational& level,
                    int m) {
  if (m < 1) throw ValidationError("dilate factor must be positive");
  if (!is_integral(p)) {
    throw ValidationError("weight sums require an integral polytope");
  }
  Rational maxf = f.value(p.vertices.front());
  for (const QVec& v : p.vertices) maxf = std::max(maxf, f.value(v));
  if (level < maxf) {
    throw ValidationError("level must be at least max f = " + format_rational(maxf));
  }
  const int n = p.dim;
  Rational acc(0);
  for_each_lattice_point(p, m, [&](const ZVec& alpha) {
    QVec x(n);
    for (int i = 0; i < n; ++i) x[i] = Rational(alpha[i], Int(m));
    acc += level - f.value(x);
  });
  return Rational(m * acc);
}

OracleReport df_asymptotic_check(const Polytope& p, const ExtremalData& ed,
                                 const PLConvexFn& f, const Rational& level,
                                 const std::vector<int>& sample_m) {
  if (sample_m.size() < 3) {
    throw ValidationError("need at least three sample dilates for the fit");
  }
  for (std::size_t i = 0; i < sample_m.size(); ++i) {
    if (sample_m[i] < 1 || (i > 0 && sample_m[i] <= sample_m[i - 1])) {
      throw ValidationError("sample dilates must be positive and increasing");
    }
  }
  OracleReport out;
  out.sample_m = sample_m;
  for (const int m : sample_m) {
    out.counts.push_back(ehrhart_count(p, m));
    out.weights.push_back(weight_sum(p, f, level, m));
    out.y.push_back(Rational(out.weights.back() / (m * Rational(out.counts.back()))));
  }

  // Least squares for y = f0 + f1/m: exact 2x2 normal equations in the
  // regressor 1/m.
  Rational s1(0), s2(0), sy(0), sxy(0);
  for (std::size_t i = 0; i < sample_m.size(); ++i) {
    const Rational x = Rational(1, Int(sample_m[i]));
    s1 += x;
    s2 += x * x;
    sy += out.y[i];
    sxy += x * out.y[i];
  }
  const Rational k(static_cast<int>(sample_m.size()));
  const Rational det = k * s2 - s1 * s1;
  out.f0 = (s2 * sy - s1 * sxy) / det;
  out.f1 = (k * sxy - s1 * sy) / det;

  const PLIntegrals ints = integral_pl(p, f);
  out.energy = level - ints.interior / ed.mt.vol;
  out.m_na = (ints.boundary - ed.sbar_value * ints.interior) / ed.mt.vol;

  auto rel_err = [](const Rational& got, const Rational& expected) {
    if (expected == 0) {
      return std::abs(got.convert_to<double>());
    }
    return std::abs(Rational((got - expected) / expected).convert_to<double>());
  };
  out.f0_rel_err = rel_err(out.f0, out.energy);
  out.m_na_rel_err = rel_err(Rational(-2 * out.f1), out.m_na);
  return out;
}

}  // namespace toristab
