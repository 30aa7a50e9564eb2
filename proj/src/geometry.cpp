#include "toristab/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "toristab/errors.hpp"
#include "toristab/linalg.hpp"
#include "toristab/lp.hpp"

namespace toristab {

bool AffineFn::is_constant() const {
  for (const auto& v : linear)
    if (v != 0) return false;
  return true;
}

bool AffineFn::is_zero() const { return is_constant() && constant == 0; }

AffineFn AffineFn::operator+(const AffineFn& other) const {
  assert(dim() == other.dim());
  AffineFn out = *this;
  for (int i = 0; i < dim(); ++i) out.linear[i] += other.linear[i];
  out.constant += other.constant;
  return out;
}

AffineFn AffineFn::operator-() const {
  AffineFn out = *this;
  for (auto& v : out.linear) v = -v;
  out.constant = -out.constant;
  return out;
}

AffineFn AffineFn::scaled(const Rational& factor) const {
  AffineFn out = *this;
  for (auto& v : out.linear) v *= factor;
  out.constant *= factor;
  return out;
}

std::string AffineFn::to_string() const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (linear[i] == 0) continue;
    if (!out.empty()) out += linear[i] > 0 ? " + " : " - ";
    else if (linear[i] < 0) out += "-";
    Rational mag = abs(linear[i]);
    if (mag != 1) out += format_rational(mag) + "*";
    out += "x" + std::to_string(i + 1);
  }
  if (out.empty()) return format_rational(constant);
  if (constant != 0) {
    out += constant > 0 ? " + " : " - ";
    out += format_rational(abs(constant));
  }
  return out;
}

AffineFn HalfSpace::support() const {
  QVec lin;
  lin.reserve(normal.size());
  for (const Int& v : normal) lin.emplace_back(v);
  return AffineFn(std::move(lin), offset);
}

std::string HalfSpace::to_string() const {
  QVec lin;
  for (const Int& v : normal) lin.emplace_back(v);
  return AffineFn(std::move(lin), offset).to_string() + " >= 0";
}

HalfSpace canonical_halfspace(const QVec& normal, const Rational& offset) {
  Int scale = 1;
  for (const auto& v : normal) scale = lcm(scale, denominator(v));
  ZVec zn;
  zn.reserve(normal.size());
  for (const auto& v : normal) zn.push_back(numerator(v * Rational(scale)));
  Int g = linalg::content(zn);
  if (g == 0) throw Error("canonical_halfspace: zero normal");
  for (auto& v : zn) v /= g;
  return HalfSpace{std::move(zn), offset * Rational(scale) / Rational(g)};
}

std::vector<int> Polytope::active_facets(const QVec& vertex) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < facets.size(); ++j)
    if (dot(facets[j].normal, vertex) + facets[j].offset == 0)
      out.push_back(static_cast<int>(j));
  return out;
}

bool Polytope::contains(const QVec& point) const {
  for (const auto& h : facets)
    if (dot(h.normal, point) + h.offset < 0) return false;
  return true;
}

bool Polytope::strictly_contains(const QVec& point) const {
  for (const auto& h : facets)
    if (dot(h.normal, point) + h.offset <= 0) return false;
  return true;
}

namespace {

HalfSpace reduce_halfspace(const HalfSpace& h) {
  Int g = linalg::content(h.normal);
  if (g == 0) throw ValidationError("facet normal must be nonzero");
  if (g == 1) return h;
  ZVec zn = h.normal;
  for (auto& v : zn) v /= g;
  return HalfSpace{std::move(zn), h.offset / Rational(g)};
}

std::vector<QVec> enumerate_vertices(int dim, const std::vector<HalfSpace>& facets) {
  const int r = static_cast<int>(facets.size());
  std::vector<QVec> found;
  std::vector<int> pick(dim);

  auto try_subset = [&]() {
    linalg::QMatrix a(dim, QVec(dim));
    QVec b(dim);
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < dim; ++k) a[i][k] = Rational(facets[pick[i]].normal[k]);
      b[i] = -facets[pick[i]].offset;
    }
    auto x = linalg::solve(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& h : facets)
      if (dot(h.normal, *x) + h.offset < 0) return;
    found.push_back(std::move(*x));
  };

  // All dim-subsets of the facet list, in lexicographic index order.
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == dim) {
      try_subset();
      return;
    }
    for (int i = start; i <= r - (dim - depth); ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (r >= dim) rec(rec, 0, 0);

  std::sort(found.begin(), found.end(), lex_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

// LP probes along the coordinate directions. Throws for an empty or
// unbounded feasible set.
void check_bounded_nonempty(int dim, const std::vector<HalfSpace>& facets,
                            const std::string& name) {
  LinearProgram lp;
  lp.objective.assign(dim, Rational(0));
  for (const auto& h : facets) {
    LPConstraint c;
    for (const Int& v : h.normal) c.coeffs.emplace_back(v);
    c.rel = Rel::Ge;
    c.rhs = -h.offset;
    lp.constraints.push_back(std::move(c));
  }
  for (int i = 0; i < dim; ++i) {
    for (int sign : {1, -1}) {
      for (int k = 0; k < dim; ++k)
        lp.objective[k] = (k == i) ? Rational(-sign) : Rational(0);
      LPSolution sol = solve_lp(lp);
      if (sol.status == LPStatus::Infeasible)
        throw ValidationError("polytope '" + name + "' is empty");
      if (sol.status == LPStatus::Unbounded)
        throw ValidationError("polytope '" + name + "' is unbounded in direction " +
                              (sign > 0 ? "+" : "-") + "x" + std::to_string(i + 1));
    }
  }
}

struct BuildResult {
  std::optional<Polytope> polytope;
  std::string failure;  // set when polytope is empty
};

BuildResult build_polytope(int dim, std::vector<HalfSpace> raw, std::string name,
                           const PolytopeOptions& options) {
  if (dim < 1) throw ValidationError("polytope dimension must be at least 1");

  std::vector<HalfSpace> facets;
  facets.reserve(raw.size());
  for (auto& h : raw) {
    if (static_cast<int>(h.normal.size()) != dim)
      throw ValidationError("facet normal arity does not match dimension");
    HalfSpace red = reduce_halfspace(h);
    auto dup = std::find(facets.begin(), facets.end(), red);
    if (dup != facets.end()) {
      if (options.policy == RedundancyPolicy::Reject)
        throw ValidationError("duplicate facet " + red.to_string() + " in '" + name + "'");
      continue;
    }
    facets.push_back(std::move(red));
  }

  if (options.policy == RedundancyPolicy::Reject && !options.assume_bounded)
    check_bounded_nonempty(dim, facets, name);

  std::vector<QVec> vertices = enumerate_vertices(dim, facets);
  if (vertices.empty())
    return {std::nullopt, "no vertices: empty or unbounded intersection"};
  if (linalg::affine_rank(vertices) < dim)
    return {std::nullopt, "interior is empty (lower-dimensional intersection)"};

  // Each half-space must support a facet: its tight vertex set has to be
  // (dim-1)-dimensional.
  std::vector<HalfSpace> kept;
  for (const auto& h : facets) {
    std::vector<QVec> tight;
    for (const auto& v : vertices)
      if (dot(h.normal, v) + h.offset == 0) tight.push_back(v);
    if (linalg::affine_rank(tight) == dim - 1) {
      kept.push_back(h);
    } else if (options.policy == RedundancyPolicy::Reject) {
      throw ValidationError("redundant facet " + h.to_string() + " in '" + name +
                            "': not tight on a facet");
    }
  }

  Polytope p;
  p.dim = dim;
  p.facets = std::move(kept);
  p.vertices = std::move(vertices);
  p.name = std::move(name);
  return {std::move(p), ""};
}

}  // namespace

Polytope make_polytope(int dim, std::vector<HalfSpace> facets, std::string name,
                       const PolytopeOptions& options) {
  BuildResult r = build_polytope(dim, std::move(facets), name, options);
  if (!r.polytope)
    throw ValidationError("polytope '" + name + "': " + r.failure);
  return std::move(*r.polytope);
}

std::optional<Polytope> try_make_cell(int dim, std::vector<HalfSpace> facets,
                                      std::string name) {
  PolytopeOptions options;
  options.policy = RedundancyPolicy::Drop;
  options.assume_bounded = true;
  BuildResult r = build_polytope(dim, std::move(facets), std::move(name), options);
  if (!r.polytope) return std::nullopt;
  return std::move(*r.polytope);
}

std::vector<QVec> vertices_from_facets(const Polytope& p) {
  return enumerate_vertices(p.dim, p.facets);
}

DelzantReport delzant_check(const Polytope& p) {
  DelzantReport report;
  report.delzant = true;
  for (const auto& v : p.vertices) {
    VertexDiagnostic d;
    d.vertex = v;
    d.active = p.active_facets(v);
    d.simple = static_cast<int>(d.active.size()) == p.dim;
    if (d.simple) {
      linalg::QMatrix m(p.dim, QVec(p.dim));
      for (int i = 0; i < p.dim; ++i)
        for (int k = 0; k < p.dim; ++k)
          m[i][k] = Rational(p.facets[d.active[i]].normal[k]);
      Rational det = linalg::determinant(std::move(m));
      assert(denominator(det) == 1);
      d.normal_det = numerator(det);
      d.unimodular = d.normal_det == 1 || d.normal_det == -1;
    }
    if (!d.simple || !d.unimodular) report.delzant = false;
    report.vertices.push_back(std::move(d));
  }
  return report;
}

bool is_integral(const Polytope& p) {
  for (const auto& v : p.vertices)
    for (const auto& c : v)
      if (denominator(c) != 1) return false;
  return true;
}

bool is_reflexive(const Polytope& p) {
  if (!is_integral(p)) return false;
  for (const auto& h : p.facets)
    if (h.offset != 1) return false;
  return p.strictly_contains(QVec(p.dim, Rational(0)));
}

QVec LatticeBasisMap::coordinates(const QVec& x) const {
  const int n = static_cast<int>(normal.size());
  QVec diff(n);
  for (int i = 0; i < n; ++i) diff[i] = x[i] - anchor[i];
  QVec t(n - 1);
  for (int i = 0; i < n - 1; ++i) t[i] = dot(inverse_rows[i], diff);
  assert(dot(inverse_rows[n - 1], diff) == 0 && "point must lie on the hyperplane");
  return t;
}

LatticeBasisMap hyperplane_lattice_basis(const HalfSpace& h) {
  const int n = static_cast<int>(h.normal.size());
  assert(linalg::content(h.normal) == 1);
  std::vector<ZVec> cols = linalg::unimodular_complement(h.normal);

  LatticeBasisMap map;
  map.normal = h.normal;
  for (int i = 0; i < n - 1; ++i) map.basis.push_back(cols[i]);
  map.anchor.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) map.anchor[i] = -h.offset * Rational(cols[n - 1][i]);

  linalg::QMatrix u(n, QVec(n));
  for (int col = 0; col < n; ++col)
    for (int row = 0; row < n; ++row) u[row][col] = Rational(cols[col][row]);
  auto inv = linalg::inverse(u);
  assert(inv && "unimodular matrix is invertible");
  map.inverse_rows = std::move(*inv);
  return map;
}

std::pair<QVec, Rational> best_interior_point(const Polytope& p) {
  std::vector<AffineFn> supports;
  supports.reserve(p.facets.size());
  for (const auto& h : p.facets) supports.push_back(h.support());
  auto [x, value] = minimize_maximum(supports, p);
  assert(value > 0);

  // Lexicographic refinement: restrict to the optimal face and minimize the
  // coordinates one at a time.
  LinearProgram lp;
  lp.objective.assign(p.dim, Rational(0));
  for (const auto& h : p.facets) {
    LPConstraint lo;
    for (const Int& v : h.normal) lo.coeffs.emplace_back(v);
    lo.rel = Rel::Ge;
    lo.rhs = -h.offset;
    lp.constraints.push_back(lo);
    lo.rel = Rel::Le;
    lo.rhs = value - h.offset;
    lp.constraints.push_back(std::move(lo));
  }
  QVec point(p.dim);
  for (int i = 0; i < p.dim; ++i) {
    for (int k = 0; k < p.dim; ++k)
      lp.objective[k] = (k == i) ? Rational(1) : Rational(0);
    LPSolution sol = solve_lp(lp);
    assert(sol.status == LPStatus::Optimal);
    point[i] = sol.value;
    LPConstraint pin;
    pin.coeffs.assign(p.dim, Rational(0));
    pin.coeffs[i] = 1;
    pin.rel = Rel::Eq;
    pin.rhs = sol.value;
    lp.constraints.push_back(std::move(pin));
  }
  return {std::move(point), value};
}

}  // namespace toristab
