#include "toristab/integrate.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "toristab/errors.hpp"

namespace toristab {

namespace {

std::vector<std::vector<int>> tight_vertex_sets(const Polytope& p) {
  std::vector<std::vector<int>> tight(p.facets.size());
  for (std::size_t j = 0; j < p.facets.size(); ++j) {
    for (std::size_t v = 0; v < p.vertices.size(); ++v)
      if (dot(p.facets[j].normal, p.vertices[v]) + p.facets[j].offset == 0)
        tight[j].push_back(static_cast<int>(v));
  }
  return tight;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Triangulates the face spanned by the given vertex indices (sorted, the
// vertex list itself is in lexicographic order) by coning from the first or
// last vertex over triangulations of the subfaces avoiding it.
void triangulate_face(const Polytope& p, const std::vector<std::vector<int>>& tight,
                      const std::vector<int>& face, int face_dim, FanBase base,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(face.size()) == face_dim + 1) {
    out.push_back(face);
    return;
  }
  const int v0 = base == FanBase::LexSmallest ? face.front() : face.back();

  std::set<std::vector<int>> seen;
  for (std::size_t j = 0; j < tight.size(); ++j) {
    std::vector<int> sub = intersect_sorted(face, tight[j]);
    if (sub.size() == face.size()) continue;  // facet contains the whole face
    if (std::binary_search(sub.begin(), sub.end(), v0)) continue;
    if (sub.empty()) continue;
    std::vector<QVec> pts;
    pts.reserve(sub.size());
    for (int idx : sub) pts.push_back(p.vertices[idx]);
    if (linalg::affine_rank(pts) != face_dim - 1) continue;
    if (!seen.insert(sub).second) continue;

    std::size_t first_new = out.size();
    triangulate_face(p, tight, sub, face_dim - 1, base, out);
    for (std::size_t i = first_new; i < out.size(); ++i) {
      out[i].push_back(v0);
      std::sort(out[i].begin(), out[i].end());
    }
  }
}

std::vector<std::vector<int>> triangulate_indices(const Polytope& p,
                                                  const std::vector<int>& face,
                                                  int face_dim, FanBase base) {
  std::vector<std::vector<int>> out;
  triangulate_face(p, tight_vertex_sets(p), face, face_dim, base, out);
  return out;
}

Int factorial(int k) {
  Int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<Exponent> exponents_up_to(int dim, int max_degree) {
  std::vector<Exponent> out;
  Exponent current(dim, 0);
  // Degree-ordered enumeration keeps the moment tables easy to read.
  for (int deg = 0; deg <= max_degree; ++deg) {
    auto emit = [&](auto&& self, int pos, int remaining) -> void {
      if (pos == dim - 1) {
        current[pos] = remaining;
        out.push_back(current);
        current[pos] = 0;
        return;
      }
      for (int k = remaining; k >= 0; --k) {
        current[pos] = k;
        self(self, pos + 1, remaining - k);
        current[pos] = 0;
      }
    };
    emit(emit, 0, deg);
  }
  return out;
}

std::vector<Simplex> triangulate(const Polytope& p, FanBase base) {
  std::vector<int> all(p.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  auto tuples = triangulate_indices(p, all, p.dim, base);
  std::vector<Simplex> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) {
    Simplex s;
    for (int idx : t) s.vertices.push_back(p.vertices[idx]);
    out.push_back(std::move(s));
  }
  return out;
}

Rational simplex_volume(const Simplex& s) {
  const int d = static_cast<int>(s.vertices.size()) - 1;
  assert(d >= 0);
  if (d == 0) return 1;
  assert(static_cast<int>(s.vertices[0].size()) == d);
  linalg::QMatrix m(d, QVec(d));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) m[i][k] = s.vertices[i + 1][k] - s.vertices[0][k];
  Rational det = linalg::determinant(std::move(m));
  return abs(det) / Rational(factorial(d));
}

Rational affine_simplex_moment(const std::vector<QVec>& vertices, const Rational& measure,
                               const Exponent& alpha) {
  const int m = static_cast<int>(vertices.size()) - 1;
  assert(m >= 0);
  std::vector<int> slots;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    assert(alpha[i] >= 0);
    for (int k = 0; k < alpha[i]; ++k) slots.push_back(static_cast<int>(i));
  }
  const int s = static_cast<int>(slots.size());

  // x = sum_i b_i v_i on the standard simplex; expanding x^alpha gives a sum
  // over assignments of monomial factors to vertices, and each barycentric
  // monomial integrates to measure * m! * prod(counts!) / (m + s)!.
  Rational total = 0;
  std::vector<int> counts(m + 1, 0);
  auto rec = [&](auto&& self, int slot, Rational coeff) -> void {
    if (coeff == 0) return;
    if (slot == s) {
      Int weight = 1;
      for (int c : counts) weight *= factorial(c);
      total += coeff * Rational(weight);
      return;
    }
    const int coord = slots[slot];
    for (int v = 0; v <= m; ++v) {
      ++counts[v];
      self(self, slot + 1, coeff * vertices[v][coord]);
      --counts[v];
    }
  };
  rec(rec, 0, Rational(1));
  return measure * total * Rational(factorial(m)) / Rational(factorial(m + s));
}

Rational simplex_moment(const Simplex& s, const Exponent& alpha) {
  return affine_simplex_moment(s.vertices, simplex_volume(s), alpha);
}

std::vector<std::pair<std::vector<QVec>, Rational>> facet_sigma_simplices(
    const Polytope& p, int facet_index, FanBase base) {
  const int n = p.dim;
  LatticeBasisMap chart = hyperplane_lattice_basis(p.facets[facet_index]);

  std::vector<int> face;
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    if (dot(p.facets[facet_index].normal, p.vertices[v]) + p.facets[facet_index].offset == 0)
      face.push_back(static_cast<int>(v));
  auto tuples = triangulate_indices(p, face, n - 1, base);

  std::vector<std::pair<std::vector<QVec>, Rational>> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<QVec> verts;
    verts.reserve(t.size());
    for (int idx : t) verts.push_back(p.vertices[idx]);
    Rational measure;
    if (n == 1) {
      measure = 1;  // point facet: the lattice chart is zero-dimensional
    } else {
      Simplex in_chart;
      for (const auto& v : verts) in_chart.vertices.push_back(chart.coordinates(v));
      measure = simplex_volume(in_chart);
    }
    out.emplace_back(std::move(verts), std::move(measure));
  }
  return out;
}

std::map<Exponent, Rational> interior_moments(const Polytope& p, int max_degree,
                                              FanBase base) {
  auto tris = triangulate(p, base);
  std::map<Exponent, Rational> out;
  for (const auto& alpha : exponents_up_to(p.dim, max_degree)) {
    Rational acc = 0;
    for (const auto& s : tris) acc += simplex_moment(s, alpha);
    out[alpha] = acc;
  }
  return out;
}

MomentTable moments(const Polytope& p, FanBase base) {
  MomentTable mt;
  mt.dim = p.dim;
  mt.interior = interior_moments(p, 2, base);

  mt.boundary.resize(p.facets.size());
  auto alphas = exponents_up_to(p.dim, 2);
  for (std::size_t j = 0; j < p.facets.size(); ++j) {
    auto simplices = facet_sigma_simplices(p, static_cast<int>(j), base);
    for (const auto& alpha : alphas) {
      Rational acc = 0;
      for (const auto& [verts, measure] : simplices)
        acc += affine_simplex_moment(verts, measure, alpha);
      mt.boundary[j][alpha] = acc;
    }
  }

  Exponent zero(p.dim, 0);
  mt.vol = mt.interior.at(zero);
  mt.sigma_boundary = 0;
  for (const auto& b : mt.boundary) mt.sigma_boundary += b.at(zero);
  mt.barycenter.assign(p.dim, Rational(0));
  mt.second_moment.assign(p.dim, QVec(p.dim, Rational(0)));
  for (int i = 0; i < p.dim; ++i) {
    Exponent ei = zero;
    ei[i] = 1;
    mt.barycenter[i] = mt.interior.at(ei) / mt.vol;
    for (int j = 0; j < p.dim; ++j) {
      Exponent eij = zero;
      eij[i] += 1;
      eij[j] += 1;
      mt.second_moment[i][j] = mt.interior.at(eij);
    }
  }
  return mt;
}

Rational PLConvexFn::value(const QVec& x) const {
  assert(!pieces.empty());
  Rational best = pieces[0].value(x);
  for (std::size_t k = 1; k < pieces.size(); ++k) best = std::max(best, pieces[k].value(x));
  return best;
}

int PLConvexFn::active_piece(const QVec& x) const {
  assert(!pieces.empty());
  int arg = 0;
  Rational best = pieces[0].value(x);
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    Rational v = pieces[k].value(x);
    if (v > best) {
      best = v;
      arg = static_cast<int>(k);
    }
  }
  return arg;
}

Subdivision subdivide_by_pl(const Polytope& p, const PLConvexFn& f) {
  if (f.pieces.empty()) throw ValidationError("PL function needs at least one piece");
  const int n = p.dim;
  for (const auto& piece : f.pieces)
    if (piece.dim() != n)
      throw ValidationError("PL piece arity does not match the polytope dimension");

  std::vector<AffineFn> pieces;
  for (const auto& piece : f.pieces)
    if (std::find(pieces.begin(), pieces.end(), piece) == pieces.end())
      pieces.push_back(piece);

  Subdivision sub;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    bool dead = false;
    std::vector<HalfSpace> halfspaces = p.facets;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j == k) continue;
      QVec normal(n);
      for (int i = 0; i < n; ++i) normal[i] = pieces[k].linear[i] - pieces[j].linear[i];
      Rational offset = pieces[k].constant - pieces[j].constant;
      bool zero = std::all_of(normal.begin(), normal.end(),
                              [](const Rational& v) { return v == 0; });
      if (zero) {
        if (offset < 0) {
          dead = true;  // piece j strictly dominates piece k everywhere
          break;
        }
        continue;
      }
      halfspaces.push_back(canonical_halfspace(normal, offset));
    }
    if (dead) continue;
    auto cell = try_make_cell(n, std::move(halfspaces),
                              p.name + "#cell" + std::to_string(sub.cells.size()));
    if (!cell) continue;  // piece never attains the max on a full-dim set
    int index = static_cast<int>(sub.fn.pieces.size());
    sub.fn.pieces.push_back(pieces[k]);
    sub.cells.push_back(SubdivisionCell{std::move(*cell), index});
  }
  assert(!sub.cells.empty());
  return sub;
}

namespace {

Rational integrate_affine(const std::map<Exponent, Rational>& m, const AffineFn& g) {
  const int n = g.dim();
  Exponent zero(n, 0);
  Rational acc = g.constant * m.at(zero);
  for (int i = 0; i < n; ++i) {
    if (g.linear[i] == 0) continue;
    Exponent ei = zero;
    ei[i] = 1;
    acc += g.linear[i] * m.at(ei);
  }
  return acc;
}

Rational integrate_product(const std::map<Exponent, Rational>& m, const AffineFn& g,
                           const AffineFn& h) {
  const int n = g.dim();
  Exponent zero(n, 0);
  Rational acc = g.constant * h.constant * m.at(zero);
  for (int i = 0; i < n; ++i) {
    Exponent ei = zero;
    ei[i] = 1;
    const Rational& mi = m.at(ei);
    acc += (g.constant * h.linear[i] + h.constant * g.linear[i]) * mi;
    for (int j = 0; j < n; ++j) {
      if (g.linear[i] == 0 || h.linear[j] == 0) continue;
      Exponent eij = zero;
      eij[i] += 1;
      eij[j] += 1;
      acc += g.linear[i] * h.linear[j] * m.at(eij);
    }
  }
  return acc;
}

}  // namespace

PLIntegrals integral_pl(const Polytope& p, const Subdivision& sub) {
  PLIntegrals out;
  out.interior = 0;
  out.boundary = 0;

  for (const auto& cell : sub.cells) {
    const AffineFn& piece = sub.fn.pieces[cell.piece];
    auto m = interior_moments(cell.cell, 1);
    out.interior += integrate_affine(m, piece);

    // Boundary pieces: cell facets that coincide with facets of p lie in the
    // boundary of p; the cells partition each facet up to measure zero.
    for (std::size_t g = 0; g < cell.cell.facets.size(); ++g) {
      const HalfSpace& h = cell.cell.facets[g];
      bool on_boundary = std::find(p.facets.begin(), p.facets.end(), h) != p.facets.end();
      if (!on_boundary) continue;
      for (const auto& [verts, measure] :
           facet_sigma_simplices(cell.cell, static_cast<int>(g))) {
        Rational acc = piece.constant * measure;
        for (int i = 0; i < p.dim; ++i) {
          if (piece.linear[i] == 0) continue;
          Exponent ei(p.dim, 0);
          ei[i] = 1;
          acc += piece.linear[i] * affine_simplex_moment(verts, measure, ei);
        }
        out.boundary += acc;
      }
    }
  }
  return out;
}

PLIntegrals integral_pl(const Polytope& p, const PLConvexFn& f) {
  return integral_pl(p, subdivide_by_pl(p, f));
}

Rational sublevel_volume(const Polytope& p, const PLConvexFn& f, const Rational& t) {
  Subdivision sub = subdivide_by_pl(p, f);
  Rational total = 0;
  for (const auto& cell : sub.cells) {
    const AffineFn& piece = sub.fn.pieces[cell.piece];
    if (piece.is_constant()) {
      if (piece.constant <= t) total += volume(cell.cell);
      continue;
    }
    QVec neg(piece.linear.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -piece.linear[i];
    std::vector<HalfSpace> halfspaces = cell.cell.facets;
    halfspaces.push_back(canonical_halfspace(neg, t - piece.constant));
    auto cut = try_make_cell(p.dim, std::move(halfspaces), cell.cell.name + "<=t");
    if (cut) total += volume(*cut);
  }
  return total;
}

Rational volume(const Polytope& p) {
  Rational acc = 0;
  for (const auto& s : triangulate(p)) acc += simplex_volume(s);
  return acc;
}

Rational pl_times_affine_integral(const Subdivision& sub, const AffineFn& g) {
  Rational acc = 0;
  for (const auto& cell : sub.cells) {
    auto m = interior_moments(cell.cell, 2);
    acc += integrate_product(m, sub.fn.pieces[cell.piece], g);
  }
  return acc;
}

std::vector<QVec> subdivision_vertices(const Subdivision& sub) {
  std::vector<QVec> out;
  for (const auto& cell : sub.cells)
    out.insert(out.end(), cell.cell.vertices.begin(), cell.cell.vertices.end());
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<Polytope, QVec> recenter(const Polytope& p) {
  auto m = interior_moments(p, 1);
  Exponent zero(p.dim, 0);
  Rational vol = m.at(zero);
  QVec shift(p.dim);
  for (int i = 0; i < p.dim; ++i) {
    Exponent ei = zero;
    ei[i] = 1;
    shift[i] = -m.at(ei) / vol;  // translate barycenter to the origin
  }
  Polytope out;
  out.dim = p.dim;
  out.name = p.name + ":centered";
  out.facets = p.facets;
  for (std::size_t j = 0; j < out.facets.size(); ++j)
    out.facets[j].offset -= dot(out.facets[j].normal, shift);
  out.vertices = p.vertices;
  for (auto& v : out.vertices)
    for (int i = 0; i < p.dim; ++i) v[i] += shift[i];
  return {std::move(out), std::move(shift)};
}

}  // namespace toristab
