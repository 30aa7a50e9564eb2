#include "toristab/cli.hpp"

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toristab/catalog.hpp"
#include "toristab/errors.hpp"
#include "toristab/functionals.hpp"
#include "toristab/io.hpp"
#include "toristab/stability.hpp"

namespace toristab {
namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Exact value with a decimal rendering for humans; both sides of the
// report carry the same rational.
std::string show(const Rational& q) {
  return format_rational(q) + " (~" + approx_decimal(q) + ")";
}

std::string show_percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g%%", 100.0 * x);
  return buf;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string format_int_vector(const ZVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

Json rat_json(const Rational& q) {
  return Json{{"exact", format_rational(q)}, {"approx", approx_decimal(q)}};
}

Json vec_json(const QVec& v) {
  Json exact = Json::array();
  Json approx = Json::array();
  for (const Rational& q : v) {
    exact.push_back(format_rational(q));
    approx.push_back(approx_decimal(q));
  }
  return Json{{"exact", std::move(exact)}, {"approx", std::move(approx)}};
}

Json exact_vec_json(const QVec& v) {
  Json arr = Json::array();
  for (const Rational& q : v) arr.push_back(format_rational(q));
  return arr;
}

Json int_vec_json(const ZVec& v) {
  Json arr = Json::array();
  for (const Int& c : v) arr.push_back(c.convert_to<long long>());
  return arr;
}

Json affine_json(const AffineFn& f) {
  return Json{{"a", exact_vec_json(f.linear)},
              {"c", format_rational(f.constant)},
              {"display", f.to_string()}};
}

Json pl_json(const PLConvexFn& f) {
  Json pieces = Json::array();
  for (const AffineFn& piece : f.pieces) pieces.push_back(affine_json(piece));
  return Json{{"pieces", std::move(pieces)}};
}

// Identity block shared by every report: the canonical document plus the
// derived vertex list and validation verdicts.
Json polytope_json(const Polytope& p, const DelzantReport& dr, bool integral,
                   bool reflexive) {
  Json j = Json::parse(serialize_polytope(p));
  Json vertices = Json::array();
  for (const QVec& v : p.vertices) vertices.push_back(exact_vec_json(v));
  j["vertices"] = std::move(vertices);
  j["delzant"] = dr.delzant;
  j["integral"] = integral;
  j["reflexive"] = reflexive;
  return j;
}

QVec parse_point_flag(const std::string& text, int dim, const char* flag) {
  QVec point;
  std::stringstream ss(text);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) point.push_back(parse_rational(part));
  } catch (const ParseError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
  if (static_cast<int>(point.size()) != dim)
    throw UsageError(std::string(flag) + ": expected " + std::to_string(dim) +
                     " comma-separated rationals, got " + std::to_string(point.size()));
  return point;
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

// The three largest powers of two not exceeding mmax, the fit's sample set.
std::vector<int> oracle_samples(int mmax) {
  if (mmax < 4)
    throw UsageError("--oracle-mmax must be at least 4 (the fit uses three powers of two)");
  int top = 1;
  while (2 * top <= mmax) top *= 2;
  return {top / 4, top / 2, top};
}

void render_moments(const MomentTable& mt, const Rational& sbar_value,
                    std::ostream& out) {
  out << "moments\n";
  out << "  volume            " << show(mt.vol) << "\n";
  out << "  boundary measure  " << show(mt.sigma_boundary) << "\n";
  out << "  sbar              " << show(sbar_value) << "\n";
  out << "  barycenter        " << format_vector(mt.barycenter) << "\n";
}

Json moments_json(const MomentTable& mt, const Rational& sbar_value) {
  return Json{{"volume", rat_json(mt.vol)},
              {"boundary_measure", rat_json(mt.sigma_boundary)},
              {"sbar", rat_json(sbar_value)},
              {"barycenter", vec_json(mt.barycenter)}};
}

Json sufficient_json(const SuffVerdict& sv) {
  return Json{{"x0", vec_json(sv.x0)},
              {"d_x0", rat_json(sv.d_x0)},
              {"threshold", rat_json(sv.threshold)},
              {"sbar", rat_json(sv.sbar_value)},
              {"max_v", rat_json(sv.max_v)},
              {"v_zero", sv.v_zero},
              {"branch", sv.branch},
              {"applies", sv.applies},
              {"delta", rat_json(sv.delta)},
              {"verdict", sv.verdict}};
}

void render_sufficient(const SuffVerdict& sv, std::ostream& out) {
  out << "sufficient condition (relative)\n";
  out << "  x0                " << format_vector(sv.x0) << "\n";
  out << "  d_x0              " << show(sv.d_x0) << "\n";
  out << "  sbar + max V      " << show(sv.sbar_value + sv.max_v) << "\n";
  out << "  threshold (n+1)/d " << show(sv.threshold) << "\n";
  out << "  branch            " << sv.branch << "\n";
  if (sv.applies) out << "  delta             " << show(sv.delta) << "\n";
  out << "  verdict           " << sv.verdict << "\n";
}

Json fano_json(const FanoVerdict& fv) {
  Json conditions = Json::array();
  for (const FanoCondition& c : fv.conditions)
    conditions.push_back(
        Json{{"label", c.label}, {"holds", c.holds}, {"implied", c.implied}});
  return Json{{"reflexive", fv.reflexive},
              {"barycenter", vec_json(fv.barycenter)},
              {"v_zero", fv.v_zero},
              {"consistent", fv.consistent},
              {"conditions", std::move(conditions)},
              {"verdict", fv.verdict}};
}

void render_fano(const FanoVerdict& fv, std::ostream& out) {
  out << "fano barycenter criterion (anticanonical)\n";
  out << "  barycenter        " << format_vector(fv.barycenter) << "\n";
  out << "  V = 0             " << yesno(fv.v_zero) << "\n";
  for (const FanoCondition& c : fv.conditions)
    out << "  [" << (c.holds ? "x" : " ") << "] " << c.label
        << (c.implied ? "  (equivalent restatement)" : "") << "\n";
  out << "  verdict           " << fv.verdict << "\n";
}

Json ehrhart_json(const EhrhartFit& fit, const MomentTable& mt) {
  Json coeffs = Json::array();
  for (const Rational& c : fit.coeffs) coeffs.push_back(format_rational(c));
  Json counts = Json::array();
  for (const Int& c : fit.counts) counts.push_back(c.convert_to<long long>());
  return Json{{"coefficients", std::move(coeffs)},
              {"leading", rat_json(fit.leading)},
              {"subleading", rat_json(fit.subleading)},
              {"leading_matches_volume", fit.leading == mt.vol},
              {"subleading_matches_half_boundary",
               Rational(2 * fit.subleading) == mt.sigma_boundary},
              {"counts", std::move(counts)}};
}

void render_ehrhart(const EhrhartFit& fit, const MomentTable& mt, int mmax,
                    std::ostream& out) {
  out << "ehrhart cross-check (counts verified up to m = " << mmax << ")\n";
  out << "  coefficients      ";
  for (std::size_t k = 0; k < fit.coeffs.size(); ++k) {
    if (k) out << ", ";
    out << format_rational(fit.coeffs[k]);
  }
  out << "  (constant first)\n";
  out << "  leading           " << show(fit.leading) << "  = volume: "
      << yesno(fit.leading == mt.vol) << "\n";
  out << "  subleading        " << show(fit.subleading) << "  = boundary/2: "
      << yesno(Rational(2 * fit.subleading) == mt.sigma_boundary) << "\n";
  out << "  counts            ";
  for (std::size_t k = 0; k < fit.counts.size(); ++k) {
    if (k) out << ", ";
    out << fit.counts[k];
  }
  out << "\n";
}

Json oracle_json(const OracleReport& oracle) {
  Json samples = Json::array();
  for (std::size_t k = 0; k < oracle.sample_m.size(); ++k)
    samples.push_back(Json{{"m", oracle.sample_m[k]},
                           {"count", oracle.counts[k].convert_to<long long>()},
                           {"weight", rat_json(oracle.weights[k])},
                           {"y", rat_json(oracle.y[k])}});
  return Json{{"samples", std::move(samples)},
              {"f0", rat_json(oracle.f0)},
              {"f1", rat_json(oracle.f1)},
              {"minus_2_f1", rat_json(Rational(-2 * oracle.f1))},
              {"energy", rat_json(oracle.energy)},
              {"m_na", rat_json(oracle.m_na)},
              {"f0_rel_err", oracle.f0_rel_err},
              {"m_na_rel_err", oracle.m_na_rel_err}};
}

void render_oracle(const OracleReport& oracle, std::ostream& out) {
  out << "weight-sum oracle\n";
  out << "  m / count / w_m / y_m = w_m/(m count):\n";
  for (std::size_t k = 0; k < oracle.sample_m.size(); ++k)
    out << "    " << oracle.sample_m[k] << " / " << oracle.counts[k] << " / "
        << format_rational(oracle.weights[k]) << " / " << show(oracle.y[k])
        << "\n";
  out << "  fitted F0         " << show(oracle.f0) << "  target E = "
      << show(oracle.energy) << "  rel err " << show_percent(oracle.f0_rel_err)
      << "\n";
  out << "  fitted -2 F1      " << show(Rational(-2 * oracle.f1))
      << "  target M = " << show(oracle.m_na) << "  rel err "
      << show_percent(oracle.m_na_rel_err) << "\n";
}

}  // namespace

Polytope load_polytope(const std::string& source) {
  const std::string prefix = "catalog:";
  if (source.rfind(prefix, 0) == 0) return catalog_polytope(source.substr(prefix.size()));
  return parse_polytope(read_text_file(source));
}

int cmd_validate(const std::string& source, std::ostream& out) {
  Polytope p = load_polytope(source);
  DelzantReport dr = delzant_check(p);

  out << "polytope " << p.name << ": dim " << p.dim << ", " << p.facets.size()
      << " facets, " << p.vertices.size() << " vertices\n";
  for (const VertexDiagnostic& vd : dr.vertices) {
    if (vd.simple && vd.unimodular) continue;
    out << "  vertex " << format_vector(vd.vertex) << ": ";
    if (!vd.simple)
      out << vd.active.size() << " active facets (expected " << p.dim << ")\n";
    else
      out << "normal determinant " << vd.normal_det << " (expected +1 or -1)\n";
  }
  out << "  delzant:   " << (dr.delzant ? "pass" : "fail") << "\n";
  out << "  integral:  " << yesno(is_integral(p)) << "\n";
  out << "  reflexive: " << yesno(is_reflexive(p)) << "\n";
  return dr.delzant ? 0 : 1;
}

int cmd_analyze(const std::string& source, const AnalyzeOptions& options,
                std::ostream& out) {
  Polytope p = load_polytope(source);
  DelzantReport dr = delzant_check(p);
  bool integral = is_integral(p);
  bool reflexive = is_reflexive(p);
  MomentTable mt = moments(p);
  ExtremalData ed = extremal_affine(mt);

  std::optional<QVec> x0;
  if (!options.x0.empty()) x0 = parse_point_flag(options.x0, p.dim, "--x0");
  SuffVerdict sv = sufficient_condition(p, ed, x0);

  std::optional<FanoVerdict> fano;
  if (reflexive) fano = fano_analysis(p, ed);

  std::optional<EhrhartFit> fit;
  if (options.oracle_mmax > 0) {
    if (options.oracle_mmax < p.dim + 1)
      throw UsageError("--oracle: the dilate bound must be at least dim+1 = " +
                       std::to_string(p.dim + 1));
    fit = ehrhart_fit(p, options.oracle_mmax);
  }

  if (options.json) {
    Json j;
    j["command"] = "analyze";
    j["polytope"] = polytope_json(p, dr, integral, reflexive);
    j["moments"] = moments_json(mt, ed.sbar_value);
    j["extremal"] = Json{{"v", affine_json(ed.v)}, {"v_zero", sv.v_zero}};
    j["sufficient"] = sufficient_json(sv);
    if (fano) j["fano"] = fano_json(*fano);
    if (fit) j["ehrhart"] = ehrhart_json(*fit, mt);
    out << dump(j);
    return 0;
  }

  out << "polytope " << p.name << ": dim " << p.dim << ", " << p.facets.size()
      << " facets, " << p.vertices.size() << " vertices\n";
  out << "  delzant " << (dr.delzant ? "pass" : "FAIL") << ", integral "
      << yesno(integral) << ", reflexive " << yesno(reflexive) << "\n";
  render_moments(mt, ed.sbar_value, out);
  out << "extremal affine function\n";
  out << "  V                 " << ed.v.to_string() << "\n";
  render_sufficient(sv, out);
  if (fano) render_fano(*fano, out);
  if (fit) render_ehrhart(*fit, mt, options.oracle_mmax, out);
  return 0;
}

int cmd_test_config(const std::string& source, const TestConfigOptions& options,
                    std::ostream& out) {
  Polytope p = load_polytope(source);
  PLConvexFn f = parse_pl_function(read_text_file(options.fn_path));
  if (f.dim() != p.dim)
    throw ValidationError("function arity " + std::to_string(f.dim()) +
                          " does not match polytope dimension " +
                          std::to_string(p.dim));
  Rational level = parse_rational_flag(options.level_text, "--L");

  MomentTable mt = moments(p);
  ExtremalData ed = extremal_affine(mt);
  TestConfiguration tc = na_report(p, ed, f, level);

  std::optional<OracleReport> oracle;
  if (options.oracle_mmax > 0)
    oracle = df_asymptotic_check(p, ed, f, level, oracle_samples(options.oracle_mmax));

  const DHMeasure& dh = tc.dh;
  std::vector<Rational> sample_ys;
  sample_ys.push_back(dh.support_min - 1);
  if (dh.support_min == dh.support_max) {
    sample_ys.push_back(dh.support_min);
  } else {
    for (int i = 0; i <= 8; ++i)
      sample_ys.push_back(dh.support_min +
                          Rational(i) * (dh.support_max - dh.support_min) / 8);
  }

  const Polytope& q = tc.compactification;

  if (options.json) {
    Json j;
    j["command"] = "test-config";
    j["polytope"] = Json::parse(serialize_polytope(p));
    j["function"] = pl_json(tc.dh.fn);
    Json na{{"level", rat_json(tc.na.level)},
            {"energy", rat_json(tc.na.energy)},
            {"jnorm_raw", rat_json(tc.na.jnorm_raw_value)},
            {"jnorm", rat_json(tc.na.jnorm_value)},
            {"jnorm_witness", affine_json(tc.na.jnorm_witness)},
            {"h_v", rat_json(tc.na.h_v)},
            {"m_na", rat_json(tc.na.m_na)},
            {"m_v_na", rat_json(tc.na.m_v_na)}};
    j["na_functionals"] = std::move(na);

    Json atoms = Json::array();
    for (const auto& [location, mass] : dh.atoms)
      atoms.push_back(Json{{"location", rat_json(location)}, {"mass", rat_json(mass)}});
    Json cdf_samples = Json::array();
    for (const Rational& y : sample_ys)
      cdf_samples.push_back(Json{{"y", rat_json(y)}, {"cdf", rat_json(dh.cdf(y))}});
    j["duistermaat_heckman"] = Json{{"support_min", rat_json(dh.support_min)},
                                    {"support_max", rat_json(dh.support_max)},
                                    {"mean", rat_json(dh.mean)},
                                    {"mean_equals_energy", dh.mean == tc.na.energy},
                                    {"atoms", std::move(atoms)},
                                    {"cdf_samples", std::move(cdf_samples)}};

    Json qj = Json::parse(serialize_polytope(q));
    Json qverts = Json::array();
    for (const QVec& v : q.vertices) qverts.push_back(exact_vec_json(v));
    qj["vertices"] = std::move(qverts);
    j["compactification"] = std::move(qj);
    if (oracle) j["oracle"] = oracle_json(*oracle);
    out << dump(j);
    return 0;
  }

  out << "test configuration on " << p.name << " (L = " << format_rational(level)
      << ")\n";
  out << "  f                 ";
  for (std::size_t k = 0; k < tc.dh.fn.pieces.size(); ++k) {
    if (k) out << "  |  ";
    out << tc.dh.fn.pieces[k].to_string();
  }
  out << "  (max of the pieces)\n";
  out << "na functionals\n";
  out << "  energy E          " << show(tc.na.energy) << "\n";
  out << "  jnorm raw         " << show(tc.na.jnorm_raw_value) << "\n";
  out << "  jnorm             " << show(tc.na.jnorm_value) << "  witness xi = "
      << tc.na.jnorm_witness.to_string() << "\n";
  out << "  H_V               " << show(tc.na.h_v) << "\n";
  out << "  M                 " << show(tc.na.m_na) << "\n";
  out << "  M_V               " << show(tc.na.m_v_na) << "\n";
  out << "duistermaat-heckman measure\n";
  out << "  support           [" << format_rational(dh.support_min) << ", "
      << format_rational(dh.support_max) << "]\n";
  out << "  mean              " << show(dh.mean) << "  = energy: "
      << yesno(dh.mean == tc.na.energy) << "\n";
  if (dh.atoms.empty()) {
    out << "  atoms             none\n";
  } else {
    out << "  atoms             ";
    for (std::size_t k = 0; k < dh.atoms.size(); ++k) {
      if (k) out << ", ";
      out << "(" << format_rational(dh.atoms[k].first) << ", mass "
          << format_rational(dh.atoms[k].second) << ")";
    }
    out << "\n";
  }
  out << "  cdf samples (csv)\n";
  out << "    y,cdf,y_approx,cdf_approx\n";
  for (const Rational& y : sample_ys) {
    Rational c = dh.cdf(y);
    out << "    " << format_rational(y) << "," << format_rational(c) << ","
        << approx_decimal(y) << "," << approx_decimal(c) << "\n";
  }
  out << "compactification Q = { (x,y) : x in P, f(x) - L <= y <= 0 }\n";
  out << "  dim " << q.dim << ", " << q.facets.size() << " facets, "
      << q.vertices.size() << " vertices\n";
  for (const HalfSpace& h : q.facets) out << "    " << h.to_string() << "\n";
  if (oracle) render_oracle(*oracle, out);
  return 0;
}

int cmd_search_destab(const std::string& source, const SearchOptions& options,
                      std::ostream& out) {
  if (options.grid_depth < 1) throw UsageError("--grid-depth must be at least 1");
  if (options.max_slope < 1) throw UsageError("--max-slope must be at least 1");

  Polytope p = load_polytope(source);
  MomentTable mt = moments(p);
  ExtremalData ed = extremal_affine(mt);
  if (options.assume_v_zero) ed.v = AffineFn::zero(p.dim);

  DestabReport rep = destabilizer_search(p, ed, options.grid_depth, options.max_slope);

  if (options.json) {
    Json j;
    j["command"] = "search-destab";
    j["polytope"] = Json::parse(serialize_polytope(p));
    j["family"] = rep.family;
    j["grid_depth"] = rep.grid_depth;
    j["max_slope"] = rep.max_slope;
    j["assume_v_zero"] = options.assume_v_zero;
    j["candidates_tested"] = rep.candidates.size();
    Json candidates = Json::array();
    for (const DestabCandidate& c : rep.candidates)
      candidates.push_back(Json{{"slope", int_vec_json(c.slope)},
                                {"intercept", rat_json(c.intercept)},
                                {"l_v", rat_json(c.lv)},
                                {"jnorm", rat_json(c.jn)},
                                {"ratio", rat_json(c.ratio)}});
    j["candidates"] = std::move(candidates);
    if (!rep.candidates.empty()) {
      const DestabCandidate& best = rep.candidates.front();
      j["best"] = Json{{"f", pl_json(best.fn)},
                       {"slope", int_vec_json(best.slope)},
                       {"intercept", rat_json(best.intercept)},
                       {"l_v", rat_json(best.lv)},
                       {"jnorm", rat_json(best.jn)},
                       {"ratio", rat_json(best.ratio)}};
    }
    j["destabilizer_found"] = rep.destabilizer_found;
    j["verdict"] = rep.verdict;
    out << dump(j);
    return 0;
  }

  out << "destabilizer search on " << p.name << "\n";
  out << "  family: " << rep.family << "\n";
  out << "  grid depth " << rep.grid_depth << ", max slope " << rep.max_slope
      << (options.assume_v_zero ? ", V forced to 0" : "") << ": "
      << rep.candidates.size() << " candidates\n";
  const std::size_t shown = std::min<std::size_t>(rep.candidates.size(), 10);
  for (std::size_t k = 0; k < shown; ++k) {
    const DestabCandidate& c = rep.candidates[k];
    out << "    slope " << format_int_vector(c.slope) << "  b = "
        << format_rational(c.intercept) << "  L_V = " << format_rational(c.lv)
        << "  J = " << format_rational(c.jn) << "  ratio = " << show(c.ratio)
        << "\n";
  }
  if (shown < rep.candidates.size())
    out << "    ... " << rep.candidates.size() - shown << " more\n";
  if (!rep.candidates.empty()) {
    const DestabCandidate& best = rep.candidates.front();
    out << "  best: f = max(0, "
        << AffineFn(QVec(best.fn.pieces[1].linear), best.fn.pieces[1].constant)
               .to_string()
        << ")  ratio " << show(best.ratio) << "\n";
  }
  out << "  verdict: " << rep.verdict << "\n";
  return 0;
}

int cmd_catalog(bool json, std::ostream& out) {
  if (json) {
    Json entries = Json::array();
    for (const CatalogEntry& e : catalog()) {
      Json aliases = Json::array();
      for (const std::string& alias : e.aliases) aliases.push_back(alias);
      entries.push_back(Json{{"name", e.name},
                             {"aliases", std::move(aliases)},
                             {"document", Json::parse(serialize_polytope_document(e.document))}});
    }
    out << dump(Json{{"command", "catalog"}, {"entries", std::move(entries)}});
    return 0;
  }
  for (const CatalogEntry& e : catalog()) {
    out << e.name << ": dim " << e.document.dim << ", "
        << e.document.facets.size() << " facets";
    for (const std::string& alias : e.aliases) out << "  (alias " << alias << ")";
    out << "\n";
    for (const auto& [key, value] : e.document.metadata)
      out << "    " << key << ": " << value << "\n";
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact K-stability tests for polarized toric manifolds via their moment polytopes"};
  app.name("toristab");
  app.require_subcommand(1);

  std::string v_source;
  CLI::App* validate =
      app.add_subcommand("validate", "parse a polytope and check the Delzant condition");
  validate->add_option("polytope", v_source, "file path or catalog:NAME")->required();

  std::string a_source;
  AnalyzeOptions a_options;
  CLI::App* analyze =
      app.add_subcommand("analyze", "full exact stability report for a polytope");
  analyze->add_option("polytope", a_source, "file path or catalog:NAME")->required();
  analyze->add_option("--x0", a_options.x0,
                      "interior base point as comma-separated rationals");
  analyze->add_flag("--json", a_options.json, "emit the report as JSON");
  analyze->add_option("--oracle", a_options.oracle_mmax,
                      "verify the Ehrhart fit against counts up to this dilate");

  std::string t_source;
  TestConfigOptions t_options;
  CLI::App* test_config = app.add_subcommand(
      "test-config", "exact invariants of the test configuration built from f and L");
  test_config->add_option("polytope", t_source, "file path or catalog:NAME")->required();
  test_config->add_option("--f", t_options.fn_path, "convex PL function file")->required();
  test_config->add_option("--L", t_options.level_text, "level L, a rational with L >= max f")
      ->required();
  test_config->add_option("--oracle-mmax", t_options.oracle_mmax,
                          "run the weight-sum oracle on powers of two up to this dilate");
  test_config->add_flag("--json", t_options.json, "emit the report as JSON");

  std::string s_source;
  SearchOptions s_options;
  CLI::App* search = app.add_subcommand(
      "search-destab", "scan crease functions for a destabilizing candidate");
  search->add_option("polytope", s_source, "file path or catalog:NAME")->required();
  search->add_option("--grid-depth", s_options.grid_depth,
                     "intercepts run over (1/K)Z with this K");
  search->add_option("--max-slope", s_options.max_slope,
                     "bound on the absolute value of slope entries");
  search->add_flag("--assume-v-zero", s_options.assume_v_zero,
                   "replace V by 0 (tests plain uniform K-stability)");
  search->add_flag("--json", s_options.json, "emit the report as JSON");

  bool c_json = false;
  CLI::App* catalog_cmd = app.add_subcommand("catalog", "list the built-in polytopes");
  catalog_cmd->add_flag("--json", c_json, "emit the list as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(v_source, out);
    if (analyze->parsed()) return cmd_analyze(a_source, a_options, out);
    if (test_config->parsed()) return cmd_test_config(t_source, t_options, out);
    if (search->parsed()) return cmd_search_destab(s_source, s_options, out);
    if (catalog_cmd->parsed()) return cmd_catalog(c_json, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace toristab
