#include "tres/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tres/cox.hpp"
#include "tres/error.hpp"
#include "tres/matrix.hpp"
#include "tres/residue.hpp"
#include "tres/resultant.hpp"
#include "tres/rng.hpp"

namespace tres {

namespace {

std::vector<Poly> query_polys(const SystemSpec& spec) {
  std::vector<Poly> out;
  for (const std::string& name : spec.query->args)
    out.push_back(spec.polys.at(name));
  return out;
}

bool is_numeric(const Poly& f) {
  const RingPtr& R = f.ring();
  for (const Term& t : f.terms())
    for (std::size_t v = 0; v < t.exp.size(); ++v)
      if (t.exp[v] != 0 && R->kind(v) == VarKind::Param) return false;
  return true;
}

void require_numeric_for_mode(const std::vector<Poly>& fs,
                              const CliOptions& opt) {
  if (opt.mode != "numeric") return;
  for (const Poly& f : fs)
    if (!is_numeric(f))
      fail(ErrorCode::Unsupported,
           "numeric mode needs numeric coefficients; bind every parameter "
           "with 'params name = value'");
}

/// Newton polytope of a named polynomial: the declared one when given.
LatticePolytope polytope_of(const SystemSpec& spec, const std::string& name) {
  auto it = spec.polytopes.find(name);
  if (it != spec.polytopes.end()) return it->second;
  return convex_hull(support_of(spec.polys.at(name), spec.torus_vars));
}

/// Common polytope and scale vector for layout-building commands: the
/// explicit `with k=(...)` clause or all ones; the polytope comes from the
/// first entry of scale 1.
std::pair<LatticePolytope, std::vector<Int>> infer_layout(
    const SystemSpec& spec) {
  const QuerySpec& q = *spec.query;
  std::vector<Int> k;
  if (q.scaling) {
    k = *q.scaling;
  } else {
    k.assign(q.args.size(), Int(1));
  }
  if (k.size() != q.args.size())
    fail(ErrorCode::ArityMismatch,
         "the k vector needs one entry per polynomial");
  for (const Int& ki : k)
    if (ki < 1)
      fail(ErrorCode::Unsupported, "scales in k must be positive integers");
  for (std::size_t j = 0; j < k.size(); ++j)
    if (k[j] == 1) return {polytope_of(spec, q.args[j]), k};
  fail(ErrorCode::Unsupported,
       "at least one polynomial must have scale 1 so the base polytope is "
       "determined");
}

Poly toric_jacobian(const std::vector<Poly>& fs,
                    const std::vector<std::size_t>& tv) {
  const RingPtr& R = fs.front().ring();
  PolyMatrix J(R, fs.size(), tv.size());
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (std::size_t i = 0; i < tv.size(); ++i)
      J.at(j, i) = fs[j].log_derivative(tv[i]);
  return fraction_free_det(J);
}

std::string point_str(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? ", " : "") + p[i].get_str();
  return s + ")";
}

nlohmann::json point_json(const LatticePoint& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& c : p) a.push_back(c.get_str());
  return a;
}

nlohmann::json factorization_json(
    const std::vector<std::pair<LatticePoint, Int>>& factors) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [normal, e] : factors)
    a.push_back({{"facet_normal", point_json(normal)},
                 {"exponent", e.get_str()}});
  return a;
}

// --- bracket presentation --------------------------------------------------

/// Writes a rational multiple of a bracket token, e.g. "2*[125]".
std::string bracket_term(const BigRational& c, const std::string& token,
                         bool first) {
  BigRational a = c < 0 ? -c : c;
  std::string s;
  if (first)
    s = c < 0 ? "-" : "";
  else
    s = c < 0 ? " - " : " + ";
  if (!(a == 1)) s += to_string(a) + "*";
  return s + token;
}

/// Tries to rewrite every Jacobian-column entry of M as an integer
/// combination of maximal minors ("brackets") of the coefficient matrix of
/// the system: rows = the n+1 polynomials, columns = the lattice points of P
/// in enumeration order.  Requires k = (1,..,1) and fully generic
/// coefficients (one fresh parameter per point); returns an empty json
/// otherwise or when the rewrite fails.
nlohmann::json bracket_presentation(const PhiMatrix& M,
                                    const std::vector<Poly>& fs,
                                    const std::vector<std::size_t>& tv) {
  for (const Int& ki : M.layout.k)
    if (!(ki == 1)) return {};
  const RingPtr& R = fs.front().ring();
  std::vector<LatticePoint> pts = scaled_lattice_points(M.layout.P, Int(1));
  const std::size_t N = pts.size(), r = fs.size();
  if (N < r || N > 12) return {};

  // param[i][j]: ring index of the coefficient of fs[i] at pts[j].
  std::vector<std::vector<std::size_t>> param(r);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < r; ++i) {
    for (const LatticePoint& p : pts) {
      Poly c = coefficient_at(fs[i], tv, p);
      if (!c.is_monomial() || c.total_degree() != 1 ||
          !(c.leading_term().coeff == 1))
        return {};
      std::size_t v = 0;
      for (std::size_t w = 0; w < c.leading_term().exp.size(); ++w)
        if (c.leading_term().exp[w] != 0) v = w;
      if (R->kind(v) != VarKind::Param || !seen.insert(v).second) return {};
      param[i].push_back(v);
    }
  }

  // All r-subsets of columns, lexicographic; token "[125]" (1-based).
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i;
  while (true) {
    subsets.push_back(cur);
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == N - r + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (subsets.size() > 512) return {};

  std::vector<Poly> brackets;
  std::vector<std::string> tokens;
  bool wide = N >= 10;
  for (const std::vector<std::size_t>& S : subsets) {
    PolyMatrix B(R, r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t s = 0; s < r; ++s)
        B.at(i, s) = Poly::variable(R, param[i][S[s]]);
    brackets.push_back(fraction_free_det(B));
    std::string tok = "[";
    for (std::size_t s = 0; s < r; ++s)
      tok += (wide && s ? " " : "") + std::to_string(S[s] + 1);
    tokens.push_back(tok + "]");
  }

  // Linear solve in the monomial basis of the brackets and the targets.
  std::map<ExponentVector, std::size_t> basis;
  auto index_terms = [&](const Poly& p) {
    for (const Term& t : p.terms()) basis.emplace(t.exp, basis.size());
  };
  for (const Poly& b : brackets) index_terms(b);
  std::size_t jcol = M.cols() - 1;
  if (M.layout.columns[jcol].kind != PhiColumn::Kind::Jacobian) return {};
  for (std::size_t row = 0; row < M.rows(); ++row)
    index_terms(M.entries.at(row, jcol));

  QMatrix V(basis.size(), brackets.size() + 1);
  for (std::size_t bcol = 0; bcol < brackets.size(); ++bcol)
    for (const Term& t : brackets[bcol].terms())
      V.at(basis.at(t.exp), bcol) = t.coeff;

  nlohmann::json jac_entries = nlohmann::json::array();
  for (std::size_t row = 0; row < M.rows(); ++row) {
    const Poly& target = M.entries.at(row, jcol);
    if (target.is_zero()) {
      jac_entries.push_back("0");
      continue;
    }
    QMatrix A = V;
    for (const Term& t : target.terms())
      A.at(basis.at(t.exp), brackets.size()) = t.coeff;
    Rref rr = rref(std::move(A));
    std::vector<BigRational> x(brackets.size(), BigRational(0));
    bool ok = true;
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i) {
      if (rr.pivot_cols[i] == brackets.size()) ok = false;  // inconsistent
      if (ok) x[rr.pivot_cols[i]] = rr.mat.at(i, brackets.size());
    }
    Poly recon = Poly::zero(R);
    if (ok)
      for (std::size_t bcol = 0; bcol < brackets.size(); ++bcol)
        if (!(x[bcol] == 0)) recon = recon + brackets[bcol] * x[bcol];
    if (!ok || !(recon == target)) return {};
    std::string s;
    bool first = true;
    for (std::size_t bcol = 0; bcol < brackets.size(); ++bcol) {
      if (x[bcol] == 0) continue;
      s += bracket_term(x[bcol], tokens[bcol], first);
      first = false;
    }
    jac_entries.push_back(s);
  }

  nlohmann::json points = nlohmann::json::array();
  for (const LatticePoint& p : pts) points.push_back(point_str(p));
  return {{"convention",
           "[i j ...] is the determinant of the named 1-based columns of "
           "the coefficient matrix (rows = the input polynomials, columns = "
           "the listed lattice points)"},
          {"lattice_points", points},
          {"jacobian_column", jac_entries}};
}

// --- commands ----------------------------------------------------------------

void cmd_facet_resultants(const SystemSpec& spec, const CliOptions& opt,
                          Report& rep) {
  std::vector<Poly> fs = query_polys(spec);
  require_numeric_for_mode(fs, opt);
  if (fs.size() != spec.torus_vars.size())
    fail(ErrorCode::ArityMismatch,
         "facet-resultants needs as many polynomials as torus variables");
  FacetResultantSet fr = facet_resultants(fs, spec.torus_vars);
  nlohmann::json entries = nlohmann::json::array();
  for (const FacetResultant& e : fr.entries)
    entries.push_back({{"facet_normal", point_json(e.facet.normal)},
                       {"facet_offset", e.facet.offset.get_str()},
                       {"resultant", poly_to_json(e.resultant)},
                       {"lattice_index", e.ell.get_str()}});
  rep.result = {{"minkowski_sum", polytope_to_json(fr.sum)},
                {"entries", entries}};
  rep.certificates = {
      {"note", "one entry per facet of the Minkowski sum, facet order"}};
}

void cmd_resultant(const SystemSpec& spec, const CliOptions& opt,
                   Report& rep) {
  std::vector<Poly> fs = query_polys(spec);
  require_numeric_for_mode(fs, opt);
  if (fs.size() != spec.torus_vars.size() + 1)
    fail(ErrorCode::ArityMismatch,
         "resultant needs one more polynomial than torus variables");
  auto [P, k] = infer_layout(spec);
  PhiMatrix M = build_phi(P, k, fs, spec.torus_vars);
  ResultantOutput out;
  std::string method;
  if (M.rows() == M.cols()) {
    out = resultant_via_det(M);
    method = "determinant";
  } else {
    out = resultant_via_minor_gcd(M, {opt.seed, opt.max_minors});
    method = "minor-gcd";
  }
  if (opt.verify && !out.certified)
    fail(ErrorCode::GenericityFailure,
         "resultant degree certificate not met within the minor budget");
  rep.result = {{"resultant", poly_to_json(out.polynomial)},
                {"power", out.ell.get_str()},
                {"method", method}};
  rep.certificates = {{"certified", out.certified},
                      {"computed_degree", out.computed_degree.get_str()},
                      {"predicted_degree", out.predicted_degree.get_str()},
                      {"note", out.note}};
}

void cmd_global_residue(const SystemSpec& spec, const CliOptions& opt,
                        Report& rep) {
  std::vector<Poly> fs = query_polys(spec);
  require_numeric_for_mode(fs, opt);
  const std::vector<std::size_t>& tv = spec.torus_vars;
  const LatticePoint& m = *spec.query->monomial;
  if (m.size() != tv.size())
    fail(ErrorCode::DimensionMismatch,
         "the residue monomial needs one exponent per torus variable");
  MixedResidueOptions mo;
  mo.seed = opt.seed;
  ResidueValue rv = global_residue_mixed(fs, tv, m, mo);
  rep.result = {{"value", ratfunc_to_json(rv.value)},
                {"numerator", poly_to_json(rv.numerator)},
                {"denominator_factorization", factorization_json(rv.denominator)},
                {"is_zero", rv.value.is_zero()}};
  rep.certificates = {{"certified", rv.certified}, {"note", rv.note}};

  bool symbolic_input = false;
  for (const Poly& f : fs) symbolic_input = symbolic_input || !is_numeric(f);
  if (opt.verify && symbolic_input) {
    // Cross-oracle: evaluate the symbolic value at a random parameter point
    // and compare with the generic-multiplier evaluation of the specialized
    // numeric system.
    const RingPtr& R = fs.front().ring();
    Rng rng(opt.seed ^ 0x7665726966790001ULL);
    bool checked = false;
    for (int attempt = 0; attempt < 5 && !checked; ++attempt) {
      std::map<std::size_t, BigRational> vals;
      std::vector<BigRational> point(R->size(), BigRational(1));
      for (std::size_t v = 0; v < R->size(); ++v)
        if (R->kind(v) == VarKind::Param) {
          BigRational x{rng.nonzero(1000)};
          vals[v] = x;
          point[v] = x;
        }
      if (rv.value.den().evaluate(point) == 0) continue;
      std::vector<Poly> fnum;
      for (const Poly& f : fs) fnum.push_back(f.substitute(vals));
      MixedResidueOptions nopt;
      nopt.seed = opt.seed + 17;
      nopt.force_generic_multiplier = tv.size() > 1;
      BigRational direct;
      try {
        ResidueValue nv = global_residue_mixed(fnum, tv, m, nopt);
        direct = nv.value.is_zero()
                     ? BigRational(0)
                     : nv.value.num().constant_value() /
                           nv.value.den().constant_value();
      } catch (const Error&) {
        continue;  // degenerate draw; try another point
      }
      if (!(rv.value.evaluate(point) == direct))
        fail(ErrorCode::MismatchBetweenDraws,
             "symbolic residue disagrees with the generic-multiplier "
             "evaluation at a random specialization");
      checked = true;
    }
    if (!checked)
      fail(ErrorCode::GenericityFailure,
           "could not find a nondegenerate specialization for verification");
    rep.certificates["cross_check"] =
        "agrees with a generic-multiplier evaluation at a random "
        "specialization";
  }
}

void cmd_toric_residue(const SystemSpec& spec, const CliOptions& opt,
                       Report& rep) {
  std::vector<Poly> fs = query_polys(spec);
  require_numeric_for_mode(fs, opt);
  const std::vector<std::size_t>& tv = spec.torus_vars;
  if (fs.size() != tv.size() + 1)
    fail(ErrorCode::ArityMismatch,
         "toric-residue needs one more polynomial than torus variables");
  auto [P, k] = infer_layout(spec);
  PhiMatrix M = build_phi(P, k, fs, tv);
  Int ktot(0);
  for (const Int& ki : k) ktot += ki;
  Poly h = spec.polys.at(spec.query->numerator);
  Poly H = M.cox.homogenize(h, M.cox.beta_offsets(ktot, Int(-1)));
  RationalFunction v = toric_residue(M, H);
  rep.result = {{"value", ratfunc_to_json(v)},
                {"rows", M.rows()},
                {"columns", M.cols()}};
  rep.certificates = {
      {"normalization",
       "scaled by k_0*...*k_n times the normalized volume of the base "
       "polytope"}};
}

void cmd_polytope_info(const SystemSpec& spec, const CliOptions&,
                       Report& rep) {
  const std::vector<std::size_t>& tv = spec.torus_vars;
  nlohmann::json list = nlohmann::json::array();
  std::vector<SupportSet> supports;
  for (const std::string& name : spec.query->args) {
    LatticePolytope P = polytope_of(spec, name);
    supports.push_back(support_of(spec.polys.at(name), tv));
    nlohmann::json entry = {{"name", name}, {"polytope", polytope_to_json(P)}};
    BigRational nvol = volume(P);
    for (std::size_t i = 2; i <= P.dim(); ++i) nvol = nvol * BigRational(i);
    entry["normalized_volume"] = to_string(nvol);
    entry["lattice_points"] = scaled_lattice_points(P, Int(1)).size();
    entry["interior_points"] = scaled_lattice_points(P, Int(1), 1).size();
    list.push_back(entry);
  }
  rep.result = {{"polytopes", list}};
  if (supports.size() == tv.size() && tv.size() >= 2) {
    MinkowskiSum ms = minkowski_sum(supports);
    rep.result["minkowski_sum"] = polytope_to_json(ms.sum);
    rep.result["mixed_volume"] = mixed_volume(supports).get_str();
  }
}

void cmd_jacobian(const SystemSpec& spec, const CliOptions&, Report& rep) {
  std::vector<Poly> fs = query_polys(spec);
  if (fs.size() != spec.torus_vars.size())
    fail(ErrorCode::ArityMismatch,
         "jacobian needs as many polynomials as torus variables");
  Poly J = toric_jacobian(fs, spec.torus_vars);
  rep.result = {{"jacobian", poly_to_json(J)}};
}

void cmd_phi_matrix(const SystemSpec& spec, const CliOptions& opt,
                    Report& rep) {
  std::vector<Poly> fs = query_polys(spec);
  require_numeric_for_mode(fs, opt);
  if (fs.size() != spec.torus_vars.size() + 1)
    fail(ErrorCode::ArityMismatch,
         "phi-matrix needs one more polynomial than torus variables");
  auto [P, k] = infer_layout(spec);
  PhiMatrix M = build_phi(P, k, fs, spec.torus_vars);

  nlohmann::json rows = nlohmann::json::array();
  for (const CoxRing::GradedMonomial& g : M.layout.rows)
    rows.push_back(point_str(g.m));
  nlohmann::json cols = nlohmann::json::array();
  for (const PhiColumn& c : M.layout.columns) {
    if (c.kind == PhiColumn::Kind::Jacobian)
      cols.push_back("J");
    else
      cols.push_back("F" + std::to_string(c.block) + "*t^" + point_str(c.m));
  }
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < M.cols(); ++c)
      row.push_back(poly_to_json(M.entries.at(r, c)));
    entries.push_back(row);
  }
  rep.result = {{"rows", rows},
                {"columns", cols},
                {"entries", entries},
                {"square", M.rows() == M.cols()}};
  nlohmann::json pres = bracket_presentation(M, fs, spec.torus_vars);
  if (!pres.empty()) rep.result["presentation"] = pres;
  rep.certificates = {
      {"row_space", "interior monomials of the critical degree"},
      {"jacobian_column_is_last", true}};
}

}  // namespace

Report run_query(const SystemSpec& spec, const CliOptions& opt) {
  if (!spec.query) fail(ErrorCode::EmptyInput, "the input has no query");
  if (opt.mode != "symbolic" && opt.mode != "numeric")
    fail(ErrorCode::Unsupported, "mode must be 'numeric' or 'symbolic'");
  Report rep;
  rep.command = spec.query->command;
  rep.mode = opt.mode;
  rep.seed = opt.seed;
  rep.echo_input = format_system(spec);
  const std::string& cmd = spec.query->command;
  if (cmd == "facet-resultants")
    cmd_facet_resultants(spec, opt, rep);
  else if (cmd == "resultant")
    cmd_resultant(spec, opt, rep);
  else if (cmd == "global-residue")
    cmd_global_residue(spec, opt, rep);
  else if (cmd == "toric-residue")
    cmd_toric_residue(spec, opt, rep);
  else if (cmd == "polytope-info")
    cmd_polytope_info(spec, opt, rep);
  else if (cmd == "jacobian")
    cmd_jacobian(spec, opt, rep);
  else if (cmd == "phi-matrix")
    cmd_phi_matrix(spec, opt, rep);
  else
    fail(ErrorCode::SyntaxError, "unknown command '" + cmd + "'");
  return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact sparse resultants, facet resultants and toric/global "
               "residues for Laurent polynomial systems"};
  std::string input = "-";
  CliOptions opt;
  app.add_option("input", input, "input file, or - for standard input");
  app.add_flag("--json", opt.json, "emit the report as JSON");
  app.add_option("--seed", opt.seed, "seed for randomized choices");
  app.add_option("--mode", opt.mode, "numeric|symbolic (default symbolic)")
      ->check(CLI::IsMember({"numeric", "symbolic"}));
  app.add_option("--max-minors", opt.max_minors,
                 "budget for the minor-gcd resultant");
  app.add_flag("--verify", opt.verify, "enable cross-oracle checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::string text;
    if (input == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else {
      std::ifstream in(input);
      if (!in) {
        err << "error: cannot open '" << input << "'\n";
        return 1;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    auto t0 = std::chrono::steady_clock::now();
    SystemSpec spec = parse_input(text);
    auto t1 = std::chrono::steady_clock::now();
    Report rep = run_query(spec, opt);
    auto t2 = std::chrono::steady_clock::now();
    rep.parse_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.compute_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count();
    if (opt.json)
      out << rep.to_json().dump(2) << "\n";
    else
      out << rep.to_text();
    err << "timing: parse " << rep.parse_ms << " ms, compute "
        << rep.compute_ms << " ms\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tres
