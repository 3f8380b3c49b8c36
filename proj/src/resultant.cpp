#include "tres/resultant.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "tres/gcd.hpp"
#include "tres/rng.hpp"

namespace tres {

namespace {

// Default coefficient prefixes skip 't' so they never collide with the
// torus variables t1, t2, ...
std::string default_prefix(std::size_t i) {
  static const char letters[] = "abcdefghijklmnopqrsuvwxyz";
  if (i < sizeof(letters) - 1) return std::string(1, letters[i]);
  return "c" + std::to_string(i);
}

Int dot(const LatticePoint& m, const std::vector<Int>& eta) {
  assert(m.size() == eta.size());
  Int s = 0;
  for (std::size_t d = 0; d < m.size(); ++d) s += m[d] * eta[d];
  return s;
}

Int normalized_volume(const LatticePolytope& P) {
  BigRational nv = volume(P) * BigRational(factorial(
                       static_cast<unsigned>(P.dim())));
  if (!is_integer(nv))
    fail(ErrorCode::Internal, "normalized volume is not an integer");
  return numerator(nv);
}

BigRational eval_poly_at(const std::vector<BigRational>& coeffs,
                         const BigRational& x) {
  BigRational r(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

GenericSystem build_generic(const std::vector<SupportSet>& raw_supports,
                            const std::vector<std::string>& prefixes) {
  if (raw_supports.empty()) fail(ErrorCode::EmptyInput, "no support sets");
  const std::size_t n = raw_supports[0].empty() ? 0 : raw_supports[0][0].size();
  if (n == 0) fail(ErrorCode::EmptyInput, "empty support set");

  std::vector<SupportSet> supports = raw_supports;
  for (SupportSet& S : supports) {
    if (S.empty()) fail(ErrorCode::EmptyInput, "empty support set");
    for (const LatticePoint& m : S)
      if (m.size() != n)
        fail(ErrorCode::DimensionMismatch, "support point dimension mismatch");
    std::sort(S.begin(), S.end(), [](const LatticePoint& a,
                                     const LatticePoint& b) {
      ExponentVector ea(a.size()), eb(b.size());
      for (std::size_t d = 0; d < a.size(); ++d) {
        ea[d] = to_long(a[d]);
        eb[d] = to_long(b[d]);
      }
      return grlex_compare(ea, eb) > 0;
    });
    S.erase(std::unique(S.begin(), S.end()), S.end());
  }

  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (std::size_t d = 0; d < n; ++d) {
    names.push_back("t" + std::to_string(d + 1));
    kinds.push_back(VarKind::Torus);
  }
  std::vector<std::vector<std::size_t>> param_index(supports.size());
  for (std::size_t i = 0; i < supports.size(); ++i) {
    std::string prefix = (i < prefixes.size() && !prefixes[i].empty())
                             ? prefixes[i]
                             : default_prefix(i);
    for (std::size_t j = 0; j < supports[i].size(); ++j) {
      param_index[i].push_back(names.size());
      names.push_back(prefix + std::to_string(j));
      kinds.push_back(VarKind::Param);
    }
  }
  RingPtr ring = make_ring(std::move(names), std::move(kinds));

  GenericSystem out;
  out.ring = ring;
  for (std::size_t d = 0; d < n; ++d) out.torus_vars.push_back(d);
  for (std::size_t i = 0; i < supports.size(); ++i) {
    std::vector<Term> terms;
    std::vector<std::pair<LatticePoint, std::size_t>> tags;
    for (std::size_t j = 0; j < supports[i].size(); ++j) {
      ExponentVector e(ring->size(), 0);
      for (std::size_t d = 0; d < n; ++d) e[d] = to_long(supports[i][j][d]);
      e[param_index[i][j]] = 1;
      terms.push_back({e, BigRational(1)});
      tags.emplace_back(supports[i][j], param_index[i][j]);
    }
    out.f.push_back(Poly::from_terms(ring, std::move(terms)));
    out.coeffs.push_back(std::move(tags));
  }
  return out;
}

}  // namespace

GenericSystem generic_system(const LatticePolytope& P,
                             const std::vector<Int>& k,
                             const std::vector<std::string>& prefixes) {
  std::vector<SupportSet> supports;
  for (const Int& ki : k) {
    if (ki < 1)
      fail(ErrorCode::DegreeMismatch, "generic system needs degrees >= 1");
    supports.push_back(scaled_lattice_points(P, ki));
  }
  return build_generic(supports, prefixes);
}

GenericSystem generic_mixed_system(const std::vector<SupportSet>& supports,
                                   const std::vector<std::string>& prefixes) {
  return build_generic(supports, prefixes);
}

PhiMatrix build_phi(const CoxRing& cox, const std::vector<Poly>& F) {
  const std::size_t n = cox.dim();
  if (F.size() != n + 1)
    fail(ErrorCode::ArityMismatch,
         "critical-degree map needs n+1 polynomials for an n-dimensional "
         "polytope");
  for (const Poly& Fi : F)
    if (!Ring::same(*Fi.ring(), *cox.total_ring()))
      fail(ErrorCode::DimensionMismatch,
           "input polynomials must live in the homogeneous coordinate ring");

  PhiLayout layout;
  layout.P = cox.polytope();
  Int kappa = 0;
  for (const Poly& Fi : F) {
    Int ki = cox.beta_degree(Fi);
    if (ki < 1)
      fail(ErrorCode::DegreeMismatch, "each input must have degree >= beta");
    layout.k.push_back(ki);
    kappa += ki;
  }
  layout.kappa = kappa;

  layout.rows = cox.graded_monomials(cox.beta_offsets(kappa, -1));
  if (layout.rows.empty())
    fail(ErrorCode::EmptyCriticalDegree,
         "the critical degree has no monomials (no interior points)");

  const std::vector<std::size_t>& cvars = cox.cox_vars();
  auto cox_key = [&](const ExponentVector& e) {
    ExponentVector key(cvars.size());
    for (std::size_t i = 0; i < cvars.size(); ++i) key[i] = e[cvars[i]];
    return key;
  };
  std::map<ExponentVector, std::size_t> row_of;
  for (std::size_t r = 0; r < layout.rows.size(); ++r)
    row_of[cox_key(layout.rows[r].exps)] = r;

  for (std::size_t i = 0; i <= n; ++i) {
    auto mons = cox.graded_monomials(cox.beta_offsets(kappa - layout.k[i], -1));
    for (const auto& gm : mons)
      layout.columns.push_back(
          {PhiColumn::Kind::Multiplier, i, gm.m, gm.exps});
  }
  layout.columns.push_back({PhiColumn::Kind::Jacobian, 0, {}, {}});

  ToricJacobian J = toric_jacobian(cox, F);

  const RingPtr& base = cox.base_ring();
  const std::size_t base_size = base->size();
  PolyMatrix entries(base, layout.rows.size(), layout.columns.size());
  std::vector<std::vector<std::vector<Term>>> cell(
      layout.rows.size(),
      std::vector<std::vector<Term>>(layout.columns.size()));
  for (std::size_t c = 0; c < layout.columns.size(); ++c) {
    const PhiColumn& col = layout.columns[c];
    Poly prod = (col.kind == PhiColumn::Kind::Multiplier)
                    ? Poly::monomial(cox.total_ring(), col.exps) * F[col.block]
                    : J.jac;
    for (const Term& t : prod.terms()) {
      auto it = row_of.find(cox_key(t.exp));
      if (it == row_of.end())
        fail(ErrorCode::Internal,
             "column product leaves the critical degree row space");
      ExponentVector pe(t.exp.begin(),
                        t.exp.begin() + static_cast<std::ptrdiff_t>(base_size));
      cell[it->second][c].push_back({std::move(pe), t.coeff});
    }
  }
  for (std::size_t r = 0; r < layout.rows.size(); ++r)
    for (std::size_t c = 0; c < layout.columns.size(); ++c)
      if (!cell[r][c].empty())
        entries.at(r, c) = Poly::from_terms(base, std::move(cell[r][c]));

  bool numeric = entries.is_numeric();
  return PhiMatrix{std::move(layout), cox, F, J.jac, std::move(entries),
                   numeric};
}

PhiMatrix build_phi(const LatticePolytope& P, const std::vector<Int>& k,
                    const std::vector<Poly>& f,
                    const std::vector<std::size_t>& torus_vars) {
  if (f.empty()) fail(ErrorCode::EmptyInput, "no input polynomials");
  if (k.size() != f.size())
    fail(ErrorCode::ArityMismatch, "one degree k_i per polynomial");
  for (const Poly& fi : f)
    if (!Ring::same(*fi.ring(), *f[0].ring()))
      fail(ErrorCode::DimensionMismatch, "inputs live in different rings");
  CoxRing cox = CoxRing::create(f[0].ring(), torus_vars, P);
  std::vector<Poly> F;
  for (std::size_t i = 0; i < f.size(); ++i)
    F.push_back(cox.homogenize(f[i], cox.beta_offsets(k[i], 0)));
  return build_phi(cox, F);
}

std::vector<Poly> phi_row_coefficients(const PhiMatrix& M, const Poly& H) {
  if (!Ring::same(*H.ring(), *M.cox.total_ring()))
    fail(ErrorCode::DimensionMismatch,
         "polynomial must live in the homogeneous coordinate ring");
  const std::vector<std::size_t>& cvars = M.cox.cox_vars();
  auto cox_key = [&](const ExponentVector& e) {
    ExponentVector key(cvars.size());
    for (std::size_t i = 0; i < cvars.size(); ++i) key[i] = e[cvars[i]];
    return key;
  };
  std::map<ExponentVector, std::size_t> row_of;
  for (std::size_t r = 0; r < M.layout.rows.size(); ++r)
    row_of[cox_key(M.layout.rows[r].exps)] = r;

  const RingPtr& base = M.cox.base_ring();
  const std::size_t base_size = base->size();
  std::vector<std::vector<Term>> cell(M.layout.rows.size());
  for (const Term& t : H.terms()) {
    auto it = row_of.find(cox_key(t.exp));
    if (it == row_of.end())
      fail(ErrorCode::DegreeMismatch,
           "monomial outside the critical degree row basis");
    ExponentVector pe(t.exp.begin(),
                      t.exp.begin() + static_cast<std::ptrdiff_t>(base_size));
    cell[it->second].push_back({std::move(pe), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(cell.size());
  for (auto& terms : cell)
    out.push_back(Poly::from_terms(base, std::move(terms)));
  return out;
}

std::vector<BigRational> interior_ehrhart(const LatticePolytope& P) {
  const std::size_t n = P.dim();
  QMatrix V(n + 1, n + 1);
  std::vector<BigRational> rhs(n + 1);
  for (std::size_t r = 0; r <= n; ++r) {
    BigRational x(static_cast<long>(r + 1));
    BigRational p(1);
    for (std::size_t d = 0; d <= n; ++d) {
      V.at(r, d) = p;
      p *= x;
    }
    rhs[r] = BigRational(interior_count(P, Int(static_cast<long>(r + 1))));
  }
  std::vector<BigRational> coeffs = qsolve(V, rhs);
  BigRational check = eval_poly_at(coeffs, BigRational(static_cast<long>(n + 2)));
  if (check != BigRational(interior_count(P, Int(static_cast<long>(n + 2)))))
    fail(ErrorCode::Internal, "interior point counts are not polynomial");
  if (coeffs.back() != volume(P))
    fail(ErrorCode::Internal,
         "leading interior Ehrhart coefficient differs from the volume");
  return coeffs;
}

std::vector<Int> koszul_ranks(const LatticePolytope& P,
                              const std::vector<Int>& k) {
  const std::size_t r = k.size();
  if (r == 0) fail(ErrorCode::EmptyInput, "no degrees given");
  if (r > 62) fail(ErrorCode::Unsupported, "too many degrees");
  std::vector<Int> out(r + 1, Int(0));
  std::map<Int, Int> memo;
  for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
    Int kJ = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1ULL << i)) kJ += k[i];
    Int count;
    auto it = memo.find(kJ);
    if (it != memo.end()) {
      count = it->second;
    } else {
      count = (kJ == 0) ? Int(0) : interior_count(P, kJ);
      memo.emplace(kJ, count);
    }
    out[static_cast<std::size_t>(std::popcount(mask))] += count;
  }
  return out;
}

Int determinant_total_degree(const LatticePolytope& P,
                             const std::vector<Int>& k) {
  Int sum = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    Int prod = 1;
    for (std::size_t v = 0; v < k.size(); ++v)
      if (v != i) prod *= k[v];
    sum += prod;
  }
  return sum * normalized_volume(P);
}

Int determinant_degree_alternating(const LatticePolytope& P,
                                   const std::vector<Int>& k) {
  const std::size_t r = k.size();
  if (r == 0) fail(ErrorCode::EmptyInput, "no degrees given");
  if (r > 62) fail(ErrorCode::Unsupported, "too many degrees");
  std::vector<BigRational> p = interior_ehrhart(P);
  BigRational total(0);
  for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
    const std::size_t j = static_cast<std::size_t>(std::popcount(mask));
    if (j == 0) continue;
    Int kJ = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1ULL << i)) kJ += k[i];
    BigRational value = eval_poly_at(p, BigRational(kJ));
    BigRational term = BigRational(static_cast<long>(j)) * value;
    if ((r - j) % 2 == 1) term = -term;
    total += term;
  }
  if (!is_integer(total))
    fail(ErrorCode::Internal, "alternating rank sum is not an integer");
  return numerator(total);
}

Int resultant_index(const LatticePolytope& P, const std::vector<Int>& k) {
  if (k.empty()) fail(ErrorCode::EmptyInput, "no degrees given");
  Int k0 = k[0];
  for (const Int& ki : k) {
    if (ki < 1) fail(ErrorCode::DegreeMismatch, "degrees must be >= 1");
    if (ki > k0) k0 = ki;
  }
  return lattice_index(scaled_lattice_points(P, k0));
}

Int resultant_degree(const LatticePolytope& P, const std::vector<Int>& k,
                     std::size_t i) {
  if (i >= k.size())
    fail(ErrorCode::DimensionMismatch, "block index out of range");
  Int ell = resultant_index(P, k);
  Int prod = normalized_volume(P);
  for (std::size_t v = 0; v < k.size(); ++v)
    if (v != i) prod *= k[v];
  if (prod % ell != 0)
    fail(ErrorCode::NonIntegerDegree,
         "lattice index " + to_string(ell) + " does not divide " +
             to_string(prod));
  return prod / ell;
}

ResultantOutput resultant_via_det(const PhiMatrix& M) {
  if (M.rows() != M.cols())
    fail(ErrorCode::NonSquare, "matrix is " + std::to_string(M.rows()) + "x" +
                                   std::to_string(M.cols()) +
                                   "; use the minor gcd path");
  Poly det = fraction_free_det(M.entries);
  // The determinant is a fixed nonzero rational multiple of the ell-th power
  // of the resultant, the constant depending only on the layout.  For
  // symbolic input we strip it by passing to the primitive representative;
  // a fully numeric determinant keeps its value so vanishing stays exact.
  Poly rep = M.numeric ? det : normalize(det, /*shift_torus=*/false);
  ResultantOutput out{rep, resultant_index(M.layout.P, M.layout.k), false,
                      Int(rep.total_degree()),
                      determinant_total_degree(M.layout.P, M.layout.k),
                      M.numeric
                          ? "numeric determinant; a nonzero rational constant "
                            "times the ell-th power of the resultant"
                          : "primitive part of the determinant; equals the "
                            "ell-th power of the resultant up to sign"};
  out.certified = M.numeric || out.computed_degree == out.predicted_degree;
  return out;
}

ResultantOutput resultant_via_minor_gcd(const PhiMatrix& M,
                                        const MinorGcdOptions& opt) {
  const std::size_t r = M.rows(), c = M.cols();
  if (r > c)
    fail(ErrorCode::NonSquare, "matrix has more rows than columns");
  if (M.layout.columns.empty() ||
      M.layout.columns.back().kind != PhiColumn::Kind::Jacobian)
    fail(ErrorCode::Internal, "layout lacks the trailing Jacobian column");
  if (M.numeric) {
    if (r == c) return resultant_via_det(M);
    fail(ErrorCode::Unsupported,
         "minor gcd of a non-square fully numeric matrix is not defined");
  }
  const std::size_t jcol = c - 1;

  Rng rng(opt.seed);
  const std::size_t nvars = M.entries.ring()->size();
  auto draw_point = [&]() {
    std::vector<BigRational> point(nvars);
    for (std::size_t v = 0; v < nvars; ++v)
      point[v] = BigRational(rng.nonzero(100000));
    return point;
  };
  auto evaluate = [&](const std::vector<BigRational>& point) {
    QMatrix E(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        E.at(i, j) = M.entries.at(i, j).evaluate(point);
    return E;
  };
  std::vector<QMatrix> E;
  E.push_back(evaluate(draw_point()));
  E.push_back(evaluate(draw_point()));

  // Pivot columns at a random point, Jacobian column first so every selected
  // base contains it.
  auto select_columns = [&](const QMatrix& Ev) -> std::vector<std::size_t> {
    QMatrix A(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      A.at(i, 0) = Ev.at(i, jcol);
      for (std::size_t j = 0; j + 1 < c; ++j) A.at(i, j + 1) = Ev.at(i, j);
    }
    Rref red = rref(std::move(A));
    if (red.rank() != r) return {};
    if (red.pivot_cols[0] != 0) return {};
    std::vector<std::size_t> sel;
    for (std::size_t p : red.pivot_cols)
      sel.push_back(p == 0 ? jcol : p - 1);
    std::sort(sel.begin(), sel.end());
    return sel;
  };
  std::vector<std::size_t> S = select_columns(E[0]);
  if (S.empty()) S = select_columns(E[1]);
  if (S.empty())
    fail(ErrorCode::AllMinorsZero,
         "the matrix is rank deficient at two random parameter points");

  std::vector<std::size_t> all_rows(r);
  for (std::size_t i = 0; i < r; ++i) all_rows[i] = i;
  auto eval_minor = [&](const QMatrix& Ev, const std::vector<std::size_t>& cols) {
    QMatrix sub(r, cols.size());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        sub.at(i, j) = Ev.at(i, cols[j]);
    return qdet(std::move(sub));
  };

  const Int predicted = determinant_total_degree(M.layout.P, M.layout.k);
  Poly g = fraction_free_det(M.entries.submatrix(all_rows, S));
  std::size_t minors = 1;
  auto done = [&]() { return !g.is_zero() && Int(g.total_degree()) == predicted; };

  std::vector<bool> selected(c, false);
  for (std::size_t s : S) selected[s] = true;
  for (std::size_t si = 0; si < S.size() && !done(); ++si) {
    const std::size_t s = S[si];
    if (s == jcol) continue;  // every minor must keep the Jacobian column
    for (std::size_t u = 0; u + 1 < c && !done(); ++u) {
      if (selected[u]) continue;
      if (minors >= opt.max_minors) break;
      std::vector<std::size_t> cand;
      for (std::size_t x : S)
        if (x != s) cand.push_back(x);
      cand.push_back(u);
      std::sort(cand.begin(), cand.end());
      // Zero minors leave the gcd unchanged; skip candidates that vanish at
      // both sample points.
      if (eval_minor(E[0], cand) == 0 && eval_minor(E[1], cand) == 0) continue;
      Poly d = fraction_free_det(M.entries.submatrix(all_rows, cand));
      ++minors;
      if (d.is_zero()) continue;
      g = multipoly_gcd(g, d);
    }
    if (minors >= opt.max_minors) break;
  }

  Poly result = normalize(g, /*shift_torus=*/false);
  ResultantOutput out{result, resultant_index(M.layout.P, M.layout.k), false,
                      Int(result.total_degree()), predicted, ""};
  out.certified = out.computed_degree == out.predicted_degree;
  out.note = out.certified
                 ? "gcd of " + std::to_string(minors) +
                       " maximal minors through the Jacobian column; degree "
                       "certificate met"
                 : "UNCERTIFIED: budget of " + std::to_string(opt.max_minors) +
                       " minors exhausted at degree " +
                       to_string(out.computed_degree) + " (predicted " +
                       to_string(out.predicted_degree) + ")";
  return out;
}

Poly univariate_sylvester(const Poly& f, const Poly& g, std::size_t var) {
  if (!Ring::same(*f.ring(), *g.ring()))
    fail(ErrorCode::DimensionMismatch, "inputs live in different rings");
  if (var >= f.ring()->size())
    fail(ErrorCode::DimensionMismatch, "variable index out of range");
  if (f.is_zero() || g.is_zero())
    fail(ErrorCode::ZeroPolynomial, "resultant of the zero polynomial");

  auto lower = [&](const Poly& p) {
    std::int64_t m = p.min_exponent_in(var);
    if (m == 0) return p;
    ExponentVector delta(p.ring()->size(), 0);
    delta[var] = -m;
    return p.shift(delta);
  };
  Poly ff = lower(f), gg = lower(g);
  const std::int64_t df = ff.degree_in(var), dg = gg.degree_in(var);
  const std::size_t N = static_cast<std::size_t>(df + dg);
  if (N == 0) return Poly::constant(f.ring(), BigRational(1));

  auto fc = ff.as_univariate(var);
  auto gc = gg.as_univariate(var);
  PolyMatrix Syl(f.ring(), N, N);
  for (std::int64_t i = 0; i < dg; ++i)
    for (const auto& [e, p] : fc)
      Syl.at(static_cast<std::size_t>(i),
             static_cast<std::size_t>(i + df - e)) = p;
  for (std::int64_t i = 0; i < df; ++i)
    for (const auto& [e, p] : gc)
      Syl.at(static_cast<std::size_t>(dg + i),
             static_cast<std::size_t>(i + dg - e)) = p;
  return fraction_free_det(Syl);
}

namespace {

// Exponents of the face points in a basis of the facet lattice, relative to
// the first face point.
std::vector<std::vector<Int>> project_face(const SupportSet& points,
                                           const IntMatrix& K) {
  const std::size_t n = K.size();
  const std::size_t cols = K.empty() ? 0 : K[0].size();
  std::vector<std::vector<Int>> out;
  for (const LatticePoint& m : points) {
    std::vector<Int> diff(n);
    for (std::size_t d = 0; d < n; ++d) diff[d] = m[d] - points[0][d];
    auto s = solve_integral_full_rank(K, diff);
    if (!s || s->size() != cols)
      fail(ErrorCode::Internal, "face point outside the facet lattice");
    out.push_back(*s);
  }
  return out;
}

Int facet_sublattice_index(const std::vector<std::vector<std::vector<Int>>>&
                               projected,
                           std::size_t dim, bool* full_rank) {
  IntMatrix rows;
  for (const auto& face : projected)
    for (std::size_t i = 1; i < face.size(); ++i) rows.push_back(face[i]);
  auto idx = lattice_span_index(rows, dim);
  *full_rank = idx.has_value();
  return idx.value_or(Int(1));
}

Poly restrict_to_ring(const Poly& p, const RingPtr& target) {
  std::vector<Term> terms;
  for (const Term& t : p.terms()) {
    for (std::size_t v = target->size(); v < t.exp.size(); ++v)
      if (t.exp[v] != 0)
        fail(ErrorCode::Internal, "resultant depends on a projection variable");
    ExponentVector e(t.exp.begin(),
                     t.exp.begin() + static_cast<std::ptrdiff_t>(target->size()));
    terms.push_back({std::move(e), t.coeff});
  }
  return Poly::from_terms(target, std::move(terms));
}

FacetResultant facet_entry(const std::vector<Poly>& f,
                           const std::vector<std::size_t>& torus_vars,
                           const FaceData& fd) {
  const std::size_t n = torus_vars.size();
  const RingPtr& ring = f[0].ring();
  const Poly one = Poly::constant(ring, BigRational(1));

  if (n == 1) {
    // The leading form of the single input is one extreme term; its
    // coefficient is the facet resultant.
    if (fd.face_points[0].size() != 1)
      fail(ErrorCode::Internal, "vertex face with several minimizing points");
    Poly u = coefficient_at(f[0], torus_vars, fd.face_points[0][0]);
    return FacetResultant{fd.facet, u, Int(1), fd};
  }

  IntMatrix K = kernel_basis_of_row(fd.facet.normal);
  // Fix the orientation of the one-dimensional facet lattice.
  if (n == 2) {
    std::size_t lead = 0;
    while (lead < n && K[lead][0] == 0) ++lead;
    if (lead < n && K[lead][0] < 0)
      for (std::size_t d = 0; d < n; ++d) K[d][0] = -K[d][0];
  }
  std::vector<std::vector<std::vector<Int>>> projected;
  projected.reserve(n);
  for (const SupportSet& face : fd.face_points)
    projected.push_back(project_face(face, K));

  std::vector<std::size_t> singles;
  for (std::size_t j = 0; j < n; ++j)
    if (fd.face_points[j].size() == 1) singles.push_back(j);

  if (singles.size() >= 2) {
    // Two monomial leading forms: the resultant has degree zero in every
    // coefficient group.
    return FacetResultant{fd.facet, one, Int(1), fd};
  }

  bool full_rank = true;
  Int index = facet_sublattice_index(projected, n - 1, &full_rank);

  if (singles.size() == 1) {
    const std::size_t j0 = singles[0];
    Poly u = coefficient_at(f[j0], torus_vars, fd.face_points[j0][0]);
    std::vector<SupportSet> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != j0) others.push_back(projected[j]);
    Int mv = full_rank ? mixed_volume(others) : Int(0);
    Poly res = mv == 0 ? one : u.pow(static_cast<std::uint64_t>(to_long(mv)));
    return FacetResultant{fd.facet, res, full_rank ? index : Int(1), fd};
  }

  if (!full_rank)
    fail(ErrorCode::UnsupportedFaceConfiguration,
         "facet supports do not span the facet lattice");

  if (n == 2) {
    // Compress both edge supports by the sublattice index, take the
    // univariate resultant there, and raise it back.
    std::vector<Poly> p;
    for (std::size_t j = 0; j < 2; ++j) {
      Poly pj = Poly::zero(ring);
      for (std::size_t i = 0; i < fd.face_points[j].size(); ++i) {
        Int s = projected[j][i][0];
        if (s % index != 0)
          fail(ErrorCode::Internal, "edge exponent outside the index lattice");
        ExponentVector delta(ring->size(), 0);
        delta[torus_vars[0]] = to_long(s / index);
        pj += coefficient_at(f[j], torus_vars, fd.face_points[j][i])
                  .shift(delta);
      }
      p.push_back(pj);
    }
    Poly base = univariate_sylvester(p[0], p[1], torus_vars[0]);
    return FacetResultant{fd.facet,
                          base.pow(static_cast<std::uint64_t>(to_long(index))),
                          index, fd};
  }

  // n >= 3 with no monomial leading form: only systems whose faces share a
  // common polytope (up to dilation and translation) are handled.
  if (index != 1)
    fail(ErrorCode::UnsupportedFaceConfiguration,
         "facet supports span a proper sublattice of the facet lattice");
  std::vector<LatticePolytope> hulls;
  for (const auto& proj : projected) {
    if (affine_rank(proj) != n - 1)
      fail(ErrorCode::UnsupportedFaceConfiguration,
           "a leading form is supported on a lower-dimensional face");
    hulls.push_back(convex_hull(proj));
  }
  std::size_t jstar = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (volume(hulls[j]) < volume(hulls[jstar])) jstar = j;
  const LatticePolytope& Q = hulls[jstar];
  const BigRational volQ = volume(Q);

  std::vector<Int> kvec;
  std::vector<std::vector<Int>> tau;
  for (std::size_t j = 0; j < n; ++j) {
    BigRational ratio = volume(hulls[j]) / volQ;
    if (!is_integer(ratio))
      fail(ErrorCode::UnsupportedFaceConfiguration,
           "face volumes are not integer multiples of the smallest face");
    Int kj;
    Int num = numerator(ratio);
    if (!mpz_root(kj.get_mpz_t(), num.get_mpz_t(),
                  static_cast<unsigned long>(n - 1)))
      fail(ErrorCode::UnsupportedFaceConfiguration,
           "face volume ratio is not a perfect power");
    std::vector<Int> tj(n - 1);
    for (std::size_t d = 0; d < n - 1; ++d)
      tj[d] = hulls[j].vertices().front()[d] - kj * Q.vertices().front()[d];
    std::vector<LatticePoint> mapped;
    for (const LatticePoint& w : Q.vertices()) {
      LatticePoint x(n - 1);
      for (std::size_t d = 0; d < n - 1; ++d) x[d] = kj * w[d] + tj[d];
      mapped.push_back(std::move(x));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped != hulls[j].vertices())
      fail(ErrorCode::UnsupportedFaceConfiguration,
           "leading forms do not share a common polytope");
    kvec.push_back(kj);
    tau.push_back(std::move(tj));
  }

  std::vector<std::string> fresh;
  for (std::size_t d = 0; d + 1 < n; ++d)
    fresh.push_back("_s" + std::to_string(d + 1));
  RingPtr ext = extend_ring(ring, fresh, VarKind::Torus);
  std::vector<std::size_t> fresh_idx;
  for (std::size_t d = 0; d + 1 < n; ++d)
    fresh_idx.push_back(ring->size() + d);
  std::vector<Poly> fprime;
  for (std::size_t j = 0; j < n; ++j) {
    Poly pj = Poly::zero(ext);
    for (std::size_t i = 0; i < fd.face_points[j].size(); ++i) {
      ExponentVector delta(ext->size(), 0);
      for (std::size_t d = 0; d + 1 < n; ++d)
        delta[fresh_idx[d]] = to_long(projected[j][i][d] - tau[j][d]);
      pj += coefficient_at(f[j], torus_vars, fd.face_points[j][i])
                .embed(ext)
                .shift(delta);
    }
    fprime.push_back(pj);
  }

  if (resultant_index(Q, kvec) != 1)
    fail(ErrorCode::UnsupportedFaceConfiguration,
         "face system has a nontrivial lattice index");
  PhiMatrix M = build_phi(Q, kvec, fprime, fresh_idx);
  ResultantOutput R = M.rows() == M.cols() ? resultant_via_det(M)
                                           : resultant_via_minor_gcd(M);
  if (!R.certified)
    fail(ErrorCode::UnsupportedFaceConfiguration,
         "face resultant could not be certified");
  return FacetResultant{fd.facet, restrict_to_ring(R.polynomial, ring), Int(1),
                        fd};
}

}  // namespace

FacetResultantSet facet_resultants(const std::vector<Poly>& f,
                                   const std::vector<std::size_t>& torus_vars) {
  const std::size_t n = torus_vars.size();
  if (f.size() != n)
    fail(ErrorCode::ArityMismatch,
         "facet resultants need exactly n polynomials in n torus variables");
  if (n == 0) fail(ErrorCode::EmptyInput, "no torus variables");
  for (const Poly& fi : f) {
    if (fi.is_zero()) fail(ErrorCode::ZeroPolynomial, "zero input polynomial");
    if (!Ring::same(*fi.ring(), *f[0].ring()))
      fail(ErrorCode::DimensionMismatch, "inputs live in different rings");
  }
  std::vector<SupportSet> supports;
  for (const Poly& fi : f) supports.push_back(support_of(fi, torus_vars));
  MinkowskiSum ms = minkowski_sum(supports);

  FacetResultantSet out{ms.sum, {}, {}};
  for (const HalfSpace& facet : ms.sum.facets()) {
    out.sum_offsets.push_back(facet.offset);
    out.entries.push_back(facet_entry(f, torus_vars,
                                      face_support(supports, facet)));
  }
  return out;
}

const FacetResultant& FacetResultantSet::by_normal(
    const LatticePoint& eta) const {
  for (const FacetResultant& e : entries)
    if (e.facet.normal == eta) return e;
  fail(ErrorCode::Internal, "no facet with the requested normal");
}

Poly FactoredPoly::expand(const RingPtr& ring) const {
  Poly p = Poly::constant(ring, unit);
  for (const auto& [base, e] : factors) {
    assert(e >= 0);
    Poly b = Ring::same(*base.ring(), *ring) ? base : base.embed(ring);
    p *= b.pow(static_cast<std::uint64_t>(to_long(e)));
  }
  return p;
}

FactoredPoly monomial_specialized_resultant(const LatticePoint& m,
                                            const FacetResultantSet& fr,
                                            const Int& k0,
                                            const std::vector<Int>& b) {
  if (fr.entries.size() != b.size())
    fail(ErrorCode::DimensionMismatch,
         "one base offset per facet resultant expected");
  FactoredPoly out;
  for (std::size_t i = 0; i < fr.entries.size(); ++i) {
    const FacetResultant& e = fr.entries[i];
    if (m.size() != e.facet.normal.size())
      fail(ErrorCode::DimensionMismatch, "lattice point dimension mismatch");
    Int exp = dot(m, e.facet.normal) + k0 * b[i];
    if (exp < 0)
      fail(ErrorCode::NegativeExponent,
           "monomial lies outside the dilated polytope (facet " +
               std::to_string(i) + " gives exponent " + to_string(exp) + ")");
    if (exp > 0) out.factors.emplace_back(e.resultant, exp);
  }
  return out;
}

Poly det_with_replaced_column(const PolyMatrix& M, std::size_t col,
                              const std::vector<Poly>& replacement) {
  if (M.rows() != M.cols())
    fail(ErrorCode::NonSquare, "determinant of a non-square matrix");
  if (col >= M.cols())
    fail(ErrorCode::DimensionMismatch, "column index out of range");
  if (replacement.size() != M.rows())
    fail(ErrorCode::DimensionMismatch, "replacement column length mismatch");
  PolyMatrix A(M.ring(), M.rows(), M.cols());
  for (std::size_t r = 0; r < M.rows(); ++r) {
    std::size_t t = 0;
    for (std::size_t c = 0; c < M.cols(); ++c) {
      if (c == col) continue;
      A.at(r, t++) = M.at(r, c);
    }
    A.at(r, M.cols() - 1) = replacement[r];
  }
  Poly det = fraction_free_det(A);
  return ((M.cols() - 1 - col) % 2 == 1) ? -det : det;
}

}  // namespace tres
