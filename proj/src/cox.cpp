#include "tres/cox.hpp"

#include <algorithm>
#include <sstream>

#include "tres/error.hpp"
#include "tres/gcd.hpp"
#include "tres/matrix.hpp"

namespace tres {

std::string DegreeClass::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (i) os << ",";
    os << rep[i].get_str();
  }
  os << "]";
  return os.str();
}

CoxRing CoxRing::create(const RingPtr& base,
                        std::vector<std::size_t> torus_vars,
                        const LatticePolytope& P, const std::string& prefix) {
  CoxRing cox;
  cox.base_ = base;
  cox.torus_vars_ = std::move(torus_vars);
  cox.P_ = P;
  if (cox.torus_vars_.size() != P.dim())
    fail(ErrorCode::DimensionMismatch,
         "torus variable count differs from polytope dimension");
  for (std::size_t v : cox.torus_vars_)
    if (v >= base->size() || base->kind(v) != VarKind::Torus)
      fail(ErrorCode::Internal, "torus variable index invalid");
  if (P.facets().empty())
    fail(ErrorCode::Unsupported, "polytope has no facet description");

  const std::size_t s = P.facets().size();
  std::string pre = prefix;
  auto collides = [&](const std::string& p) {
    for (std::size_t i = 1; i <= s; ++i)
      if (base->find(p + std::to_string(i)) >= 0) return true;
    return false;
  };
  while (collides(pre)) pre = "_" + pre;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= s; ++i) names.push_back(pre + std::to_string(i));
  cox.total_ = extend_ring(base, names, VarKind::Cox);
  for (std::size_t i = 0; i < s; ++i)
    cox.cox_vars_.push_back(base->size() + i);

  const std::size_t n = P.dim();
  for (const HalfSpace& h : P.facets()) {
    cox.normals_.push_back(h.normal);
    cox.b_.push_back(h.offset);
  }
  cox.class_basis_ = hermite_column_basis(cox.normals_);
  cox.split_matrix_.assign(s, std::vector<Int>(n + 1, Int(0)));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < n; ++j) cox.split_matrix_[i][j] = cox.normals_[i][j];
    cox.split_matrix_[i][n] = cox.b_[i];
  }
  return cox;
}

DegreeClass CoxRing::class_of(const std::vector<Int>& a) const {
  if (a.size() != facet_count())
    fail(ErrorCode::DimensionMismatch, "degree vector length");
  return DegreeClass{reduce_mod_lattice(class_basis_, a)};
}

std::vector<Int> CoxRing::beta_offsets(const Int& k, const Int& l) const {
  std::vector<Int> c(facet_count());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * b_[i] + l;
  return c;
}

DegreeClass CoxRing::beta_combination(const Int& k, const Int& l) const {
  return class_of(beta_offsets(k, l));
}

DegreeClass CoxRing::degree_of(const Poly& F) const {
  if (F.is_zero()) fail(ErrorCode::ZeroPolynomial, "degree of zero polynomial");
  if (!Ring::same(*F.ring(), *total_))
    fail(ErrorCode::DimensionMismatch, "polynomial not in the cox ring");
  std::optional<DegreeClass> deg;
  for (const Term& t : F.terms()) {
    for (std::size_t v : torus_vars_)
      if (t.exp[v] != 0)
        fail(ErrorCode::NotOfDegreeKBeta,
             "term involves torus variables; not homogeneous");
    std::vector<Int> a(facet_count());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = Int(t.exp[cox_vars_[i]]);
    DegreeClass c = class_of(a);
    if (!deg)
      deg = c;
    else if (*deg != c)
      fail(ErrorCode::NotOfDegreeKBeta, "terms lie in different classes");
  }
  return *deg;
}

std::optional<CoxRing::DegreeSplit> CoxRing::split_degree(
    const std::vector<Int>& a) const {
  if (a.size() != facet_count())
    fail(ErrorCode::DimensionMismatch, "degree vector length");
  auto x = solve_integral_full_rank(split_matrix_, a);
  if (!x) return std::nullopt;
  DegreeSplit out;
  const std::size_t n = dim();
  out.m.assign(x->begin(), x->begin() + n);
  out.k = (*x)[n];
  return out;
}

Int CoxRing::beta_degree(const Poly& F) const {
  degree_of(F);  // validates homogeneity
  std::vector<Int> a(facet_count());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = Int(F.leading_term().exp[cox_vars_[i]]);
  auto split = split_degree(a);
  if (!split)
    fail(ErrorCode::NotOfDegreeKBeta,
         "degree is not an integer multiple of the polytope class");
  return split->k;
}

Poly CoxRing::homogenize(const Poly& f, const std::vector<Int>& offsets) const {
  if (offsets.size() != facet_count())
    fail(ErrorCode::DimensionMismatch, "offset vector length");
  Poly g = Ring::same(*f.ring(), *total_) ? f : f.embed(total_);
  std::vector<Term> out;
  for (const Term& t : g.terms()) {
    for (std::size_t cv : cox_vars_)
      if (t.exp[cv] != 0)
        fail(ErrorCode::Internal, "homogenize input already uses facet variables");
    Term h = t;
    LatticePoint m(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      m[j] = Int(t.exp[torus_vars_[j]]);
      h.exp[torus_vars_[j]] = 0;
    }
    for (std::size_t i = 0; i < facet_count(); ++i) {
      Int a = offsets[i];
      for (std::size_t j = 0; j < dim(); ++j) a += normals_[i][j] * m[j];
      if (a < 0)
        fail(ErrorCode::SupportOutsidePolytope,
             "support point violates facet " + std::to_string(i));
      h.exp[cox_vars_[i]] = to_long(a);
    }
    out.push_back(std::move(h));
  }
  return Poly::from_terms(total_, std::move(out));
}

LatticePoint CoxRing::monomial_point(const ExponentVector& exps,
                                     const std::vector<Int>& offsets) const {
  if (exps.size() != total_->size())
    fail(ErrorCode::DimensionMismatch, "exponent vector length");
  std::vector<Int> rhs(facet_count());
  for (std::size_t i = 0; i < facet_count(); ++i)
    rhs[i] = Int(exps[cox_vars_[i]]) - offsets[i];
  auto m = solve_integral_full_rank(normals_, rhs);
  if (!m)
    fail(ErrorCode::NotOfDegreeKBeta,
         "monomial does not lie in the requested graded piece");
  return *m;
}

std::vector<CoxRing::GradedMonomial> CoxRing::graded_monomials(
    const std::vector<Int>& offsets) const {
  if (offsets.size() != facet_count())
    fail(ErrorCode::DimensionMismatch, "offset vector length");
  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < facet_count(); ++i)
    hs.push_back({normals_[i], offsets[i]});
  std::vector<GradedMonomial> out;
  for (LatticePoint& m : hpoly_lattice_points(hs, dim())) {
    GradedMonomial gm;
    gm.exps.assign(total_->size(), 0);
    for (std::size_t i = 0; i < facet_count(); ++i) {
      Int a = offsets[i];
      for (std::size_t j = 0; j < dim(); ++j) a += normals_[i][j] * m[j];
      assert(a >= 0);
      gm.exps[cox_vars_[i]] = to_long(a);
    }
    gm.m = std::move(m);
    out.push_back(std::move(gm));
  }
  std::sort(out.begin(), out.end(),
            [](const GradedMonomial& x, const GradedMonomial& y) {
              return grlex_compare(x.exps, y.exps) > 0;
            });
  return out;
}

EulerFormTable euler_form(const CoxRing& cox) {
  const std::size_t s = cox.facet_count();
  const std::size_t n = cox.dim();
  EulerFormTable table;
  if (s < n) return table;
  std::vector<std::size_t> comb(n);
  for (std::size_t i = 0; i < n; ++i) comb[i] = i;
  for (;;) {
    IntMatrix M(n, std::vector<Int>(n));
    for (std::size_t row = 0; row < n; ++row)      // coordinate
      for (std::size_t col = 0; col < n; ++col)    // chosen normal
        M[row][col] = cox.normals()[comb[col]][row];
    // small integer determinant via the rational elimination path
    QMatrix Q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) Q.at(i, j) = BigRational(M[i][j]);
    BigRational d = qdet(std::move(Q));
    if (d != 0) {
      EulerFormEntry e;
      e.facets = comb;
      e.det = numerator(d);
      e.complement.assign(cox.total_ring()->size(), 0);
      for (std::size_t i = 0; i < s; ++i)
        if (std::find(comb.begin(), comb.end(), i) == comb.end())
          e.complement[cox.cox_vars()[i]] = 1;
      table.entries.push_back(std::move(e));
    }
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (comb[i] < i + s - n) {
        ++comb[i];
        for (std::size_t j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return table;
}

namespace {

Poly jacobian_from_entry(const CoxRing& cox, const std::vector<Poly>& F,
                         const std::vector<Int>& k,
                         const EulerFormEntry& entry) {
  const std::size_t n = cox.dim();
  const RingPtr& R = cox.total_ring();
  PolyMatrix B(R, n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    B.at(0, j) = F[j] * BigRational(k[j]);
  for (std::size_t r = 1; r <= n; ++r) {
    std::size_t xv = cox.cox_vars()[entry.facets[r - 1]];
    for (std::size_t j = 0; j <= n; ++j) B.at(r, j) = F[j].derivative(xv);
  }
  Poly det = fraction_free_det(B);
  Poly divisor =
      Poly::monomial(R, entry.complement, BigRational(entry.det));
  try {
    return exact_divide(det, divisor);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivisible)
      fail(ErrorCode::NonExactDivision,
           "bordered determinant not divisible by the volume-form factor");
    throw;
  }
}

}  // namespace

ToricJacobian toric_jacobian(const CoxRing& cox, const std::vector<Poly>& F) {
  const std::size_t n = cox.dim();
  if (F.size() != n + 1)
    fail(ErrorCode::ArityMismatch, "toric jacobian needs n+1 polynomials");
  ToricJacobian out{Poly::zero(cox.total_ring()), {}};
  std::vector<Poly> lifted;
  for (const Poly& f : F) {
    lifted.push_back(Ring::same(*f.ring(), *cox.total_ring())
                         ? f
                         : f.embed(cox.total_ring()));
    out.k.push_back(cox.beta_degree(lifted.back()));
  }
  EulerFormTable table = euler_form(cox);
  if (table.entries.empty())
    fail(ErrorCode::NoIndependentSubset, "no independent facet normals");
  out.jac = jacobian_from_entry(cox, lifted, out.k, table.entries[0]);
  if (table.entries.size() > 1) {
    Poly check = jacobian_from_entry(cox, lifted, out.k, table.entries[1]);
    if (!(check == out.jac))
      fail(ErrorCode::Internal,
           "toric jacobian differs between independent index sets");
  }
  return out;
}

Poly affine_jacobian(const std::vector<Poly>& f,
                     const std::vector<std::size_t>& torus_vars) {
  const std::size_t n = torus_vars.size();
  if (f.size() != n + 1)
    fail(ErrorCode::ArityMismatch, "affine jacobian needs n+1 polynomials");
  if (f.empty()) fail(ErrorCode::EmptyInput, "affine_jacobian");
  const RingPtr& R = f[0].ring();
  PolyMatrix M(R, n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    M.at(0, j) = f[j];
    for (std::size_t r = 1; r <= n; ++r)
      M.at(r, j) = f[j].log_derivative(torus_vars[r - 1]);
  }
  return fraction_free_det(M);
}

Poly toric_affine_jacobian(const std::vector<Poly>& f,
                           const std::vector<std::size_t>& torus_vars) {
  const std::size_t n = torus_vars.size();
  if (f.size() != n)
    fail(ErrorCode::ArityMismatch, "torus jacobian needs n polynomials");
  if (f.empty()) fail(ErrorCode::EmptyInput, "toric_affine_jacobian");
  const RingPtr& R = f[0].ring();
  PolyMatrix M(R, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t kk = 0; kk < n; ++kk)
      M.at(j, kk) = f[j].log_derivative(torus_vars[kk]);
  return fraction_free_det(M);
}

Poly bracket_expansion(const RingPtr& ring, const SupportSet& points,
                       const std::vector<std::vector<Poly>>& coeffs,
                       const std::vector<std::size_t>& torus_vars) {
  const std::size_t n = torus_vars.size();
  const std::size_t cnt = points.size();
  if (coeffs.size() != n + 1)
    fail(ErrorCode::ArityMismatch, "bracket expansion needs n+1 rows");
  for (const auto& row : coeffs)
    if (row.size() != cnt)
      fail(ErrorCode::DimensionMismatch, "coefficient row length");
  Poly acc = Poly::zero(ring);
  if (cnt < n + 1) return acc;
  std::vector<std::size_t> comb(n + 1);
  for (std::size_t i = 0; i <= n; ++i) comb[i] = i;
  for (;;) {
    // det(1, m) over the chosen support points
    QMatrix M(n + 1, n + 1);
    for (std::size_t col = 0; col <= n; ++col) {
      M.at(0, col) = BigRational(1);
      for (std::size_t row = 1; row <= n; ++row)
        M.at(row, col) = BigRational(points[comb[col]][row - 1]);
    }
    BigRational mdet = qdet(std::move(M));
    if (mdet != 0) {
      PolyMatrix B(ring, n + 1, n + 1);
      for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t l = 0; l <= n; ++l) B.at(j, l) = coeffs[j][comb[l]];
      Poly bracket = fraction_free_det(B);
      if (!bracket.is_zero()) {
        ExponentVector e(ring->size(), 0);
        for (std::size_t l = 0; l <= n; ++l)
          for (std::size_t r = 0; r < n; ++r)
            e[torus_vars[r]] += to_long(points[comb[l]][r]);
        acc += bracket * Poly::monomial(ring, e, mdet) ;
      }
    }
    bool advanced = false;
    for (std::size_t i = n + 1; i-- > 0;) {
      if (comb[i] < i + cnt - n - 1) {
        ++comb[i];
        for (std::size_t j = i + 1; j <= n; ++j) comb[j] = comb[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return acc;
}

SupportSet support_of(const Poly& f,
                      const std::vector<std::size_t>& torus_vars) {
  SupportSet pts;
  for (const Term& t : f.terms()) {
    LatticePoint m(torus_vars.size());
    for (std::size_t j = 0; j < torus_vars.size(); ++j)
      m[j] = Int(t.exp[torus_vars[j]]);
    pts.push_back(std::move(m));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Poly coefficient_at(const Poly& f, const std::vector<std::size_t>& torus_vars,
                    const LatticePoint& m) {
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    bool match = true;
    for (std::size_t j = 0; j < torus_vars.size() && match; ++j)
      match = Int(t.exp[torus_vars[j]]) == m[j];
    if (!match) continue;
    Term s = t;
    for (std::size_t v : torus_vars) s.exp[v] = 0;
    out.push_back(std::move(s));
  }
  return Poly::from_terms(f.ring(), std::move(out));
}

}  // namespace tres
