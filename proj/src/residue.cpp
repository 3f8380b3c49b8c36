#include "tres/residue.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "tres/error.hpp"
#include "tres/gcd.hpp"
#include "tres/matrix.hpp"
#include "tres/rng.hpp"

namespace tres {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.size() != b.size())
    fail(ErrorCode::DimensionMismatch, "dot product length mismatch");
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

LatticePoint sub(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

LatticePoint scaled(const std::vector<Int>& v, long k) {
  LatticePoint r(v);
  for (Int& x : r) x *= k;
  return r;
}

Poly torus_monomial(const RingPtr& ring, const std::vector<std::size_t>& tv,
                    const LatticePoint& m) {
  ExponentVector e(ring->size(), 0);
  for (std::size_t i = 0; i < tv.size(); ++i) e[tv[i]] = to_long(m[i]);
  return Poly::monomial(ring, e, BigRational(1));
}

RationalFunction rf_zero(const RingPtr& ring) {
  return RationalFunction(Poly::zero(ring));
}

/// Determinant of A with column k replaced by rhs, expanded along that
/// column so the (large) rhs polynomials enter only linearly.
Poly replaced_column_det(const PolyMatrix& A, std::size_t k,
                         const std::vector<Poly>& rhs) {
  const std::size_t W = A.rows();
  Poly acc = Poly::zero(A.ring());
  for (std::size_t j = 0; j < W; ++j) {
    if (rhs[j].is_zero()) continue;
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < W; ++i) {
      if (i != j) rs.push_back(i);
      if (i != k) cs.push_back(i);
    }
    Poly minor = W == 1 ? Poly::constant(A.ring(), BigRational(1))
                        : fraction_free_det(A.submatrix(rs, cs));
    if ((j + k) % 2 != 0) minor = -minor;
    acc = acc + minor * rhs[j];
  }
  return acc;
}

/// Reduced-denominator factorization over the facet resultants; throws
/// DenominatorNotCertified when a factor escapes them or a multiplicity
/// exceeds its pole bound.
std::pair<Poly, std::vector<std::pair<LatticePoint, Int>>> factor_reduced(
    const RationalFunction& v, const FacetResultantSet& fr,
    const std::vector<Int>& bound) {
  Poly d = v.den();
  std::vector<std::pair<LatticePoint, Int>> factors;
  for (std::size_t i = 0; i < fr.entries.size(); ++i) {
    const Poly& r = fr.entries[i].resultant;
    if (r.is_constant()) continue;
    // Distinct facets may share one resultant polynomial (e.g. two facets
    // both contributing a coefficient monomial), so cap each entry at its
    // own pole bound and let the next entry absorb the rest.
    Int count(0);
    while (count < bound[i] && !d.is_constant() && divides(r, d)) {
      d = exact_divide(d, r);
      count += 1;
    }
    if (count > 0) factors.emplace_back(fr.sum.facets()[i].normal, count);
  }
  if (!d.is_constant())
    fail(ErrorCode::DenominatorNotCertified,
         "reduced denominator has a factor outside the facet resultants");
  BigRational c = d.constant_value();
  Poly numerator = (BigRational(1) / c) * v.num();
  return {numerator, factors};
}

}  // namespace

MuSplit mu_split(const LatticePoint& m, const std::vector<HalfSpace>& facets,
                 const std::vector<Int>& a) {
  if (facets.size() != a.size())
    fail(ErrorCode::DimensionMismatch, "facet/offset count mismatch");
  MuSplit out;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Int v = dot(m, facets[i].normal) + a[i] - 1;
    out.plus.push_back(v > 0 ? v : Int(0));
    out.minus.push_back(v < 0 ? Int(-v) : Int(0));
  }
  return out;
}

Completion completion_vector(const LatticePolytope& P,
                             const std::vector<Int>& b,
                             const std::vector<Int>& minus,
                             const CompletionOptions& opts) {
  const std::size_t s = P.facets().size();
  if (b.size() != s || minus.size() != s)
    fail(ErrorCode::DimensionMismatch, "facet data length mismatch");
  for (Int k0 = opts.min_k0; k0 <= opts.max_k0; k0 += 1) {
    std::vector<HalfSpace> hs;
    hs.reserve(s);
    for (std::size_t i = 0; i < s; ++i)
      hs.push_back({P.facets()[i].normal, k0 * b[i] - minus[i]});
    std::optional<Completion> best;
    Int best_total(0);
    for (const LatticePoint& p : hpoly_lattice_points(hs, P.dim())) {
      std::vector<Int> c(s);
      Int total(0);
      for (std::size_t i = 0; i < s; ++i) {
        c[i] = dot(p, hs[i].normal) + hs[i].offset;
        total += c[i];
      }
      if (opts.avoid_index && c[*opts.avoid_index] != 0) continue;
      if (!best || total < best_total ||
          (total == best_total && p < best->p)) {
        best = Completion{k0, p, c};
        best_total = total;
      }
    }
    if (best) return *best;
  }
  fail(ErrorCode::Unsupported,
       "no degree completion within the k0 budget");
}

Int residue_normalization(const LatticePolytope& P,
                          const std::vector<Int>& k) {
  if (k.size() != P.dim() + 1)
    fail(ErrorCode::ArityMismatch, "expected dim + 1 degrees");
  BigRational nv = volume(P) * BigRational(factorial(
      static_cast<unsigned>(P.dim())));
  if (!is_integer(nv))
    fail(ErrorCode::Internal, "normalized volume is not an integer");
  Int g = numerator(nv);
  for (const Int& ki : k) g *= ki;
  return g;
}

RationalFunction toric_residue(const PhiMatrix& M, const Poly& H) {
  const std::size_t rows = M.rows(), cols = M.cols();
  if (rows == 0 || cols == 0)
    fail(ErrorCode::EmptyCriticalDegree, "empty critical-degree layout");
  if (M.layout.columns.back().kind != PhiColumn::Kind::Jacobian)
    fail(ErrorCode::Internal, "Jacobian column is not last");
  if (rows > cols)
    fail(ErrorCode::Unsupported,
         "critical degree has more interior monomials than columns");
  const std::size_t jcol = cols - 1;
  const std::vector<Poly> h = phi_row_coefficients(M, H);
  const BigRational gamma(residue_normalization(M.layout.P, M.layout.k));
  const RingPtr& ring = M.entries.ring();

  bool h_numeric = true;
  for (const Poly& p : h) h_numeric = h_numeric && p.is_constant();

  if (M.numeric && h_numeric) {
    // Rational elimination of [entries | h]: the decomposition exists and
    // theta is unique exactly when h is consistent and the Jacobian column
    // is a pivot (it is processed after every multiplier column).
    QMatrix A(rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c)
        A.at(r, c) = M.entries.at(r, c).constant_value();
      A.at(r, cols) = h[r].constant_value();
    }
    Rref R = rref(std::move(A));
    std::optional<std::size_t> jrow;
    for (std::size_t i = 0; i < R.pivot_cols.size(); ++i) {
      if (R.pivot_cols[i] == cols)
        fail(ErrorCode::ResultantVanishes,
             "no decomposition over the system: specialized resultant "
             "vanishes");
      if (R.pivot_cols[i] == jcol) jrow = i;
    }
    if (!jrow)
      fail(ErrorCode::ResultantVanishes,
           "Jacobian column depends on the multipliers: specialized "
           "resultant vanishes");
    // The solution with all free multiplier coordinates set to zero.
    BigRational theta = R.mat.at(*jrow, cols);
    return RationalFunction(Poly::constant(ring, theta * gamma));
  }

  if (rows == cols) {
    Poly den = fraction_free_det(M.entries);
    if (den.is_zero())
      fail(ErrorCode::ResultantVanishes,
           "determinant of the critical-degree map vanishes");
    Poly num = det_with_replaced_column(M.entries, jcol, h);
    return RationalFunction(gamma * num, den);
  }

  // Non-square symbolic layout: certify theta-uniqueness (the Jacobian
  // column is independent of the multiplier image) at a random rational
  // point, then solve on an evaluated-full-rank square column subset
  // containing the Jacobian.  Existence on the subset plus global
  // uniqueness determine theta exactly.
  Rng rng(0x746f726963726573ULL);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<BigRational> point;
    point.reserve(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i)
      point.emplace_back(rng.nonzero(100000));
    QMatrix E(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        E.at(r, c) = M.entries.at(r, c).evaluate(point);
    Rref natural = rref(E);
    if (natural.rank() < rows) continue;
    if (std::find(natural.pivot_cols.begin(), natural.pivot_cols.end(),
                  jcol) == natural.pivot_cols.end())
      continue;
    // Greedy independent columns with the Jacobian first so it is kept.
    std::vector<std::size_t> order{jcol};
    for (std::size_t c = 0; c < cols; ++c)
      if (c != jcol) order.push_back(c);
    QMatrix EP(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        EP.at(r, c) = M.entries.at(r, order[c]).evaluate(point);
    Rref perm = rref(std::move(EP));
    if (perm.rank() < rows) continue;
    std::vector<std::size_t> sel;
    for (std::size_t pc : perm.pivot_cols) sel.push_back(order[pc]);
    std::sort(sel.begin(), sel.end());
    std::vector<std::size_t> all_rows(rows);
    for (std::size_t i = 0; i < rows; ++i) all_rows[i] = i;
    PolyMatrix subm = M.entries.submatrix(all_rows, sel);
    const std::size_t jpos = static_cast<std::size_t>(
        std::find(sel.begin(), sel.end(), jcol) - sel.begin());
    Poly den = fraction_free_det(subm);
    if (den.is_zero()) continue;
    Poly num = det_with_replaced_column(subm, jpos, h);
    return RationalFunction(gamma * num, den);
  }
  fail(ErrorCode::ResultantVanishes,
       "Jacobian column is not independent of the multipliers at random "
       "points");
}

FactoredPoly denominator_bound(const FacetResultantSet& fr,
                               const std::vector<Int>& exponents) {
  if (exponents.size() != fr.entries.size())
    fail(ErrorCode::DimensionMismatch, "one exponent per facet required");
  FactoredPoly out;
  for (std::size_t i = 0; i < fr.entries.size(); ++i) {
    if (exponents[i] < 0)
      fail(ErrorCode::NegativeExponent, "negative facet exponent");
    if (exponents[i] > 0)
      out.factors.emplace_back(fr.entries[i].resultant, exponents[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unmixed residues

UnmixedResidueTable::UnmixedResidueTable(std::vector<Poly> f,
                                         std::vector<std::size_t> torus_vars)
    : f_(std::move(f)), tv_(std::move(torus_vars)) {
  const std::size_t n = tv_.size();
  if (f_.empty() || f_.size() != n)
    fail(ErrorCode::ArityMismatch,
         "need as many polynomials as torus variables");
  for (const Poly& g : f_)
    if (!Ring::same(*g.ring(), *f_.front().ring()))
      fail(ErrorCode::DimensionMismatch, "polynomials from different rings");
  std::vector<SupportSet> supports;
  for (const Poly& g : f_) supports.push_back(support_of(g, tv_));
  P_ = convex_hull(supports.front());
  for (const SupportSet& s : supports)
    if (!(convex_hull(s).vertices() == P_.vertices()))
      fail(ErrorCode::Unsupported,
           "unmixed residues require a common Newton polytope");
  fr_ = facet_resultants(f_, tv_);
  if (fr_.sum.facets().size() != P_.facets().size())
    fail(ErrorCode::Internal, "facet count mismatch between P and nP");
  a_ = fr_.sum_offsets;
  for (const FacetResultant& e : fr_.entries)
    if (e.resultant.is_zero() ||
        (e.resultant.is_constant() && e.resultant.constant_value() == 0))
      fail(ErrorCode::FacetResultantVanishes,
           "a facet resultant of the system vanishes");
}

MuSplit UnmixedResidueTable::mu(const LatticePoint& m) const {
  if (m.size() != tv_.size())
    fail(ErrorCode::DimensionMismatch, "lattice point of wrong dimension");
  return mu_split(m, fr_.sum.facets(), a_);
}

Poly UnmixedResidueTable::bound_poly(const std::vector<Int>& minus) const {
  Poly B = Poly::constant(f_.front().ring(), BigRational(1));
  for (std::size_t i = 0; i < minus.size(); ++i)
    if (minus[i] > 0)
      B = B * fr_.entries[i].resultant.pow(
                  static_cast<std::uint64_t>(to_long(minus[i])));
  return B;
}

RationalFunction UnmixedResidueTable::residue(const LatticePoint& m) {
  if (m.size() != tv_.size())
    fail(ErrorCode::DimensionMismatch, "lattice point of wrong dimension");
  auto hit = reduced_.find(m);
  if (hit != reduced_.end()) return hit->second;
  Poly N = numerator_at(m);
  std::vector<Int> e = mu(m).minus;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Poly& r = fr_.entries[i].resultant;
    if (r.is_constant()) continue;
    while (e[i] > 0 && divides(r, N)) {
      N = exact_divide(N, r);
      e[i] -= 1;
    }
  }
  // The loop above strips every copy of a facet resultant the numerator
  // still contains, so the pair is coprime (each factor that survives in
  // the denominator no longer divides N) and the expensive gcd is skipped.
  RationalFunction out =
      RationalFunction::from_coprime(std::move(N), bound_poly(e));
  return reduced_.emplace(m, std::move(out)).first->second;
}

RationalFunction UnmixedResidueTable::residue_of(const Poly& q) {
  const RingPtr& R = f_.front().ring();
  if (q.is_zero()) return rf_zero(R);
  // Accumulate the numerators against a shared pole bound instead of adding
  // rational functions, so no gcd runs on the (large) intermediate sums.
  std::vector<LatticePoint> points;
  std::vector<Poly> coeffs;
  std::vector<Int> E(fr_.entries.size(), Int(0));
  for (const Term& t : q.terms()) {
    LatticePoint m;
    ExponentVector rest = t.exp;
    for (std::size_t i = 0; i < tv_.size(); ++i) {
      m.push_back(Int(t.exp[tv_[i]]));
      rest[tv_[i]] = 0;
    }
    coeffs.push_back(Poly::monomial(q.ring(), rest, t.coeff));
    std::vector<Int> mm = mu(m).minus;
    for (std::size_t i = 0; i < E.size(); ++i)
      if (mm[i] > E[i]) E[i] = mm[i];
    points.push_back(std::move(m));
  }
  Poly sum = Poly::zero(R);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Poly& nk = numerator_at(points[k]);
    if (nk.is_zero()) continue;
    std::vector<Int> diff = mu(points[k]).minus;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = E[i] - diff[i];
    sum = sum + coeffs[k] * bound_poly(diff) * nk;
  }
  if (sum.is_zero()) return rf_zero(R);
  for (std::size_t i = 0; i < E.size(); ++i) {
    const Poly& r = fr_.entries[i].resultant;
    if (r.is_constant()) continue;
    while (E[i] > 0 && divides(r, sum)) {
      sum = exact_divide(sum, r);
      E[i] -= 1;
    }
  }
  return RationalFunction::from_coprime(std::move(sum), bound_poly(E));
}

ResidueValue UnmixedResidueTable::residue_value(const LatticePoint& m) {
  RationalFunction v = residue(m);
  MuSplit ms = mu(m);
  auto [numerator, factors] = factor_reduced(v, fr_, ms.minus);
  return ResidueValue{v, numerator, factors, true,
                      "reduced denominator factored over the facet "
                      "resultants within the pole bounds"};
}

const Poly& UnmixedResidueTable::numerator_at(const LatticePoint& m) {
  auto it = memo_.find(m);
  if (it != memo_.end()) return it->second;
  if (in_progress_.count(m))
    fail(ErrorCode::Unsupported, "cyclic dependency between residues");
  if (++nodes_ > 100000)
    fail(ErrorCode::Unsupported, "residue raising budget exhausted");

  MuSplit ms = mu(m);
  bool beyond = false;
  for (const Int& e : ms.minus) beyond = beyond || e > 0;
  if (!beyond) {
    // t^m is supported inside the (shifted) Minkowski sum: the global
    // residue vanishes because numerator * 1 would have negative degree.
    return memo_.emplace(m, Poly::zero(f_.front().ring())).first->second;
  }
  std::vector<Int> b;
  for (const HalfSpace& h : P_.facets()) b.push_back(h.offset);
  Completion comp =
      completion_vector(P_, b, ms.minus, {Int(1), Int(12), std::nullopt});
  for (Int k0 = comp.k0; k0 <= comp.k0 + 5 && k0 <= 12; k0 += 1) {
    if (!layout_is_square(k0)) continue;
    Completion use = k0 == comp.k0
                         ? comp
                         : completion_vector(P_, b, ms.minus, {k0, k0, {}});
    return memo_.emplace(m, direct(m, use, ms.minus)).first->second;
  }
  if (tv_.size() == 2) return raise(m);
  fail(ErrorCode::Unsupported,
       "no square completed layout; level raising covers two torus "
       "variables only");
}

bool UnmixedResidueTable::layout_is_square(const Int& k0) {
  auto it = square_cache_.find(k0);
  if (it != square_cache_.end()) return it->second;
  const Int n(static_cast<long>(tv_.size()));
  auto interior_count = [&](const Int& t) {
    return scaled_lattice_points(P_, t, 1).size();
  };
  std::size_t rows = interior_count(k0 + n);
  std::size_t cols = interior_count(n) +
                     tv_.size() * interior_count(k0 + n - 1) + 1;
  bool square = rows == cols;
  square_cache_.emplace(k0, square);
  return square;
}

Poly UnmixedResidueTable::direct(const LatticePoint& m, const Completion& comp,
                                 const std::vector<Int>& minus) {
  const RingPtr& R = f_.front().ring();
  std::vector<Int> k{comp.k0};
  k.insert(k.end(), tv_.size(), Int(1));
  std::vector<Poly> fs{torus_monomial(R, tv_, comp.p)};
  for (const Poly& g : f_) fs.push_back(g);
  PhiMatrix M = build_phi(P_, k, fs, tv_);
  Poly H = M.cox.homogenize(
      torus_monomial(R, tv_, add(m, comp.p)),
      M.cox.beta_offsets(comp.k0 + Int(static_cast<long>(tv_.size())),
                         Int(-1)));
  RationalFunction v = toric_residue(M, H);
  if (v.is_zero()) return Poly::zero(R);
  // The residue times the pole bound is a polynomial, so the division by
  // the (reduced) denominator of the solve is exact.
  return exact_divide(v.num() * bound_poly(minus), v.den());
}

const Poly& UnmixedResidueTable::raise(const LatticePoint& m) {
  MuSplit ms = mu(m);
  std::size_t istar = 0;
  for (std::size_t i = 1; i < ms.minus.size(); ++i)
    if (ms.minus[i] > ms.minus[istar]) istar = i;
  const HalfSpace& facet = fr_.sum.facets()[istar];
  const FaceData& faces = fr_.entries[istar].faces;
  const std::vector<Int>& eta = facet.normal;
  const std::vector<Int> v{-eta[1], eta[0]};
  const Int vv = dot(v, v);

  std::vector<SupportSet> supports;
  for (const Poly& g : f_) supports.push_back(support_of(g, tv_));

  // Position of a face point along the level direction, in steps of v.
  std::vector<LatticePoint> base(2);
  std::vector<long> span(2);
  std::vector<Int> face_level(2);
  for (std::size_t j = 0; j < 2; ++j) {
    const SupportSet& fp = faces.face_points[j];
    if (fp.empty())
      fail(ErrorCode::Internal, "facet with an empty leading form");
    base[j] = fp.front();
    Int lo = dot(fp.front(), v), hi = lo;
    for (const LatticePoint& q : fp) {
      Int t = dot(q, v);
      if (t < lo) {
        lo = t;
        base[j] = q;
      }
      if (t > hi) hi = t;
    }
    Int diff = hi - lo;
    if (diff % vv != 0)
      fail(ErrorCode::Internal, "face span not aligned with the level lattice");
    span[j] = to_long(diff / vv);
    face_level[j] = dot(base[j], eta);
  }
  const bool both_points = span[0] == 0 && span[1] == 0;
  const long W = both_points ? 1 : span[0] + span[1];

  struct Equation {
    std::size_t j;
    long d;
  };
  auto equations_for = [&](long lo) {
    std::vector<Equation> eqs;
    for (std::size_t j = 0; j < 2; ++j) {
      if (both_points && j == 1) break;
      for (long d = lo; d + span[j] <= lo + W - 1; ++d)
        eqs.push_back({j, d});
    }
    return eqs;
  };
  auto children_of = [&](const Equation& eq) {
    std::vector<LatticePoint> kids;
    LatticePoint w = sub(add(m, scaled(v, eq.d)), base[eq.j]);
    for (const LatticePoint& p : supports[eq.j]) {
      if (dot(p, eta) == face_level[eq.j]) continue;  // on the face
      kids.push_back(add(w, p));
    }
    return kids;
  };

  // Window placement: prefer children that are memoized or shallow, and
  // never recurse into a value currently being solved.
  std::optional<long> best_lo;
  Int best_score(0);
  const Int blocked = pow(Int(10), 9);
  for (long lo = 0; lo >= -(W - 1); --lo) {
    Int score(0);
    for (const Equation& eq : equations_for(lo)) {
      for (const LatticePoint& kid : children_of(eq)) {
        if (memo_.count(kid)) continue;
        if (in_progress_.count(kid)) {
          score += blocked;
          continue;
        }
        MuSplit km = mu(kid);
        score += 1;
        for (const Int& e : km.minus) score += e;
      }
    }
    if (!best_lo || score < best_score) {
      best_lo = lo;
      best_score = score;
    }
  }
  if (best_score >= blocked)
    fail(ErrorCode::Unsupported,
         "cyclic window structure while raising residues");
  const long lo = *best_lo;

  std::vector<LatticePoint> positions;
  for (long kpos = lo; kpos <= lo + W - 1; ++kpos)
    positions.push_back(add(m, scaled(v, kpos)));

  struct Guard {
    std::set<LatticePoint>& s;
    std::vector<LatticePoint> pts;
    ~Guard() {
      for (const LatticePoint& p : pts) s.erase(p);
    }
  } guard{in_progress_, {}};
  for (const LatticePoint& p : positions)
    if (in_progress_.insert(p).second) guard.pts.push_back(p);

  const RingPtr& R = f_.front().ring();
  std::vector<Equation> eqs = equations_for(lo);
  if (eqs.size() != static_cast<std::size_t>(W))
    fail(ErrorCode::Internal, "window equation count mismatch");

  // Work against a common pole bound E_i = max of mu^- over the window
  // positions and every child, so all unknowns and right-hand sides become
  // polynomial and the Cramer divisions are exact.
  std::vector<Int> E(fr_.entries.size(), Int(0));
  auto lift_bound = [&](const LatticePoint& q) {
    MuSplit qm = mu(q);
    for (std::size_t i = 0; i < E.size(); ++i)
      if (qm.minus[i] > E[i]) E[i] = qm.minus[i];
  };
  for (const LatticePoint& p : positions) lift_bound(p);
  for (const Equation& eq : eqs)
    for (const LatticePoint& kid : children_of(eq)) lift_bound(kid);
  auto scale_to_bound = [&](const std::vector<Int>& minus) {
    std::vector<Int> diff(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) diff[i] = E[i] - minus[i];
    return bound_poly(diff);
  };

  PolyMatrix A(R, static_cast<std::size_t>(W), static_cast<std::size_t>(W));
  std::vector<Poly> rhs;
  for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
    const Equation& eq = eqs[ei];
    for (long s = 0; s <= span[eq.j]; ++s) {
      LatticePoint q = add(base[eq.j], scaled(v, s));
      A.at(ei, static_cast<std::size_t>(eq.d + s - lo)) =
          coefficient_at(f_[eq.j], tv_, q);
    }
    Poly r = Poly::zero(R);
    LatticePoint w = sub(add(m, scaled(v, eq.d)), base[eq.j]);
    for (const LatticePoint& p : supports[eq.j]) {
      if (dot(p, eta) == face_level[eq.j]) continue;
      Poly u = coefficient_at(f_[eq.j], tv_, p);
      if (u.is_zero()) continue;
      LatticePoint kid = add(w, p);
      const Poly& nkid = numerator_at(kid);
      if (nkid.is_zero()) continue;
      r = r - u * scale_to_bound(mu(kid).minus) * nkid;
    }
    rhs.push_back(std::move(r));
  }

  Poly detA = fraction_free_det(A);
  if (detA.is_zero())
    fail(ErrorCode::DegenerateLeadingForm,
         "leading forms along the facet give a singular window system");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Poly dk = replaced_column_det(A, i, rhs);
    Poly nk = dk.is_zero()
                  ? dk
                  : exact_divide(exact_divide(dk, detA),
                                 scale_to_bound(mu(positions[i]).minus));
    auto prev = memo_.find(positions[i]);
    if (prev != memo_.end()) {
      if (!(prev->second == nk))
        fail(ErrorCode::Internal, "window solve contradicts a memoized value");
    } else {
      memo_.emplace(positions[i], std::move(nk));
    }
  }
  return memo_.at(m);
}

ResidueValue global_residue_unmixed(const std::vector<Poly>& f,
                                    const std::vector<std::size_t>& torus_vars,
                                    const LatticePoint& m) {
  UnmixedResidueTable table(f, torus_vars);
  return table.residue_value(m);
}

// ---------------------------------------------------------------------------
// Mixed residues

namespace {

struct MixedContext {
  std::vector<std::size_t> tv;
  std::vector<SupportSet> supports;
  LatticePolytope delta;
  std::vector<Int> a;
  LatticePoint m;
  Completion comp;
  std::vector<std::vector<Int>> qoffsets;  ///< per j: offsets of sum_{k != j}
  std::vector<SupportSet> qsupports;       ///< per j: lattice points of it
};

BigRational mixed_single_draw(const MixedContext& ctx,
                              const std::vector<Poly>& fnum, Rng& rng) {
  const RingPtr& R = fnum.front().ring();
  const std::size_t n = ctx.tv.size();
  std::vector<Poly> q;
  std::vector<Poly> g;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (const LatticePoint& pt : ctx.qsupports[j]) {
      ExponentVector e(R->size(), 0);
      for (std::size_t i = 0; i < n; ++i) e[ctx.tv[i]] = to_long(pt[i]);
      terms.push_back({e, BigRational(rng.positive(65536))});
    }
    q.push_back(Poly::from_terms(R, std::move(terms)));
    g.push_back(fnum[j] * q.back());
    if (!(convex_hull(support_of(g.back(), ctx.tv)).vertices() ==
          ctx.delta.vertices()))
      fail(ErrorCode::GenericityFailure,
           "multiplied system does not fill the Minkowski sum");
  }
  std::vector<Int> k{ctx.comp.k0};
  k.insert(k.end(), n, Int(1));
  std::vector<Poly> fs{torus_monomial(R, ctx.tv, ctx.comp.p)};
  for (const Poly& gj : g) fs.push_back(gj);
  PhiMatrix M = build_phi(ctx.delta, k, fs, ctx.tv);
  Poly H = M.cox.homogenize(
      torus_monomial(R, ctx.tv, add(ctx.m, ctx.comp.p)),
      M.cox.beta_offsets(ctx.comp.k0 + 1, Int(-1)));
  for (std::size_t j = 0; j < n; ++j)
    H = H * M.cox.homogenize(q[j], ctx.qoffsets[j]);
  RationalFunction v = toric_residue(M, H);
  return v.num().constant_value() / v.den().constant_value();
}

BigRational mixed_numeric_value(const MixedContext& ctx,
                                const std::vector<Poly>& fnum, Rng& rng,
                                int draws) {
  auto one_draw = [&]() {
    for (int attempt = 0;; ++attempt) {
      Rng child = rng.fork();
      try {
        return mixed_single_draw(ctx, fnum, child);
      } catch (const Error& e) {
        if (attempt >= 2 || (e.code() != ErrorCode::GenericityFailure &&
                             e.code() != ErrorCode::ResultantVanishes))
          throw;
      }
    }
  };
  BigRational first = one_draw();
  for (int d = 1; d < draws; ++d)
    if (one_draw() != first)
      fail(ErrorCode::MismatchBetweenDraws,
           "independent generic-multiplier draws disagree");
  return first;
}

long group_degree(const Poly& B, const std::vector<std::size_t>& vars) {
  long best = 0;
  for (const Term& t : B.terms()) {
    long d = 0;
    for (std::size_t v : vars) d += t.exp[v];
    best = std::max(best, d);
  }
  return best;
}

void homogeneous_exponents(long degree, std::size_t parts,
                           std::vector<long>& cur,
                           std::vector<std::vector<long>>& out) {
  if (parts == 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long e = degree; e >= 0; --e) {
    cur.push_back(e);
    homogeneous_exponents(degree - e, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ResidueValue global_residue_mixed(const std::vector<Poly>& f,
                                  const std::vector<std::size_t>& torus_vars,
                                  const LatticePoint& m,
                                  const MixedResidueOptions& opts) {
  const std::size_t n = torus_vars.size();
  if (f.empty() || f.size() != n)
    fail(ErrorCode::ArityMismatch,
         "need as many polynomials as torus variables");
  if (m.size() != n)
    fail(ErrorCode::DimensionMismatch, "lattice point of wrong dimension");
  const RingPtr& R = f.front().ring();

  std::vector<SupportSet> supports;
  for (const Poly& g : f) supports.push_back(support_of(g, torus_vars));

  // Lower-dimensional supports can never share a full-dimensional Newton
  // polytope, so only build hulls when every support is full-dimensional.
  bool common = true;
  for (const SupportSet& s : supports)
    common = common && affine_rank(s) == n;
  if (common) {
    LatticePolytope first = convex_hull(supports.front());
    for (const SupportSet& s : supports)
      common = common && convex_hull(s).vertices() == first.vertices();
  }
  if (n == 1 || (common && !opts.force_generic_multiplier))
    return global_residue_unmixed(f, torus_vars, m);

  FacetResultantSet fr = facet_resultants(f, torus_vars);
  for (const FacetResultant& e : fr.entries)
    if (e.resultant.is_zero() ||
        (e.resultant.is_constant() && e.resultant.constant_value() == 0))
      fail(ErrorCode::FacetResultantVanishes,
           "a facet resultant of the system vanishes");

  MuSplit mus = mu_split(m, fr.sum.facets(), fr.sum_offsets);
  bool beyond = false;
  for (const Int& e : mus.minus) beyond = beyond || e > 0;
  if (!beyond)
    return ResidueValue{rf_zero(R), Poly::zero(R), {}, true,
                        "monomial supported inside the Minkowski sum: the "
                        "residue vanishes"};

  MixedContext ctx;
  ctx.tv = torus_vars;
  ctx.supports = supports;
  ctx.delta = fr.sum;
  ctx.a = fr.sum_offsets;
  ctx.m = m;
  ctx.comp = completion_vector(ctx.delta, ctx.a, mus.minus,
                               {Int(1), Int(16), std::nullopt});
  MinkowskiSum ms = minkowski_sum(supports);
  if (!(ms.sum.facets() == ctx.delta.facets()))
    fail(ErrorCode::Internal, "Minkowski sum facet order mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<SupportSet> others;
    for (std::size_t l = 0; l < n; ++l)
      if (l != j) others.push_back(supports[l]);
    std::vector<Int> off;
    for (std::size_t i = 0; i < ctx.a.size(); ++i)
      off.push_back(ctx.a[i] - ms.offsets[i][j]);
    ctx.qoffsets.push_back(off);
    // Lattice points of the sum of the other Newton polytopes; its facet
    // offsets relative to delta's normals are exactly `off`.
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < ctx.a.size(); ++i)
      hs.push_back({ctx.delta.facets()[i].normal, off[i]});
    ctx.qsupports.push_back(hpoly_lattice_points(hs, n));
  }

  bool numeric = true;
  for (std::size_t j = 0; j < n && numeric; ++j)
    for (const LatticePoint& pt : supports[j])
      numeric = numeric && coefficient_at(f[j], torus_vars, pt).is_constant();

  Rng rng(opts.seed ^ 0x6d69786564726573ULL);
  if (numeric) {
    BigRational val = mixed_numeric_value(ctx, f, rng, opts.draws);
    RationalFunction v(Poly::constant(R, val));
    return ResidueValue{v, v.num(), {}, true,
                        "independent generic-multiplier draws agreed "
                        "exactly"};
  }

  // Symbolic reconstruction: numerator * bound is bihomogeneous of exact
  // per-group degree deg_j(bound) - 1; interpolate it from numeric solves
  // on a tensor grid and certify by re-evaluation at fresh points.
  if (n != 2)
    fail(ErrorCode::Unsupported,
         "symbolic mixed residues are reconstructed for two torus "
         "variables only");
  std::vector<std::vector<std::size_t>> groups(n);
  std::vector<std::size_t> owner(R->size(), SIZE_MAX);
  for (std::size_t j = 0; j < n; ++j) {
    for (const LatticePoint& pt : supports[j]) {
      Poly c = coefficient_at(f[j], torus_vars, pt);
      bool generic = c.is_monomial() && c.total_degree() == 1;
      std::size_t var = SIZE_MAX;
      if (generic) {
        const ExponentVector& e = c.terms().front().exp;
        for (std::size_t vidx = 0; vidx < e.size(); ++vidx)
          if (e[vidx] != 0) var = vidx;
        generic = var != SIZE_MAX && owner[var] == SIZE_MAX;
      }
      if (!generic)
        fail(ErrorCode::Unsupported,
             "symbolic mixed residues require one independent parameter "
             "per coefficient");
      owner[var] = j;
      groups[j].push_back(var);
    }
  }

  Poly bound = denominator_bound(fr, mus.minus).expand(R);
  std::vector<long> deg(n);
  std::vector<std::vector<std::vector<long>>> basis(n);
  std::size_t total_terms = 1;
  for (std::size_t j = 0; j < n; ++j) {
    deg[j] = group_degree(bound, groups[j]) - 1;
    if (deg[j] < 0) {
      // The bound does not involve this coefficient group, so the
      // numerator would need negative degree there: the residue is zero.
      return ResidueValue{rf_zero(R), Poly::zero(R), {}, true,
                          "pole bound independent of one coefficient group: "
                          "the residue vanishes"};
    }
    std::vector<long> cur;
    homogeneous_exponents(deg[j], groups[j].size(), cur, basis[j]);
    total_terms *= basis[j].size();
  }
  if (total_terms > opts.max_interpolation_terms)
    fail(ErrorCode::Unsupported,
         "symbolic mixed residue exceeds the interpolation budget");

  auto draw_nodes = [&](std::size_t j) {
    std::vector<std::vector<BigRational>> nodes;
    for (std::size_t r = 0; r < basis[j].size(); ++r) {
      std::vector<BigRational> vals;
      for (std::size_t i = 0; i < groups[j].size(); ++i)
        vals.emplace_back(rng.positive(65536));
      nodes.push_back(vals);
    }
    return nodes;
  };
  auto vandermonde = [&](std::size_t j,
                         const std::vector<std::vector<BigRational>>& nodes) {
    const std::size_t N = basis[j].size();
    QMatrix V(N, N);
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        BigRational prod(1);
        for (std::size_t i = 0; i < groups[j].size(); ++i)
          prod *= pow(nodes[r][i], basis[j][c][i]);
        V.at(r, c) = prod;
      }
    return V;
  };

  for (int grid_attempt = 0; grid_attempt < 2; ++grid_attempt) {
    try {
      std::vector<std::vector<std::vector<BigRational>>> nodes;
      std::vector<QMatrix> V;
      for (std::size_t j = 0; j < n; ++j) {
        nodes.push_back(draw_nodes(j));
        V.push_back(vandermonde(j, nodes.back()));
        if (qrank(V.back()) != basis[j].size())
          fail(ErrorCode::GenericityFailure, "singular interpolation grid");
      }
      const std::size_t N1 = basis[0].size(), N2 = basis[1].size();

      auto value_at = [&](const std::vector<BigRational>& g1,
                          const std::vector<BigRational>& g2) {
        std::map<std::size_t, BigRational> subs;
        for (std::size_t i = 0; i < groups[0].size(); ++i)
          subs[groups[0][i]] = g1[i];
        for (std::size_t i = 0; i < groups[1].size(); ++i)
          subs[groups[1][i]] = g2[i];
        std::vector<Poly> fnum;
        for (std::size_t j = 0; j < n; ++j)
          fnum.push_back(f[j].substitute(subs));
        std::vector<BigRational> point(R->size(), BigRational(1));
        for (std::size_t i = 0; i < groups[0].size(); ++i)
          point[groups[0][i]] = g1[i];
        for (std::size_t i = 0; i < groups[1].size(); ++i)
          point[groups[1][i]] = g2[i];
        BigRational bval = bound.evaluate(point);
        if (bval == 0)
          fail(ErrorCode::GenericityFailure,
               "pole bound vanishes at an interpolation node");
        return std::pair<BigRational, BigRational>(
            mixed_numeric_value(ctx, fnum, rng, opts.draws), bval);
      };

      QMatrix Y(N1, N2);
      for (std::size_t r = 0; r < N1; ++r)
        for (std::size_t s = 0; s < N2; ++s) {
          auto [val, bval] = value_at(nodes[0][r], nodes[1][s]);
          Y.at(r, s) = val * bval;
        }

      // Coefficients C with V1 * C * V2^T = Y.
      QMatrix Z(N1, N2);
      for (std::size_t s = 0; s < N2; ++s) {
        std::vector<BigRational> col(N1);
        for (std::size_t r = 0; r < N1; ++r) col[r] = Y.at(r, s);
        std::vector<BigRational> z = qsolve(V[0], col);
        for (std::size_t r = 0; r < N1; ++r) Z.at(r, s) = z[r];
      }
      std::vector<Term> terms;
      for (std::size_t r = 0; r < N1; ++r) {
        std::vector<BigRational> row(N2);
        for (std::size_t s = 0; s < N2; ++s) row[s] = Z.at(r, s);
        std::vector<BigRational> c = qsolve(V[1], row);
        for (std::size_t s = 0; s < N2; ++s) {
          if (c[s] == 0) continue;
          ExponentVector e(R->size(), 0);
          for (std::size_t i = 0; i < groups[0].size(); ++i)
            e[groups[0][i]] = basis[0][r][i];
          for (std::size_t i = 0; i < groups[1].size(); ++i)
            e[groups[1][i]] = basis[1][s][i];
          terms.push_back({e, c[s]});
        }
      }
      Poly W = Poly::from_terms(R, std::move(terms));
      RationalFunction value(W, bound);

      // Independent certification at fresh random points.
      for (int check = 0; check < 2; ++check) {
        for (int tries = 0;; ++tries) {
          std::vector<BigRational> g1, g2;
          for (std::size_t i = 0; i < groups[0].size(); ++i)
            g1.emplace_back(rng.positive(65536));
          for (std::size_t i = 0; i < groups[1].size(); ++i)
            g2.emplace_back(rng.positive(65536));
          std::vector<BigRational> point(R->size(), BigRational(1));
          for (std::size_t i = 0; i < groups[0].size(); ++i)
            point[groups[0][i]] = g1[i];
          for (std::size_t i = 0; i < groups[1].size(); ++i)
            point[groups[1][i]] = g2[i];
          if (value.den().evaluate(point) == 0) {
            if (tries >= 3)
              fail(ErrorCode::GenericityFailure,
                   "could not find a regular certification point");
            continue;
          }
          auto [val, bval] = value_at(g1, g2);
          (void)bval;
          if (value.num().evaluate(point) / value.den().evaluate(point) !=
              val)
            fail(ErrorCode::GenericityFailure,
                 "interpolated residue failed re-evaluation");
          break;
        }
      }

      auto [numerator, factors] = factor_reduced(value, fr, mus.minus);
      return ResidueValue{value, numerator, factors, true,
                          "interpolated from exact numeric solves; "
                          "re-evaluated at independent points"};
    } catch (const Error& e) {
      if (grid_attempt >= 1 || e.code() != ErrorCode::GenericityFailure)
        throw;
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

}  // namespace tres
