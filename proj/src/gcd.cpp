#include "tres/gcd.hpp"

#include <algorithm>
#include <vector>

#include "tres/error.hpp"
#include "tres/rng.hpp"

namespace tres {

namespace {

// Multiplies f by a monomial in torus variables so that each torus variable
// gets min exponent 0.  Torus monomials are units, so this changes f only by
// a unit.
Poly shift_torus_to_origin(const Poly& f) {
  if (f.is_zero()) return f;
  const Ring& R = *f.ring();
  ExponentVector delta(R.size(), 0);
  bool any = false;
  for (std::size_t v = 0; v < R.size(); ++v) {
    if (R.kind(v) != VarKind::Torus) continue;
    std::int64_t m = f.min_exponent_in(v);
    if (m != 0) {
      delta[v] = -m;
      any = true;
    }
  }
  return any ? f.shift(delta) : f;
}

// Coefficient of v^e in f, as a polynomial with the v-exponent zeroed.
Poly coeff_in(const Poly& f, std::size_t v, std::int64_t e) {
  std::vector<Term> out;
  for (const Term& t : f.terms())
    if (t.exp[v] == e) {
      Term s = t;
      s.exp[v] = 0;
      out.push_back(std::move(s));
    }
  return Poly::from_terms(f.ring(), std::move(out));
}

// gcd over all v-coefficients of f (a polynomial not involving v).
Poly content_in(const Poly& f, std::size_t v) {
  Poly g = Poly::zero(f.ring());
  for (const auto& [e, c] : f.as_univariate(v)) {
    g = multipoly_gcd(g, c);
    if (g.is_constant() && g.constant_value() == 1) break;
  }
  return g;
}

// Pseudo-remainder of A by B with respect to v (deg_v B >= 1, B != 0).
// Equals lc_v(B)^k * A mod B for some k >= 0, which is all the primitive
// PRS needs.
Poly pseudo_rem(const Poly& A, const Poly& B, std::size_t v) {
  std::int64_t db = B.degree_in(v);
  Poly lcB = coeff_in(B, v, db);
  Poly R = A;
  while (!R.is_zero() && R.degree_in(v) >= db) {
    std::int64_t dr = R.degree_in(v);
    Poly lcR = coeff_in(R, v, dr);
    ExponentVector sh(A.ring()->size(), 0);
    sh[v] = dr - db;
    R = lcB * R - lcR.shift(sh) * B;
  }
  return R;
}

// Degree of gcd of two dense univariate rational polynomials; -1 when both
// are zero.
int uni_gcd_degree(std::vector<BigRational> a, std::vector<BigRational> b) {
  auto trim = [](std::vector<BigRational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b, with b made monic for coefficient control
    BigRational lead = b.back();
    for (auto& c : b) c /= lead;
    while (a.size() >= b.size()) {
      BigRational q = a.back();
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
      trim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
    trim(b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Evaluates every variable except v at the given assignment and returns the
// dense coefficient vector in v.  Assumes min exponent in v is >= 0.
std::vector<BigRational> eval_to_univariate(
    const Poly& f, std::size_t v,
    const std::map<std::size_t, BigRational>& values) {
  Poly g = f.substitute(values);
  std::vector<BigRational> dense(
      static_cast<std::size_t>(std::max<std::int64_t>(g.degree_in(v), 0)) + 1,
      BigRational(0));
  for (const Term& t : g.terms()) {
    assert(t.exp[v] >= 0);
    dense.at(static_cast<std::size_t>(t.exp[v])) += t.coeff;
  }
  return dense;
}

// Certifies deg_v(gcd(A, B)) = 0 by specializing all other variables.  If
// the specialized leading coefficient of A survives, every divisor of A
// keeps its v-degree under the specialization, so a coprime image is a
// proof.  No failure here is ever treated as evidence; the caller just runs
// the full PRS.
bool precheck_eliminates(const Poly& A, const Poly& B, std::size_t v) {
  const Ring& R = *A.ring();
  Rng rng(0x5eedU + 31 * static_cast<std::uint64_t>(v));
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::map<std::size_t, BigRational> values;
    for (std::size_t w = 0; w < R.size(); ++w) {
      if (w == v) continue;
      if (!A.depends_on(w) && !B.depends_on(w)) continue;
      values[w] = attempt == 0 ? BigRational(static_cast<long>(w) + 2)
                               : BigRational(static_cast<long>(rng.uniform(2, 97)));
    }
    Poly lcA = coeff_in(A, v, A.degree_in(v));
    if (lcA.substitute(values).constant_value() == 0) continue;
    std::vector<BigRational> ua = eval_to_univariate(A, v, values);
    std::vector<BigRational> ub = eval_to_univariate(B, v, values);
    if (uni_gcd_degree(std::move(ua), std::move(ub)) == 0) return true;
  }
  return false;
}

// gcd of normalized (integer-primitive, positive-lead, min exponent 0)
// nonzero polynomials, up to a rational unit.
Poly primitive_gcd(const Poly& A, const Poly& B) {
  const RingPtr& ring = A.ring();
  int last_var = -1;
  for (std::size_t v = 0; v < ring->size(); ++v)
    if (A.depends_on(v) || B.depends_on(v)) last_var = static_cast<int>(v);
  if (last_var < 0) return Poly::constant(ring, BigRational(1));
  std::size_t v = static_cast<std::size_t>(last_var);

  if (!A.depends_on(v)) return multipoly_gcd(A, content_in(B, v));
  if (!B.depends_on(v)) return multipoly_gcd(content_in(A, v), B);
  if (precheck_eliminates(A, B, v))
    return multipoly_gcd(content_in(A, v), content_in(B, v));

  Poly contA = content_in(A, v);
  Poly contB = content_in(B, v);
  Poly ppA = exact_divide(A, contA);
  Poly ppB = exact_divide(B, contB);
  if (ppA.degree_in(v) < ppB.degree_in(v)) std::swap(ppA, ppB);
  while (!ppB.is_zero()) {
    Poly R = pseudo_rem(ppA, ppB, v);
    ppA = std::move(ppB);
    ppB = R.is_zero() ? R : exact_divide(R, content_in(R, v));
  }
  return (multipoly_gcd(contA, contB) * ppA).primitive_part();
}

BigRational rational_gcd(const BigRational& a, const BigRational& b) {
  return make_rational(gcd(numerator(a), numerator(b)),
                       lcm(denominator(a), denominator(b)));
}

}  // namespace

SparsePolynomial normalize(const SparsePolynomial& f, bool shift_torus) {
  if (f.is_zero()) return f;
  Poly g = shift_torus ? shift_torus_to_origin(f) : f;
  return g.primitive_part();
}

SparsePolynomial exact_divide(const SparsePolynomial& a,
                              const SparsePolynomial& b) {
  if (b.is_zero()) fail(ErrorCode::DivideByZero, "exact_divide by zero");
  assert(Ring::same(*a.ring(), *b.ring()));
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return a;

  // Normalize both operands to min exponent 0 per variable.  The quotient of
  // the shifted parts is an honest polynomial whenever b | a, and the net
  // monomial shift is re-applied (and validated) afterwards.
  const std::size_t n = ring->size();
  ExponentVector sa(n, 0), sb(n, 0), delta(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    sa[v] = -a.min_exponent_in(v);
    sb[v] = -b.min_exponent_in(v);
    delta[v] = sb[v] - sa[v];
  }
  Poly A = a.shift(sa);
  Poly B = b.shift(sb);

  std::vector<Term> qterms;
  Poly R = A;
  while (!R.is_zero()) {
    const Term& lr = R.leading_term();
    const Term& lb = B.leading_term();
    ExponentVector d = exp_sub(lr.exp, lb.exp);
    for (auto e : d)
      if (e < 0)
        fail(ErrorCode::NotDivisible,
             "leading term not divisible during exact division");
    BigRational c = lr.coeff / lb.coeff;
    qterms.push_back({d, c});
    R = R - Poly::monomial(ring, d, c) * B;
  }
  Poly Q = Poly::from_terms(ring, std::move(qterms));
  for (std::size_t v = 0; v < n; ++v) {
    if (delta[v] < 0 && ring->kind(v) != VarKind::Torus &&
        Q.min_exponent_in(v) < -delta[v])
      fail(ErrorCode::NotDivisible,
           "quotient needs negative exponent on '" + ring->name(v) + "'");
  }
  return Q.shift(delta);
}

bool divides(const SparsePolynomial& b, const SparsePolynomial& a) {
  if (b.is_zero()) return a.is_zero();
  try {
    exact_divide(a, b);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivisible) return false;
    throw;
  }
}

SparsePolynomial multipoly_gcd(const SparsePolynomial& a,
                               const SparsePolynomial& b) {
  if (a.is_zero() && b.is_zero()) return a;
  assert(Ring::same(*a.ring(), *b.ring()));
  auto abs_lead = [](const Poly& f) {
    return f.leading_term().coeff < 0 ? -f : f;
  };
  if (a.is_zero()) return abs_lead(shift_torus_to_origin(b));
  if (b.is_zero()) return abs_lead(shift_torus_to_origin(a));

  Poly A = shift_torus_to_origin(a);
  Poly B = shift_torus_to_origin(b);
  BigRational c = rational_gcd(A.content() < 0 ? -A.content() : A.content(),
                               B.content() < 0 ? -B.content() : B.content());
  Poly g = primitive_gcd(A.primitive_part(), B.primitive_part());
  return g * c;
}

}  // namespace tres
