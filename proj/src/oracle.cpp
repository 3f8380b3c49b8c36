#include "tres/oracle.hpp"

#include <cstdint>
#include <vector>

#include "tres/cox.hpp"
#include "tres/error.hpp"
#include "tres/resultant.hpp"

namespace tres {

namespace {

/// Residue class of tau^e modulo ftilde = sum_k c[k] tau^k (c.front() and
/// c.back() nonzero), as a coefficient vector of length deg(ftilde).  The
/// exponent may be negative because tau is invertible in the quotient.
std::vector<RationalFunction> power_mod(const std::vector<RationalFunction>& c,
                                        std::int64_t e) {
  const std::size_t D = c.size() - 1;
  const RingPtr ring = c.front().num().ring();
  std::vector<RationalFunction> g(D, RationalFunction(Poly::zero(ring)));
  g[0] = RationalFunction(Poly::constant(ring, BigRational(1)));
  for (std::int64_t step = 0; step < e; ++step) {
    // tau * g: the overflow term g[D-1] tau^D reduces through
    // tau^D = -(1/c_D) (c_0 + ... + c_{D-1} tau^{D-1}).
    std::vector<RationalFunction> next(D, RationalFunction(Poly::zero(ring)));
    for (std::size_t k = 0; k < D; ++k) {
      RationalFunction v = g[D - 1] * c[k] / c[D];
      next[k] = (k >= 1 ? g[k - 1] - v : -v);
    }
    g = std::move(next);
  }
  for (std::int64_t step = 0; step > e; --step) {
    // tau^{-1} * g: the underflow term g[0] tau^{-1} reduces through
    // tau^{-1} = -(1/c_0) (c_1 + c_2 tau + ... + c_D tau^{D-1}).
    std::vector<RationalFunction> next(D, RationalFunction(Poly::zero(ring)));
    for (std::size_t k = 0; k < D; ++k) {
      RationalFunction v = g[0] * c[k + 1] / c[0];
      next[k] = (k + 1 < D ? g[k + 1] - v : -v);
    }
    g = std::move(next);
  }
  return g;
}

BigRational coefficient_value(const Poly& f, std::size_t var,
                              std::int64_t exp) {
  Poly c = coefficient_at(f, {var}, {Int(exp)});
  if (!c.is_constant())
    fail(ErrorCode::Unsupported,
         "torus norm oracle requires rational coefficients");
  return c.constant_value();
}

}  // namespace

RationalFunction univariate_residue_oracle(const Poly& f, std::size_t var,
                                           const Int& m) {
  if (f.is_zero())
    fail(ErrorCode::ZeroPolynomial, "residue of the zero polynomial");
  const RingPtr& R = f.ring();
  const std::int64_t lo = f.min_exponent_in(var);
  const std::int64_t hi = f.degree_in(var);
  const std::size_t D = static_cast<std::size_t>(hi - lo);
  if (D == 0) return RationalFunction(Poly::zero(R));  // no torus roots

  std::vector<RationalFunction> c;
  c.reserve(D + 1);
  for (std::size_t k = 0; k <= D; ++k)
    c.emplace_back(coefficient_at(f, {var}, {Int(lo + std::int64_t(k))}));
  // lo and hi are attained, so the extreme coefficients are nonzero.

  // sum_xi xi^m / (xi f'(xi)) = sum_xi xi^{m-1-lo} / ftilde'(xi) where
  // ftilde = t^{-lo} f; the Lagrange trace of a class g of degree < D is
  // its tau^{D-1} coefficient over the leading coefficient.
  const Int e = m - 1 - Int(lo);
  if (!e.fits_slong_p())
    fail(ErrorCode::Unsupported, "monomial exponent out of range");
  std::vector<RationalFunction> g = power_mod(c, to_long(e));
  return g[D - 1] / c[D];
}

BigRational torus_norm_oracle(const Poly& f1, const Poly& f2,
                              const std::vector<std::size_t>& torus_vars,
                              const LatticePoint& m) {
  if (torus_vars.size() != 2 || m.size() != 2)
    fail(ErrorCode::DimensionMismatch,
         "torus norm oracle handles two torus variables");
  for (const Poly* f : {&f1, &f2})
    for (const LatticePoint& pt : support_of(*f, torus_vars))
      if (!coefficient_at(*f, torus_vars, pt).is_constant())
        fail(ErrorCode::Unsupported,
             "torus norm oracle requires rational coefficients");

  const Int mv = mixed_volume(
      {support_of(f1, torus_vars), support_of(f2, torus_vars)});
  if (mv == 0) return BigRational(1);  // empty root set

  BigRational out(1);
  for (std::size_t coord = 0; coord < 2; ++coord) {
    const std::size_t keep = torus_vars[coord];
    const std::size_t elim = torus_vars[1 - coord];
    Poly r = univariate_sylvester(f1, f2, elim);
    if (r.is_zero())
      fail(ErrorCode::GenericityFailure, "vanishing eliminant");
    const std::int64_t lo = r.min_exponent_in(keep);
    const std::int64_t hi = r.degree_in(keep);
    if (Int(hi - lo) != mv)
      fail(ErrorCode::GenericityFailure,
           "eliminant degree differs from the mixed volume");
    // Product of the coordinate over all roots: (-1)^deg * trailing / leading
    // of the eliminant, then raised to the requested exponent.
    BigRational prod = coefficient_value(r, keep, lo) /
                       coefficient_value(r, keep, hi);
    if (mv % 2 != 0) prod = -prod;
    if (!m[coord].fits_slong_p())
      fail(ErrorCode::Unsupported, "monomial exponent out of range");
    out *= pow(prod, to_long(m[coord]));
  }
  return out;
}

}  // namespace tres
