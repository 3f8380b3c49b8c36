#ifndef TRES_GCD_HPP
#define TRES_GCD_HPP

#include "tres/polynomial.hpp"

namespace tres {

/// Primitive part with positive leading coefficient: f = unit * normalize(f)
/// with unit a rational (times a monomial in torus variables when
/// `shift_torus` is set, so Laurent inputs normalize to honest polynomials
/// with min exponent 0 in each torus variable).
SparsePolynomial normalize(const SparsePolynomial& f, bool shift_torus = true);

/// Exact quotient a / b; throws NotDivisible when b does not divide a in the
/// Laurent ring (torus variables are invertible, all others are not).
SparsePolynomial exact_divide(const SparsePolynomial& a,
                              const SparsePolynomial& b);

bool divides(const SparsePolynomial& b, const SparsePolynomial& a);

/// GCD with primitive pseudo-remainder sequences.  Scalar contents
/// contribute their integer gcd (gcd(6x, 4x^2) = 2x); the result has
/// positive leading coefficient and min exponent 0 in torus variables.
/// A non-probabilistic evaluation pre-check certifies variable elimination
/// before any PRS runs.
SparsePolynomial multipoly_gcd(const SparsePolynomial& a,
                               const SparsePolynomial& b);

}  // namespace tres

#endif  // TRES_GCD_HPP
