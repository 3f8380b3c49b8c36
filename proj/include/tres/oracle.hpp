#ifndef TRES_ORACLE_HPP
#define TRES_ORACLE_HPP

#include "tres/polynomial.hpp"
#include "tres/polytope.hpp"
#include "tres/ratfunc.hpp"

namespace tres {

/// Independent cross-checks for the residue and resultant engines, built
/// from univariate elimination only.  They share no code with the
/// determinantal constructions they certify.

/// Global residue of t^m for a single Laurent polynomial f in the torus
/// variable `var` (coefficients may involve the other ring variables):
/// the sum of xi^m / (xi f'(xi)) over the roots xi of f in the torus,
/// computed as a trace in the quotient ring ℚ(coeffs)[t]/(f).  Assumes the
/// roots are simple, which holds identically when the extreme coefficients
/// are independent parameters.
RationalFunction univariate_residue_oracle(const Poly& f, std::size_t var,
                                           const Int& m);

/// Product of xi^m over the common torus roots of a bivariate system with
/// rational coefficients, computed from the two Sylvester eliminants (one
/// per coordinate): each coordinate product is, up to the sign (-1)^deg,
/// the ratio of the trailing and leading coefficients of the corresponding
/// eliminant.  GenericityFailure when an eliminant degree differs from the
/// mixed volume (extraneous or lost roots), so callers can redraw.
BigRational torus_norm_oracle(const Poly& f1, const Poly& f2,
                              const std::vector<std::size_t>& torus_vars,
                              const LatticePoint& m);

}  // namespace tres

#endif  // TRES_ORACLE_HPP
