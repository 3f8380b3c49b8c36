#ifndef TRES_COX_HPP
#define TRES_COX_HPP

#include <optional>
#include <string>
#include <vector>

#include "tres/polynomial.hpp"
#include "tres/polytope.hpp"
#include "tres/smith.hpp"

namespace tres {

/// Element of the divisor class group Z^s / { (<m, eta_1>, ..., <m, eta_s>) }
/// held by its canonical coset representative.
struct DegreeClass {
  std::vector<Int> rep;

  bool operator==(const DegreeClass& o) const { return rep == o.rep; }
  bool operator!=(const DegreeClass& o) const { return !(*this == o); }
  std::string to_string() const;
};

/// Homogeneous coordinate ring of the toric variety of a full-dimensional
/// lattice polytope: one variable per facet, appended after the caller's
/// torus/parameter variables.  Gradings live in the class group; a Laurent
/// monomial t^m homogenizes to prod_i x_i^{<m, eta_i> + c_i} for a chosen
/// offset vector c.
class CoxRing {
 public:
  /// `base` must contain the torus variables (listed by index, in lattice
  /// coordinate order); facet variables are appended with fresh names.
  static CoxRing create(const RingPtr& base, std::vector<std::size_t> torus_vars,
                        const LatticePolytope& P,
                        const std::string& prefix = "x");

  const RingPtr& total_ring() const { return total_; }
  const RingPtr& base_ring() const { return base_; }
  const LatticePolytope& polytope() const { return P_; }
  std::size_t dim() const { return torus_vars_.size(); }
  std::size_t facet_count() const { return P_.facets().size(); }
  const std::vector<std::size_t>& torus_vars() const { return torus_vars_; }
  const std::vector<std::size_t>& cox_vars() const { return cox_vars_; }
  /// Facet offsets b_i of P, in facet order.
  const std::vector<Int>& b() const { return b_; }
  /// s x n matrix whose rows are the primitive inner facet normals.
  const IntMatrix& normals() const { return normals_; }

  DegreeClass class_of(const std::vector<Int>& a) const;
  /// Class of k*beta + l*beta_0, where beta = [sum b_i D_i] is the class of
  /// P and beta_0 = [sum D_i] the anticanonical-style shift.
  DegreeClass beta_combination(const Int& k, const Int& l) const;
  /// The offset vector k*b + l*(1, ..., 1).
  std::vector<Int> beta_offsets(const Int& k, const Int& l) const;

  /// Common degree class of all terms; ZeroPolynomial / NotOfDegreeKBeta on
  /// zero or inhomogeneous input.
  DegreeClass degree_of(const Poly& F) const;

  struct DegreeSplit {
    Int k;
    LatticePoint m;
  };
  /// Writes a = N m + k b exactly (N = normal matrix); nullopt when the
  /// exponent vector is not of degree k*beta for any integer k.
  std::optional<DegreeSplit> split_degree(const std::vector<Int>& a) const;

  /// Degree k of a homogeneous polynomial of degree k*beta; throws
  /// NotOfDegreeKBeta otherwise.
  Int beta_degree(const Poly& F) const;

  /// Laurent polynomial (in torus vars of the base ring, coefficients in the
  /// parameters) -> homogeneous polynomial with exponents <m, eta_i> + c_i.
  /// SupportOutsidePolytope when some exponent would turn negative.
  Poly homogenize(const Poly& f, const std::vector<Int>& offsets) const;

  /// Inverse of homogenize on monomials: recovers m from the cox exponents
  /// of a monomial of the class of `offsets`.  NotOfDegreeKBeta otherwise.
  LatticePoint monomial_point(const ExponentVector& exps,
                              const std::vector<Int>& offsets) const;

  struct GradedMonomial {
    LatticePoint m;          ///< lattice point; depends on the chosen offsets
    ExponentVector exps;     ///< exponent vector in the total ring
  };
  /// Monomial basis of the graded piece of the class of `offsets`, sorted
  /// in descending graded-lex order of the exponent vectors.
  std::vector<GradedMonomial> graded_monomials(
      const std::vector<Int>& offsets) const;

  /// Lifts a base-ring polynomial into the total ring.
  Poly lift(const Poly& f) const { return f.embed(total_); }

 private:
  RingPtr base_, total_;
  std::vector<std::size_t> torus_vars_, cox_vars_;
  LatticePolytope P_;
  std::vector<Int> b_;
  IntMatrix normals_;        // s x n
  HermiteBasis class_basis_;  // column lattice of N for class reduction
  IntMatrix split_matrix_;    // s x (n+1): [N | b]
};

/// Term of the toric volume form: for each ascending n-subset I of facets
/// with det(eta_I) != 0, the integer det and the complementary monomial.
struct EulerFormEntry {
  std::vector<std::size_t> facets;  ///< ascending indices into the facet list
  Int det;                          ///< det of the chosen normal columns
  ExponentVector complement;        ///< product of the other facet variables
};

struct EulerFormTable {
  std::vector<EulerFormEntry> entries;  ///< nonzero-det subsets, lex order
};

EulerFormTable euler_form(const CoxRing& cox);

/// Homogeneous toric Jacobian of n+1 polynomials of degrees k_j * beta:
/// the bordered determinant divided by det(eta_I) * xhat_I for the first
/// valid index set I, cross-checked against the second valid index set.
struct ToricJacobian {
  Poly jac;            ///< element of degree (sum k_j) beta - beta_0
  std::vector<Int> k;  ///< the degrees k_j
};

ToricJacobian toric_jacobian(const CoxRing& cox, const std::vector<Poly>& F);

/// Affine Jacobian j(t) of n+1 Laurent polynomials: determinant of the
/// matrix with columns (f_j; t_1 df_j/dt_1; ...; t_n df_j/dt_n).
Poly affine_jacobian(const std::vector<Poly>& f,
                     const std::vector<std::size_t>& torus_vars);

/// Torus Jacobian of n Laurent polynomials: det(t_k df_j/dt_k), j,k = 1..n.
Poly toric_affine_jacobian(const std::vector<Poly>& f,
                           const std::vector<std::size_t>& torus_vars);

/// Expansion of j(t) for n+1 polynomials sharing the support `points`:
/// sum over ascending (n+1)-subsets of bracket * det(1, m) * t^(sum m).
/// `coeffs[j][i]` is the coefficient of t^{points[i]} in f_j.
Poly bracket_expansion(const RingPtr& ring, const SupportSet& points,
                       const std::vector<std::vector<Poly>>& coeffs,
                       const std::vector<std::size_t>& torus_vars);

/// Support of f projected to the torus variables.
SupportSet support_of(const Poly& f, const std::vector<std::size_t>& torus_vars);

/// Coefficient of the torus monomial t^m in f (a polynomial in the
/// remaining variables).
Poly coefficient_at(const Poly& f, const std::vector<std::size_t>& torus_vars,
                    const LatticePoint& m);

}  // namespace tres

#endif  // TRES_COX_HPP
