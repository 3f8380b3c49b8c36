#ifndef TRES_RESULTANT_HPP
#define TRES_RESULTANT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tres/cox.hpp"
#include "tres/matrix.hpp"
#include "tres/polytope.hpp"

namespace tres {

/// A system with one fresh coefficient parameter per support point:
/// f_i = sum_m u-variable * t^m.
struct GenericSystem {
  RingPtr ring;  ///< torus variables first, then the coefficient parameters
  std::vector<std::size_t> torus_vars;
  std::vector<Poly> f;
  /// coeffs[i] = (support point, parameter index) pairs of f_i, in the
  /// enumeration order of the support.
  std::vector<std::vector<std::pair<LatticePoint, std::size_t>>> coeffs;
};

/// Unmixed generic system: support of f_i is all of k_i P.
GenericSystem generic_system(const LatticePolytope& P,
                             const std::vector<Int>& k,
                             const std::vector<std::string>& prefixes = {});

/// Mixed generic system over explicit supports.
GenericSystem generic_mixed_system(
    const std::vector<SupportSet>& supports,
    const std::vector<std::string>& prefixes = {});

struct PhiColumn {
  enum class Kind { Multiplier, Jacobian };
  Kind kind = Kind::Multiplier;
  std::size_t block = 0;  ///< index i of F_i, for multiplier columns
  LatticePoint m;         ///< multiplier lattice point
  ExponentVector exps;    ///< multiplier monomial in the cox ring
};

/// Row/column bookkeeping of the map (Λ, Θ) -> Σ Λ_i F_i + Θ·J(F) in the
/// critical degree: rows are the interior monomials of κP; before the final
/// Jacobian column, block i holds the interior monomials of (κ−k_i)P.
struct PhiLayout {
  LatticePolytope P;
  std::vector<Int> k;
  Int kappa = 0;
  std::vector<CoxRing::GradedMonomial> rows;
  std::vector<PhiColumn> columns;
};

struct PhiMatrix {
  PhiLayout layout;
  CoxRing cox;
  std::vector<Poly> F;  ///< homogenized system, degrees k_i * beta
  Poly jacobian;        ///< J(F)
  PolyMatrix entries;   ///< coefficient of row monomial in column * F_i / J
  bool numeric = false;

  std::size_t rows() const { return layout.rows.size(); }
  std::size_t cols() const { return layout.columns.size(); }
};

/// Core builder: F are homogeneous elements of the cox ring with degrees
/// k_i * beta (k_i derived via beta_degree).
PhiMatrix build_phi(const CoxRing& cox, const std::vector<Poly>& F);

/// Convenience: homogenize Laurent polynomials f_i (support in k_i P) and
/// build the matrix over a fresh cox ring on P.
PhiMatrix build_phi(const LatticePolytope& P, const std::vector<Int>& k,
                    const std::vector<Poly>& f,
                    const std::vector<std::size_t>& torus_vars);

/// Coefficient vector of a polynomial of the critical degree in the row
/// basis of M.  DegreeMismatch when a monomial falls outside the rows.
std::vector<Poly> phi_row_coefficients(const PhiMatrix& M, const Poly& H);

/// Interior lattice point counts of jP as a polynomial in j (degree n,
/// leading coefficient vol(P)); exact rational coefficients, fitted on
/// j = 1..n+1 and verified at j = n+2.
std::vector<BigRational> interior_ehrhart(const LatticePolytope& P);

/// Koszul rank W_j = Σ_{|J|=j} |(k_J P)° ∩ Z^n| for j = 0..n+1 (k_J = Σ_{i∈J} k_i).
std::vector<Int> koszul_ranks(const LatticePolytope& P,
                              const std::vector<Int>& k);

/// Total degree of the determinant of the complex: (Σ_i Π_{ν≠i} k_ν)·n!·vol(P).
Int determinant_total_degree(const LatticePolytope& P,
                             const std::vector<Int>& k);

/// The same number as an alternating sum of Koszul ranks:
/// Σ_{j=0}^{n+1} (−1)^{n+1−j} · j · Σ_{|J|=j} p(k_J) with p the interior
/// count polynomial.
Int determinant_degree_alternating(const LatticePolytope& P,
                                   const std::vector<Int>& k);

/// Index ℓ of the affine lattice generated by k₀P ∩ Z^n (k₀ = max k_i).
Int resultant_index(const LatticePolytope& P, const std::vector<Int>& k);

/// Degree of the sparse resultant in the coefficients of F_i:
/// Π_{ν≠i} k_ν · n!·vol(P) / ℓ.  NonIntegerDegree if ℓ does not divide.
Int resultant_degree(const LatticePolytope& P, const std::vector<Int>& k,
                     std::size_t i);

struct ResultantOutput {
  Poly polynomial;  ///< R^ell (determinant path) or the certified minor gcd
  Int ell = 1;
  bool certified = false;   ///< total degree matches the predicted value
  Int computed_degree = 0;  ///< total degree of `polynomial`
  Int predicted_degree = 0; ///< ℓ·deg(R) from the degree formula
  std::string note;         ///< sign convention reminder
};

/// det(Φ) for square Φ; NonSquare otherwise.
ResultantOutput resultant_via_det(const PhiMatrix& M);

struct MinorGcdOptions {
  std::uint64_t seed = 1;
  std::size_t max_minors = 64;
};

/// gcd of maximal minors containing the Jacobian column, sampled until the
/// degree certificate is met or the budget is exhausted (then uncertified).
ResultantOutput resultant_via_minor_gcd(const PhiMatrix& M,
                                        const MinorGcdOptions& opt = {});

/// Classical Sylvester resultant in the variable `var`; both inputs are
/// translated so their minimal exponent in `var` is zero.  Coefficients may
/// be polynomials in the other variables.
Poly univariate_sylvester(const Poly& f, const Poly& g, std::size_t var);

struct FacetResultant {
  HalfSpace facet;   ///< facet of the Minkowski sum
  Poly resultant;    ///< already raised to ell
  Int ell = 1;       ///< index [L^η : Σ_j L_j^η] (1 when defined by convention)
  FaceData faces;    ///< supports of the leading forms used
};

struct FacetResultantSet {
  LatticePolytope sum;  ///< Δ = Σ_j Δ_j
  std::vector<Int> sum_offsets;  ///< a_i of Δ, facet order
  std::vector<FacetResultant> entries;  ///< one per facet, facet order

  const FacetResultant& by_normal(const LatticePoint& eta) const;
};

/// Facet resultants of the n leading-form systems of f (Laurent
/// polynomials in `torus_vars`), per facet of the Minkowski sum of the
/// Newton polytopes.
FacetResultantSet facet_resultants(const std::vector<Poly>& f,
                                   const std::vector<std::size_t>& torus_vars);

struct FactoredPoly {
  BigRational unit = BigRational(1);
  std::vector<std::pair<Poly, Int>> factors;  ///< (base, exponent ≥ 0)

  Poly expand(const RingPtr& ring) const;
};

/// Π_i (R^{η_i})^{⟨m,η_i⟩ + k₀·b_i} in factored form; NegativeExponent when
/// m lies outside k₀P.
FactoredPoly monomial_specialized_resultant(const LatticePoint& m,
                                            const FacetResultantSet& fr,
                                            const Int& k0,
                                            const std::vector<Int>& b);

/// det of M with column `col` removed and `replacement` appended as the last
/// column, sign-adjusted to equal det(M with column `col` replaced).
/// Keeps heavy replacement entries out of the inner expansion levels.
Poly det_with_replaced_column(const PolyMatrix& M, std::size_t col,
                              const std::vector<Poly>& replacement);

}  // namespace tres

#endif  // TRES_RESULTANT_HPP
