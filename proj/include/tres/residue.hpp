#ifndef TRES_RESIDUE_HPP
#define TRES_RESIDUE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tres/ratfunc.hpp"
#include "tres/resultant.hpp"

namespace tres {

/// Positive / negative parts of the shifted facet pairings of a Laurent
/// monomial t^m: for each facet (eta_i, a_i) of the relevant polytope,
/// plus_i - minus_i = <m, eta_i> + a_i - 1 with plus_i, minus_i >= 0 and
/// plus_i * minus_i = 0.  minus_i > 0 exactly when m lies beyond the
/// (inwards-shifted) facet, and it bounds the pole order of the global
/// residue of t^m along the corresponding facet-resultant divisor.
struct MuSplit {
  std::vector<Int> plus, minus;
};

MuSplit mu_split(const LatticePoint& m, const std::vector<HalfSpace>& facets,
                 const std::vector<Int>& a);

/// Degree completion: the smallest k0 >= opts.min_k0 admitting a lattice
/// point p of k0*P with <p, eta_i> + k0*b_i >= minus_i for every facet.
/// c_i := <p, eta_i> + k0*b_i - minus_i is the slack; among the admissible
/// points the one with the smallest total slack (ties: lexicographically
/// smallest p) is chosen.  With avoid_index set, only points with zero
/// slack at that facet are considered.
struct Completion {
  Int k0;
  LatticePoint p;
  std::vector<Int> c;
};

struct CompletionOptions {
  Int min_k0 = 1;
  Int max_k0 = 16;
  std::optional<std::size_t> avoid_index;
};

Completion completion_vector(const LatticePolytope& P,
                             const std::vector<Int>& b,
                             const std::vector<Int>& minus,
                             const CompletionOptions& opts = {});

/// Normalization constant gamma = (prod_i k_i) * n! * vol(P): the value of
/// the residue functional on the toric Jacobian of any nondegenerate system
/// of degrees k_i.
Int residue_normalization(const LatticePolytope& P, const std::vector<Int>& k);

/// Toric residue of a homogeneous H of the critical degree with respect to
/// the system of M: gamma times the unique constant theta with
/// H = theta * J(F) modulo <F_0, ..., F_n> in the critical degree.  The
/// uniqueness certificate (the Jacobian column is independent of the
/// multiplier image) and the existence of the decomposition are both
/// checked; failure of either means the specialized resultant vanishes
/// (ResultantVanishes).  Symbolic systems go through exact determinant
/// ratios, fully numeric ones through rational elimination.
RationalFunction toric_residue(const PhiMatrix& M, const Poly& H);

/// prod_i (facet resultant_i)^{exponents_i} in factored form (exponents
/// must be >= 0; zero exponents are dropped).
FactoredPoly denominator_bound(const FacetResultantSet& fr,
                               const std::vector<Int>& exponents);

/// A global residue in the torus together with the certified factorization
/// of its reduced denominator into facet resultants:
///   value = numerator / prod (R^{eta})^{e}  with e = exponent per factor.
struct ResidueValue {
  RationalFunction value;
  Poly numerator;
  /// (facet inner normal, exponent) for each facet resultant dividing the
  /// reduced denominator, facet order, exponents > 0 only.
  std::vector<std::pair<LatticePoint, Int>> denominator;
  bool certified = false;
  std::string note;
};

/// Residues of Laurent monomials for a system of n Laurent polynomials in n
/// torus variables sharing one Newton polytope P.  Base values come from a
/// degree completion and one linear solve against the Jacobian column of
/// the critical-degree map; monomials whose completed layout is not square
/// are reduced to computable ones through the membership relations
/// "residues vanish on the ideal", solved facet by facet along Sylvester
/// windows of the leading forms.  All intermediate values are memoized.
class UnmixedResidueTable {
 public:
  UnmixedResidueTable(std::vector<Poly> f, std::vector<std::size_t> torus_vars);

  const LatticePolytope& polytope() const { return P_; }
  const FacetResultantSet& facet_set() const { return fr_; }
  /// Exponent bounds mu^- of t^m (offsets a_i = n * b_i).
  MuSplit mu(const LatticePoint& m) const;

  /// Global residue of t^m, exact and canonically reduced.
  RationalFunction residue(const LatticePoint& m);

  /// Linear extension to a Laurent polynomial q with coefficients in the
  /// parameters: sum of coefficient * residue(monomial).
  RationalFunction residue_of(const Poly& q);

  /// residue(m) plus the certified denominator factorization.
  ResidueValue residue_value(const LatticePoint& m);

 private:
  // The recursion works with polynomial numerators against the pole bound
  // (residue * prod resultant^mu^- is a polynomial), so no rational-function
  // reduction happens until a value is read out.
  Poly direct(const LatticePoint& m, const Completion& comp,
              const std::vector<Int>& minus);
  const Poly& raise(const LatticePoint& m);
  const Poly& numerator_at(const LatticePoint& m);
  Poly bound_poly(const std::vector<Int>& minus) const;
  bool layout_is_square(const Int& k0);

  std::vector<Poly> f_;
  std::vector<std::size_t> tv_;
  LatticePolytope P_;
  FacetResultantSet fr_;
  std::vector<Int> a_;  // facet offsets of the Minkowski sum nP
  std::map<LatticePoint, Poly> memo_;
  std::map<LatticePoint, RationalFunction> reduced_;
  std::set<LatticePoint> in_progress_;
  std::map<Int, bool> square_cache_;
  std::size_t nodes_ = 0;
};

ResidueValue global_residue_unmixed(const std::vector<Poly>& f,
                                    const std::vector<std::size_t>& torus_vars,
                                    const LatticePoint& m);

struct MixedResidueOptions {
  std::uint64_t seed = 1;
  /// Independent generic-multiplier draws that must agree exactly.
  int draws = 2;
  /// Budget for the symbolic interpolation basis (product over coefficient
  /// groups of the homogeneous monomial counts).
  std::size_t max_interpolation_terms = 600;
  /// Skip the common-polytope shortcut even when all Newton polytopes agree.
  bool force_generic_multiplier = false;
};

/// Global residue of t^m for n Laurent polynomials with arbitrary Newton
/// polytopes.  The system is transformed to a common-polytope one on the
/// Minkowski sum by generic multipliers; two independent draws must agree
/// exactly.  Fully numeric coefficients give a rational value directly;
/// symbolic ones are reconstructed through per-group homogeneous
/// interpolation of numerator * denominator bound, certified by
/// re-evaluation at fresh points.
ResidueValue global_residue_mixed(const std::vector<Poly>& f,
                                  const std::vector<std::size_t>& torus_vars,
                                  const LatticePoint& m,
                                  const MixedResidueOptions& opts = {});

}  // namespace tres

#endif  // TRES_RESIDUE_HPP
