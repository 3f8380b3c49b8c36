#ifndef TRES_SMITH_HPP
#define TRES_SMITH_HPP

#include <optional>
#include <vector>

#include "tres/rational.hpp"

namespace tres {

using IntMatrix = std::vector<std::vector<Int>>;  // row-major

/// U * A * V = D with U, V unimodular and D diagonal; the diagonal entries
/// d_1 | d_2 | ... | d_r are the invariant factors, zeros afterwards.
struct SmithDecomposition {
  IntMatrix U, V;
  std::vector<Int> diag;
  std::size_t rank = 0;
};

SmithDecomposition smith_normal_form(IntMatrix A);

/// Column-echelon basis of the column lattice of A: the columns of H span
/// the same lattice, pivot rows strictly increase, pivots are positive, and
/// entries left of a pivot in its row lie in [0, pivot).
struct HermiteBasis {
  IntMatrix H;                       // m x r
  std::vector<std::size_t> pivot_rows;  // length r, strictly increasing
  std::size_t rank() const { return pivot_rows.size(); }
};

HermiteBasis hermite_column_basis(const IntMatrix& A);

/// Canonical representative of v modulo the column lattice of H.  Two
/// vectors reduce to the same representative iff they lie in the same coset.
std::vector<Int> reduce_mod_lattice(const HermiteBasis& H, std::vector<Int> v);

/// Integer basis (as columns, n x (n-1)) of the kernel of a nonzero row
/// vector eta in Z^n.
IntMatrix kernel_basis_of_row(const std::vector<Int>& eta);

/// Solves A x = b over the integers when A has full column rank; returns
/// nullopt when the system is inconsistent or the solution is non-integral.
std::optional<std::vector<Int>> solve_integral_full_rank(const IntMatrix& A,
                                                         const std::vector<Int>& b);

/// Index [Z^k : L] of the lattice L spanned by the given vectors (as rows in
/// Z^k); nullopt when rank(L) < k (infinite index).
std::optional<Int> lattice_span_index(const IntMatrix& span_rows,
                                      std::size_t ambient_dim);

}  // namespace tres

#endif  // TRES_SMITH_HPP
