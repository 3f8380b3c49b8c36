#include "tres/smith.hpp"

#include <algorithm>
#include <cassert>

#include "tres/error.hpp"
#include "tres/matrix.hpp"

namespace tres {

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix I(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

}  // namespace

SmithDecomposition smith_normal_form(IntMatrix A) {
  const std::size_t m = A.size();
  const std::size_t n = m == 0 ? 0 : A[0].size();
  SmithDecomposition S;
  S.U = identity(m);
  S.V = identity(n);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(A[a], A[b]);
    std::swap(S.U[a], S.U[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(A[i][a], A[i][b]);
    for (std::size_t i = 0; i < n; ++i) std::swap(S.V[i][a], S.V[i][b]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& q) {
    // row_dst += q * row_src
    for (std::size_t j = 0; j < n; ++j) A[dst][j] += q * A[src][j];
    for (std::size_t j = 0; j < m; ++j) S.U[dst][j] += q * S.U[src][j];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < m; ++i) A[i][dst] += q * A[i][src];
    for (std::size_t i = 0; i < n; ++i) S.V[i][dst] += q * S.V[i][src];
  };
  auto negate_row = [&](std::size_t r) {
    for (std::size_t j = 0; j < n; ++j) A[r][j] = -A[r][j];
    for (std::size_t j = 0; j < m; ++j) S.U[r][j] = -S.U[r][j];
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A[i][j] != 0 &&
              (!found || abs(A[i][j]) < abs(A[pi][pj]))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) {
        // trailing block is zero; done entirely
        t = steps;
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        Int q = -floor_div(A[i][t], A[t][t]);
        add_row(i, t, q);
        if (A[i][t] != 0) clean = false;  // remainder smaller than pivot
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        Int q = -floor_div(A[t][j], A[t][t]);
        add_col(j, t, q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;  // a smaller pivot now exists; repeat

      // Divisibility pass: pivot must divide the whole trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n && divisible; ++j)
          if (A[i][j] % A[t][t] != 0) {
            add_row(t, i, Int(1));
            divisible = false;
          }
      if (divisible) break;
    }
    if (t == steps) break;
    if (A[t][t] < 0) negate_row(t);
  }

  S.diag.assign(steps, Int(0));
  for (std::size_t t = 0; t < steps; ++t) {
    S.diag[t] = A[t][t];
    if (A[t][t] != 0) S.rank = t + 1;
  }
  return S;
}

HermiteBasis hermite_column_basis(const IntMatrix& A) {
  const std::size_t m = A.size();
  const std::size_t n = m == 0 ? 0 : A[0].size();
  // Work on columns: cols[j] is column j of A.
  std::vector<std::vector<Int>> cols(n, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = A[i][j];

  HermiteBasis out;
  std::size_t r = 0;  // next pivot column slot
  for (std::size_t row = 0; row < m && r < cols.size(); ++row) {
    // gcd-eliminate row `row` across columns r..end
    for (;;) {
      std::size_t best = cols.size();
      for (std::size_t j = r; j < cols.size(); ++j)
        if (cols[j][row] != 0 &&
            (best == cols.size() || abs(cols[j][row]) < abs(cols[best][row])))
          best = j;
      if (best == cols.size()) break;  // row is zero from r on
      std::swap(cols[r], cols[best]);
      bool others = false;
      for (std::size_t j = r + 1; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        Int q = floor_div(cols[j][row], cols[r][row]);
        for (std::size_t i = 0; i < m; ++i) cols[j][i] -= q * cols[r][i];
        if (cols[j][row] != 0) others = true;
      }
      if (!others) {
        if (cols[r][row] < 0)
          for (std::size_t i = 0; i < m; ++i) cols[r][i] = -cols[r][i];
        // canonical reduction of earlier columns at this pivot row
        for (std::size_t j = 0; j < r; ++j) {
          Int q = floor_div(cols[j][row], cols[r][row]);
          if (q != 0)
            for (std::size_t i = 0; i < m; ++i) cols[j][i] -= q * cols[r][i];
        }
        out.pivot_rows.push_back(row);
        ++r;
        break;
      }
    }
  }
  cols.resize(r);
  out.H.assign(m, std::vector<Int>(r, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) out.H[i][j] = cols[j][i];
  return out;
}

std::vector<Int> reduce_mod_lattice(const HermiteBasis& B, std::vector<Int> v) {
  const std::size_t m = B.H.size();
  if (v.size() != m) fail(ErrorCode::DimensionMismatch, "reduce_mod_lattice");
  for (std::size_t c = 0; c < B.rank(); ++c) {
    std::size_t r = B.pivot_rows[c];
    Int q = floor_div(v[r], B.H[r][c]);
    if (q != 0)
      for (std::size_t i = 0; i < m; ++i) v[i] -= q * B.H[i][c];
  }
  return v;
}

IntMatrix kernel_basis_of_row(const std::vector<Int>& eta) {
  const std::size_t n = eta.size();
  bool nonzero = false;
  for (const Int& e : eta) nonzero = nonzero || e != 0;
  if (!nonzero) fail(ErrorCode::EmptyInput, "kernel of zero vector");
  SmithDecomposition S = smith_normal_form(IntMatrix{eta});
  // eta * V = (d, 0, ..., 0); columns 1..n-1 of V span the kernel lattice.
  IntMatrix K(n, std::vector<Int>(n - 1, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) K[i][j - 1] = S.V[i][j];
  return K;
}

std::optional<std::vector<Int>> solve_integral_full_rank(
    const IntMatrix& A, const std::vector<Int>& b) {
  const std::size_t m = A.size();
  const std::size_t n = m == 0 ? 0 : A[0].size();
  if (b.size() != m) fail(ErrorCode::DimensionMismatch, "solve_integral");
  QMatrix W(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) W.at(i, j) = BigRational(A[i][j]);
    W.at(i, n) = BigRational(b[i]);
  }
  Rref R = rref(std::move(W));
  // Full column rank demanded: every unknown is a pivot.
  std::size_t pivots_in_A = 0;
  bool rhs_pivot = false;
  for (std::size_t c : R.pivot_cols) {
    if (c < n)
      ++pivots_in_A;
    else
      rhs_pivot = true;
  }
  if (rhs_pivot) return std::nullopt;  // inconsistent
  if (pivots_in_A != n)
    fail(ErrorCode::Internal, "solve_integral_full_rank: rank-deficient matrix");
  std::vector<Int> x(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!is_integer(R.mat.at(r, n))) return std::nullopt;
    x[r] = numerator(R.mat.at(r, n));
  }
  return x;
}

std::optional<Int> lattice_span_index(const IntMatrix& span_rows,
                                      std::size_t ambient_dim) {
  if (ambient_dim == 0) return Int(1);
  IntMatrix M = span_rows;
  for (const auto& row : M)
    if (row.size() != ambient_dim)
      fail(ErrorCode::DimensionMismatch, "lattice_span_index");
  if (M.empty()) return std::nullopt;
  SmithDecomposition S = smith_normal_form(std::move(M));
  if (S.rank < ambient_dim) return std::nullopt;
  Int idx(1);
  for (std::size_t i = 0; i < ambient_dim; ++i) idx *= S.diag[i];
  return idx;
}

}  // namespace tres
