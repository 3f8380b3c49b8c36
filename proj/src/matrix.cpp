#include "tres/matrix.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tres/error.hpp"
#include "tres/gcd.hpp"

namespace tres {

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix T(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) T.at(c, r) = at(r, c);
  return T;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& row_sel,
                                 const std::vector<std::size_t>& col_sel) const {
  PolyMatrix S(ring_, row_sel.size(), col_sel.size());
  for (std::size_t r = 0; r < row_sel.size(); ++r)
    for (std::size_t c = 0; c < col_sel.size(); ++c)
      S.at(r, c) = at(row_sel[r], col_sel[c]);
  return S;
}

PolyMatrix PolyMatrix::with_column(std::size_t c,
                                   const std::vector<Poly>& col) const {
  if (col.size() != rows_)
    fail(ErrorCode::DimensionMismatch, "replacement column length");
  PolyMatrix R = *this;
  for (std::size_t r = 0; r < rows_; ++r) R.at(r, c) = col[r];
  return R;
}

PolyMatrix PolyMatrix::substitute(
    const std::map<std::size_t, BigRational>& values) const {
  PolyMatrix R(ring_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      R.at(r, c) = at(r, c).substitute(values);
  return R;
}

namespace {

Poly det_recursive(const PolyMatrix& M, std::size_t col,
                   std::vector<std::size_t>& rows) {
  const std::size_t k = rows.size();
  if (k == 0) return Poly::constant(M.ring(), BigRational(1));
  if (k == 1) return M.at(rows[0], col);
  Poly acc = Poly::zero(M.ring());
  for (std::size_t j = 0; j < k; ++j) {
    const Poly& e = M.at(rows[j], col);
    if (e.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(k - 1);
    for (std::size_t i = 0; i < k; ++i)
      if (i != j) rest.push_back(rows[i]);
    Poly minor = det_recursive(M, col + 1, rest);
    Poly contrib = e * minor;
    if (j % 2 == 1) contrib = -contrib;
    acc += contrib;
  }
  return acc;
}

int popcount(std::uint32_t v) { return __builtin_popcount(v); }

Poly det_subset_dp(const PolyMatrix& M, bool parallel) {
  const std::size_t n = M.rows();
  assert(n <= 20);
  const std::uint32_t full = (n == 32 ? 0xffffffffu : ((1u << n) - 1));
  std::vector<std::vector<std::uint32_t>> by_level(n + 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask)
    by_level[static_cast<std::size_t>(popcount(mask))].push_back(mask);

  std::vector<Poly> f(static_cast<std::size_t>(full) + 1, Poly::zero(M.ring()));
  f[0] = Poly::constant(M.ring(), BigRational(1));

  for (std::size_t level = 1; level <= n; ++level) {
    const std::size_t col = level - 1;
    auto& targets = by_level[level];
    // Each target mask is written by exactly one iteration and reads only
    // masks from the previous level, so the parallel loop is race-free and
    // the summation order (ascending row) is fixed: results are identical
    // for any thread count.
    std::int64_t count = static_cast<std::int64_t>(targets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && count > 8)
#endif
    for (std::int64_t ti = 0; ti < count; ++ti) {
      std::uint32_t T = targets[static_cast<std::size_t>(ti)];
      Poly acc = Poly::zero(M.ring());
      int idx = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (!(T & (1u << r))) continue;
        const Poly& e = M.at(r, col);
        if (!e.is_zero()) {
          Poly contrib = e * f[T ^ (1u << r)];
          // Laplace sign along the last processed column.
          if ((idx + static_cast<int>(level) - 1) % 2 == 1) contrib = -contrib;
          acc += contrib;
        }
        ++idx;
      }
      f[T] = std::move(acc);
    }
    // Previous level is dead; release the memory.
    if (level >= 2)
      for (std::uint32_t m : by_level[level - 2]) f[m] = Poly::zero(M.ring());
  }
  return f[full];
}

Poly det_bareiss(const PolyMatrix& M, bool parallel) {
  const std::size_t n = M.rows();
  PolyMatrix D = M;
  int sign = 1;
  Poly prev = Poly::constant(M.ring(), BigRational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (D.at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && D.at(r, k).is_zero()) ++r;
      if (r == n) return Poly::zero(M.ring());
      for (std::size_t c = 0; c < n; ++c) std::swap(D.at(k, c), D.at(r, c));
      sign = -sign;
    }
    std::int64_t work = static_cast<std::int64_t>((n - k - 1) * (n - k - 1));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && work > 16)
#endif
    for (std::int64_t idx = 0; idx < work; ++idx) {
      std::size_t i = k + 1 + static_cast<std::size_t>(idx) / (n - k - 1);
      std::size_t j = k + 1 + static_cast<std::size_t>(idx) % (n - k - 1);
      D.at(i, j) = exact_divide(
          D.at(i, j) * D.at(k, k) - D.at(i, k) * D.at(k, j), prev);
    }
    for (std::size_t i = k + 1; i < n; ++i) D.at(i, k) = Poly::zero(M.ring());
    prev = D.at(k, k);
  }
  Poly det = D.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

BigRational qdet_inplace(QMatrix& A) {
  const std::size_t n = A.rows();
  BigRational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && A.at(piv, k) == 0) ++piv;
    if (piv == n) return BigRational(0);
    if (piv != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(A.at(k, c), A.at(piv, c));
      det = -det;
    }
    det *= A.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A.at(i, k) == 0) continue;
      BigRational m = A.at(i, k) / A.at(k, k);
      for (std::size_t c = k; c < n; ++c) A.at(i, c) -= m * A.at(k, c);
    }
  }
  return det;
}

}  // namespace

Poly det_cofactor_serial(const PolyMatrix& M) {
  if (M.rows() != M.cols()) fail(ErrorCode::NonSquare, "determinant");
  std::vector<std::size_t> rows(M.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return det_recursive(M, 0, rows);
}

Poly fraction_free_det(const PolyMatrix& M, DetAlgorithm alg, bool parallel) {
  if (M.rows() != M.cols()) fail(ErrorCode::NonSquare, "determinant");
  if (M.rows() == 0) return Poly::constant(M.ring(), BigRational(1));
  if (alg == DetAlgorithm::Auto) {
    if (M.is_numeric())
      alg = DetAlgorithm::NumericGauss;
    else if (M.cols() <= 12)
      alg = DetAlgorithm::SubsetDP;
    else
      alg = DetAlgorithm::Bareiss;
  }
  switch (alg) {
    case DetAlgorithm::CofactorSerial:
      return det_cofactor_serial(M);
    case DetAlgorithm::SubsetDP:
      if (M.rows() > 20)
        fail(ErrorCode::Unsupported, "subset DP determinant beyond 20x20");
      return det_subset_dp(M, parallel);
    case DetAlgorithm::Bareiss:
      return det_bareiss(M, parallel);
    case DetAlgorithm::NumericGauss: {
      if (!M.is_numeric())
        fail(ErrorCode::Internal, "NumericGauss requires a numeric matrix");
      QMatrix A = QMatrix::from_poly(M);
      return Poly::constant(M.ring(), qdet(std::move(A)));
    }
    case DetAlgorithm::Auto:
      break;
  }
  fail(ErrorCode::Internal, "unreachable determinant dispatch");
}

std::vector<RationalFunction> cramer_solve(const PolyMatrix& M,
                                           const std::vector<Poly>& rhs) {
  if (M.rows() != M.cols()) fail(ErrorCode::NonSquare, "cramer_solve");
  if (rhs.size() != M.rows())
    fail(ErrorCode::DimensionMismatch, "cramer_solve rhs length");
  Poly det = fraction_free_det(M);
  if (det.is_zero()) fail(ErrorCode::SingularMatrix, "cramer_solve");
  std::vector<RationalFunction> x;
  x.reserve(M.cols());
  for (std::size_t c = 0; c < M.cols(); ++c)
    x.emplace_back(fraction_free_det(M.with_column(c, rhs)), det);
  return x;
}

QMatrix QMatrix::from_poly(const PolyMatrix& M) {
  QMatrix A(M.rows(), M.cols());
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) {
      assert(M.at(r, c).is_constant());
      A.at(r, c) = M.at(r, c).constant_value();
    }
  return A;
}

BigRational qdet(QMatrix M) {
  if (M.rows() != M.cols()) fail(ErrorCode::NonSquare, "qdet");
  return qdet_inplace(M);
}

Rref rref(QMatrix M) {
  const std::size_t rows = M.rows(), cols = M.cols();
  Rref out(std::move(M));
  QMatrix& A = out.mat;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(A.at(r, j), A.at(piv, j));
    BigRational inv = BigRational(1) / A.at(r, c);
    for (std::size_t j = 0; j < cols; ++j) A.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      BigRational m = A.at(i, c);
      for (std::size_t j = 0; j < cols; ++j) A.at(i, j) -= m * A.at(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

std::size_t qrank(const QMatrix& M) { return rref(M).rank(); }

std::vector<BigRational> qsolve(const QMatrix& A,
                                const std::vector<BigRational>& b) {
  if (A.rows() != A.cols()) fail(ErrorCode::NonSquare, "qsolve");
  if (b.size() != A.rows()) fail(ErrorCode::DimensionMismatch, "qsolve rhs");
  const std::size_t n = A.rows();
  QMatrix W(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) W.at(r, c) = A.at(r, c);
    W.at(r, n) = b[r];
  }
  Rref R = rref(std::move(W));
  if (R.rank() != n || (!R.pivot_cols.empty() && R.pivot_cols.back() == n))
    fail(ErrorCode::SingularMatrix, "qsolve");
  std::vector<BigRational> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = R.mat.at(r, n);
  return x;
}

}  // namespace tres
