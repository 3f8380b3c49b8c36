#ifndef TRES_MATRIX_HPP
#define TRES_MATRIX_HPP

#include <vector>

#include "tres/polynomial.hpp"
#include "tres/ratfunc.hpp"

namespace tres {

/// Dense matrix of sparse polynomials.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, Poly::zero(ring_)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  Poly& at(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const Poly& at(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  bool is_numeric() const {
    for (const Poly& p : data_)
      if (!p.is_constant()) return false;
    return true;
  }

  PolyMatrix transpose() const;
  PolyMatrix submatrix(const std::vector<std::size_t>& row_sel,
                       const std::vector<std::size_t>& col_sel) const;
  PolyMatrix with_column(std::size_t c, const std::vector<Poly>& col) const;

  /// Entry-wise substitution of rational values for variables.
  PolyMatrix substitute(
      const std::map<std::size_t, BigRational>& values) const;

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Poly> data_;
};

enum class DetAlgorithm {
  Auto,            ///< numeric -> Gauss; <= 12 columns -> subset DP; else Bareiss
  CofactorSerial,  ///< reference implementation, exponential, testing only
  SubsetDP,        ///< column-subset dynamic program (OpenMP parallel)
  Bareiss,         ///< fraction-free elimination with exact division
  NumericGauss,    ///< rational Gaussian elimination (numeric matrices only)
};

/// Exact determinant over the polynomial ring.  All algorithms agree
/// bit-for-bit; `parallel=false` forces the single-threaded code path of the
/// chosen algorithm (the result is identical either way).
Poly fraction_free_det(const PolyMatrix& M,
                       DetAlgorithm alg = DetAlgorithm::Auto,
                       bool parallel = true);

/// Expansion by minors, serial.  Kept as the reference oracle for testing
/// the optimized kernels.
Poly det_cofactor_serial(const PolyMatrix& M);

/// Solves M x = rhs symbolically by Cramer's rule; throws SingularMatrix
/// when det(M) = 0 and NonSquare / DimensionMismatch on shape errors.
std::vector<RationalFunction> cramer_solve(const PolyMatrix& M,
                                           const std::vector<Poly>& rhs);

/// Dense rational matrix for the numeric fast paths.
class QMatrix {
 public:
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, BigRational(0)) {}

  static QMatrix from_poly(const PolyMatrix& M);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigRational& at(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const BigRational& at(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_, cols_;
  std::vector<BigRational> data_;
};

BigRational qdet(QMatrix M);

/// Reduced row echelon form computed in the given column order.
struct Rref {
  QMatrix mat;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
  explicit Rref(QMatrix m) : mat(std::move(m)) {}
};

Rref rref(QMatrix M);

std::size_t qrank(const QMatrix& M);

/// Solves square A x = b exactly; throws SingularMatrix when A is singular.
std::vector<BigRational> qsolve(const QMatrix& A,
                                const std::vector<BigRational>& b);

}  // namespace tres

#endif  // TRES_MATRIX_HPP
