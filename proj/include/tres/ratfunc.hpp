#ifndef TRES_RATFUNC_HPP
#define TRES_RATFUNC_HPP

#include "tres/polynomial.hpp"

namespace tres {

/// Quotient of sparse polynomials kept in canonical reduced form:
/// gcd(num, den) = 1, den integer-primitive with positive leading
/// coefficient and min exponent 0 in every torus variable.
class RationalFunction {
 public:
  /// Reduces num/den; throws DivideByZero when den == 0.
  RationalFunction(SparsePolynomial num, SparsePolynomial den);

  explicit RationalFunction(SparsePolynomial num);

  /// Builds the quotient of an already-coprime pair without running the
  /// (potentially expensive) gcd reduction.  The caller must guarantee
  /// gcd(num, den) = 1; the denominator pinning is still applied, so the
  /// result is in the same canonical form the reducing constructor yields.
  static RationalFunction from_coprime(SparsePolynomial num,
                                       SparsePolynomial den);

  const SparsePolynomial& num() const { return num_; }
  const SparsePolynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  BigRational evaluate(const std::vector<BigRational>& point) const;

  std::string to_string() const;

 private:
  struct CoprimeTag {};
  RationalFunction(CoprimeTag, SparsePolynomial num, SparsePolynomial den);

  /// Moves the denominator's torus-monomial and rational content into the
  /// numerator so the denominator is integer-primitive with min exponent 0.
  void pin_denominator();

  SparsePolynomial num_, den_;
};

}  // namespace tres

#endif  // TRES_RATFUNC_HPP
