#ifndef TRES_POLYNOMIAL_HPP
#define TRES_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "tres/monomial.hpp"
#include "tres/rational.hpp"
#include "tres/ring.hpp"

namespace tres {

struct Term {
  ExponentVector exp;
  BigRational coeff;
};

/// Sparse multivariate (Laurent) polynomial in canonical form: terms are
/// sorted in descending graded-lex order, coefficients are nonzero, and
/// negative exponents occur only on torus variables.
class SparsePolynomial {
 public:
  explicit SparsePolynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static SparsePolynomial zero(RingPtr ring) {
    return SparsePolynomial(std::move(ring));
  }
  static SparsePolynomial constant(RingPtr ring, const BigRational& c);
  static SparsePolynomial monomial(RingPtr ring, ExponentVector e,
                                   const BigRational& c = BigRational(1));
  static SparsePolynomial variable(RingPtr ring, std::size_t index);
  /// Builds canonical form from arbitrary terms (merges duplicates, drops
  /// zeros, sorts).
  static SparsePolynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exp_is_zero(terms_[0].exp));
  }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Value of a constant polynomial (zero polynomial gives 0).
  BigRational constant_value() const;

  const Term& leading_term() const;

  /// Total degree of the leading term; -1 for the zero polynomial.
  std::int64_t total_degree() const;
  /// Largest exponent of variable v; -1 for the zero polynomial... callers
  /// must handle Laurent terms where this may be negative yet maximal.
  std::int64_t degree_in(std::size_t v) const;
  /// Smallest exponent of variable v across all terms; 0 for zero poly.
  std::int64_t min_exponent_in(std::size_t v) const;
  bool depends_on(std::size_t v) const;

  BigRational coefficient_of(const ExponentVector& e) const;

  SparsePolynomial operator-() const;
  SparsePolynomial operator+(const SparsePolynomial& o) const;
  SparsePolynomial operator-(const SparsePolynomial& o) const;
  SparsePolynomial operator*(const SparsePolynomial& o) const;
  SparsePolynomial operator*(const BigRational& c) const;
  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    *this = *this + o;
    return *this;
  }
  SparsePolynomial& operator-=(const SparsePolynomial& o) {
    *this = *this - o;
    return *this;
  }
  SparsePolynomial& operator*=(const SparsePolynomial& o) {
    *this = *this * o;
    return *this;
  }
  bool operator==(const SparsePolynomial& o) const;
  bool operator!=(const SparsePolynomial& o) const { return !(*this == o); }

  SparsePolynomial pow(std::uint64_t e) const;

  /// Multiplies by the monomial x^delta.
  SparsePolynomial shift(const ExponentVector& delta) const;

  SparsePolynomial derivative(std::size_t v) const;
  /// x_v * d/dx_v, the logarithmic derivative scaled back; stays Laurent.
  SparsePolynomial log_derivative(std::size_t v) const;

  /// Substitutes rational values for a subset of variables.  Variables with
  /// negative exponents require a nonzero value.
  SparsePolynomial substitute(
      const std::map<std::size_t, BigRational>& values) const;

  BigRational evaluate(const std::vector<BigRational>& point) const;

  /// Reinterprets the polynomial in a ring that extends this one.
  SparsePolynomial embed(const RingPtr& bigger) const;

  /// Views the polynomial as univariate in variable v: exponent -> cofactor
  /// polynomial (with exponent of v zeroed out).
  std::map<std::int64_t, SparsePolynomial> as_univariate(std::size_t v) const;

  /// Rational c > 0 (or c < 0 if the leading coefficient is negative) such
  /// that (*this) = c * primitive_part(), where the primitive part has
  /// coprime integer coefficients and positive leading coefficient.
  BigRational content() const;
  SparsePolynomial primitive_part() const;

  std::string to_string() const;

 private:
  void canonicalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

using Poly = SparsePolynomial;

SparsePolynomial operator*(const BigRational& c, const SparsePolynomial& p);

}  // namespace tres

#endif  // TRES_POLYNOMIAL_HPP
