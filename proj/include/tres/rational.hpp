#ifndef TRES_RATIONAL_HPP
#define TRES_RATIONAL_HPP

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace tres {

/// Arbitrary-precision integer.
using Int = mpz_class;

/// Arbitrary-precision rational, always kept in lowest terms.
using BigRational = mpq_class;

inline BigRational make_rational(const Int& num, const Int& den) {
  assert(den != 0);
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline Int numerator(const BigRational& q) { return q.get_num(); }
inline Int denominator(const BigRational& q) { return q.get_den(); }

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

/// Floor division qoutient of integers (rounds toward -infinity).
inline Int floor_div(const Int& a, const Int& b) {
  assert(b != 0);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int abs(const Int& a) { return a >= 0 ? a : Int(-a); }

inline Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigRational pow(const BigRational& base, long e) {
  if (e == 0) return BigRational(1);
  BigRational b = base;
  if (e < 0) {
    assert(b != 0);
    b = BigRational(1) / b;
    e = -e;
  }
  BigRational r(1);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline long to_long(const Int& a) {
  assert(a.fits_slong_p());
  return a.get_si();
}

}  // namespace tres

#endif  // TRES_RATIONAL_HPP
