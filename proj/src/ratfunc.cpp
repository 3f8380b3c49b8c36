#include "tres/ratfunc.hpp"

#include "tres/error.hpp"
#include "tres/gcd.hpp"

namespace tres {

RationalFunction::RationalFunction(SparsePolynomial num, SparsePolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::DivideByZero, "zero denominator");
  const RingPtr ring = num_.ring();
  assert(Ring::same(*ring, *den_.ring()));
  if (num_.is_zero()) {
    den_ = Poly::constant(ring, BigRational(1));
    return;
  }
  Poly g = multipoly_gcd(num_, den_);
  if (!(g.is_constant() && g.constant_value() == 1)) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  pin_denominator();
}

RationalFunction::RationalFunction(CoprimeTag, SparsePolynomial num,
                                   SparsePolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::DivideByZero, "zero denominator");
  assert(Ring::same(*num_.ring(), *den_.ring()));
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.ring(), BigRational(1));
    return;
  }
  pin_denominator();
}

RationalFunction RationalFunction::from_coprime(SparsePolynomial num,
                                                SparsePolynomial den) {
  return RationalFunction(CoprimeTag{}, std::move(num), std::move(den));
}

void RationalFunction::pin_denominator() {
  const RingPtr ring = num_.ring();
  // Push the denominator's torus-monomial and rational content into the
  // numerator so the denominator is pinned.
  ExponentVector delta(ring->size(), 0);
  bool any = false;
  for (std::size_t v = 0; v < ring->size(); ++v) {
    if (ring->kind(v) != VarKind::Torus) continue;
    std::int64_t m = den_.min_exponent_in(v);
    if (m != 0) {
      delta[v] = -m;
      any = true;
    }
  }
  if (any) {
    den_ = den_.shift(delta);
    num_ = num_.shift(delta);
  }
  BigRational c = den_.content();
  if (c != 1) {
    BigRational inv = BigRational(1) / c;
    den_ = den_ * inv;
    num_ = num_ * inv;
  }
}

RationalFunction::RationalFunction(SparsePolynomial num)
    : RationalFunction(num, Poly::constant(num.ring(), BigRational(1))) {}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.num_.is_zero()) fail(ErrorCode::DivideByZero, "division by zero");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  // Canonical form makes structural comparison sound.
  return num_ == o.num_ && den_ == o.den_;
}

BigRational RationalFunction::evaluate(
    const std::vector<BigRational>& point) const {
  BigRational d = den_.evaluate(point);
  if (d == 0) fail(ErrorCode::DivideByZero, "denominator vanishes at point");
  return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) {
    if (den_.constant_value() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/" + tres::to_string(den_.constant_value());
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace tres
