#include "tres/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "tres/error.hpp"

namespace tres {

SparsePolynomial SparsePolynomial::constant(RingPtr ring,
                                            const BigRational& c) {
  SparsePolynomial p(ring);
  if (c != 0) p.terms_.push_back({ExponentVector(ring->size(), 0), c});
  return p;
}

SparsePolynomial SparsePolynomial::monomial(RingPtr ring, ExponentVector e,
                                            const BigRational& c) {
  if (e.size() != ring->size())
    fail(ErrorCode::DimensionMismatch, "monomial exponent length");
  SparsePolynomial p(ring);
  if (c != 0) {
    p.terms_.push_back({std::move(e), c});
    p.canonicalize();
  }
  return p;
}

SparsePolynomial SparsePolynomial::variable(RingPtr ring, std::size_t index) {
  ExponentVector e(ring->size(), 0);
  e.at(index) = 1;
  return monomial(std::move(ring), std::move(e));
}

SparsePolynomial SparsePolynomial::from_terms(RingPtr ring,
                                              std::vector<Term> terms) {
  SparsePolynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void SparsePolynomial::canonicalize() {
  for (const Term& t : terms_) {
    if (t.exp.size() != ring_->size())
      fail(ErrorCode::DimensionMismatch, "term exponent length");
    for (std::size_t v = 0; v < t.exp.size(); ++v)
      if (t.exp[v] < 0 && !ring_->allows_negative(v))
        fail(ErrorCode::Internal,
             "negative exponent on non-torus variable '" + ring_->name(v) +
                 "'");
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return grlex_compare(a.exp, b.exp) > 0;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (Term& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
  }
  terms_ = std::move(merged);
}

BigRational SparsePolynomial::constant_value() const {
  if (terms_.empty()) return BigRational(0);
  assert(is_constant());
  return terms_[0].coeff;
}

const Term& SparsePolynomial::leading_term() const {
  assert(!terms_.empty());
  return terms_.front();
}

std::int64_t SparsePolynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return tres::total_degree(terms_.front().exp);
}

std::int64_t SparsePolynomial::degree_in(std::size_t v) const {
  if (terms_.empty()) return -1;
  std::int64_t d = terms_.front().exp.at(v);
  for (const Term& t : terms_) d = std::max(d, t.exp[v]);
  return d;
}

std::int64_t SparsePolynomial::min_exponent_in(std::size_t v) const {
  if (terms_.empty()) return 0;
  std::int64_t d = terms_.front().exp.at(v);
  for (const Term& t : terms_) d = std::min(d, t.exp[v]);
  return d;
}

bool SparsePolynomial::depends_on(std::size_t v) const {
  for (const Term& t : terms_)
    if (t.exp.at(v) != 0) return true;
  return false;
}

BigRational SparsePolynomial::coefficient_of(const ExponentVector& e) const {
  for (const Term& t : terms_) {
    int c = grlex_compare(t.exp, e);
    if (c == 0) return t.coeff;
    if (c < 0) break;  // sorted descending, no match possible anymore
  }
  return BigRational(0);
}

SparsePolynomial SparsePolynomial::operator-() const {
  SparsePolynomial r(*this);
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& o) const {
  assert(Ring::same(*ring_, *o.ring_));
  SparsePolynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grlex_compare(terms_[i].exp, o.terms_[j].exp);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      BigRational s = terms_[i].coeff + o.terms_[j].coeff;
      if (s != 0) r.terms_.push_back({terms_[i].exp, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& o) const {
  return *this + (-o);
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& o) const {
  assert(Ring::same(*ring_, *o.ring_));
  if (is_zero() || o.is_zero()) return zero(ring_);
  std::map<ExponentVector, BigRational, GrlexGreater> acc;
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      ExponentVector e = exp_add(a.exp, b.exp);
      auto [it, fresh] = acc.emplace(std::move(e), a.coeff * b.coeff);
      if (!fresh) it->second += a.coeff * b.coeff;
    }
  }
  SparsePolynomial r(ring_);
  r.terms_.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.push_back({e, c});
  return r;
}

SparsePolynomial SparsePolynomial::operator*(const BigRational& c) const {
  if (c == 0) return zero(ring_);
  SparsePolynomial r(*this);
  for (Term& t : r.terms_) t.coeff *= c;
  return r;
}

SparsePolynomial operator*(const BigRational& c, const SparsePolynomial& p) {
  return p * c;
}

bool SparsePolynomial::operator==(const SparsePolynomial& o) const {
  if (!Ring::same(*ring_, *o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exp != o.terms_[i].exp ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

SparsePolynomial SparsePolynomial::pow(std::uint64_t e) const {
  SparsePolynomial r = constant(ring_, BigRational(1));
  SparsePolynomial b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

SparsePolynomial SparsePolynomial::shift(const ExponentVector& delta) const {
  SparsePolynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back({exp_add(t.exp, delta), t.coeff});
  r.canonicalize();  // revalidates sign constraints; order is preserved anyway
  return r;
}

SparsePolynomial SparsePolynomial::derivative(std::size_t v) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.exp.at(v) == 0) continue;
    Term d = t;
    d.coeff *= BigRational(static_cast<long>(t.exp[v]));
    d.exp[v] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(ring_, std::move(out));
}

SparsePolynomial SparsePolynomial::log_derivative(std::size_t v) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.exp.at(v) == 0) continue;
    Term d = t;
    d.coeff *= BigRational(static_cast<long>(t.exp[v]));
    out.push_back(std::move(d));
  }
  return from_terms(ring_, std::move(out));
}

SparsePolynomial SparsePolynomial::substitute(
    const std::map<std::size_t, BigRational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Term s = t;
    for (const auto& [v, val] : values) {
      std::int64_t e = s.exp.at(v);
      if (e == 0) continue;
      if (val == 0 && e < 0)
        fail(ErrorCode::DivideByZero,
             "substituting 0 for '" + ring_->name(v) +
                 "' with negative exponent");
      s.coeff *= tres::pow(val, static_cast<long>(e));
      s.exp[v] = 0;
    }
    if (s.coeff != 0) out.push_back(std::move(s));
  }
  return from_terms(ring_, std::move(out));
}

BigRational SparsePolynomial::evaluate(
    const std::vector<BigRational>& point) const {
  if (point.size() != ring_->size())
    fail(ErrorCode::DimensionMismatch, "evaluation point length");
  BigRational acc(0);
  for (const Term& t : terms_) {
    BigRational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (point[i] == 0 && t.exp[i] < 0)
        fail(ErrorCode::DivideByZero, "evaluating Laurent term at 0");
      v *= tres::pow(point[i], static_cast<long>(t.exp[i]));
    }
    acc += v;
  }
  return acc;
}

SparsePolynomial SparsePolynomial::embed(const RingPtr& bigger) const {
  if (!bigger->extends(*ring_))
    fail(ErrorCode::DimensionMismatch, "target ring does not extend source");
  SparsePolynomial r(bigger);
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    ExponentVector e = t.exp;
    e.resize(bigger->size(), 0);
    r.terms_.push_back({std::move(e), t.coeff});
  }
  // Zero-padding preserves total degree and lex position, so order survives.
  return r;
}

std::map<std::int64_t, SparsePolynomial> SparsePolynomial::as_univariate(
    std::size_t v) const {
  std::map<std::int64_t, std::vector<Term>> buckets;
  for (const Term& t : terms_) {
    Term s = t;
    std::int64_t e = s.exp.at(v);
    s.exp[v] = 0;
    buckets[e].push_back(std::move(s));
  }
  std::map<std::int64_t, SparsePolynomial> out;
  for (auto& [e, ts] : buckets) out.emplace(e, from_terms(ring_, std::move(ts)));
  return out;
}

BigRational SparsePolynomial::content() const {
  if (terms_.empty()) return BigRational(0);
  Int num_gcd(0), den_lcm(1);
  for (const Term& t : terms_) {
    num_gcd = gcd(num_gcd, numerator(t.coeff));
    den_lcm = lcm(den_lcm, denominator(t.coeff));
  }
  BigRational c = make_rational(abs(num_gcd), den_lcm);
  if (terms_.front().coeff < 0) c = -c;
  return c;
}

SparsePolynomial SparsePolynomial::primitive_part() const {
  if (terms_.empty()) return *this;
  return *this * (BigRational(1) / content());
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    BigRational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      if (c < 0) {
        os << " - ";
        c = -c;
      } else {
        os << " + ";
      }
    }
    bool has_vars = !exp_is_zero(t.exp);
    bool wrote_coeff = false;
    if (!has_vars || c != 1) {
      os << tres::to_string(c);
      wrote_coeff = true;
    }
    if (has_vars) {
      bool first_var = !wrote_coeff;
      for (std::size_t v = 0; v < t.exp.size(); ++v) {
        if (t.exp[v] == 0) continue;
        if (!first_var) os << "*";
        first_var = false;
        os << ring_->name(v);
        if (t.exp[v] != 1) os << "^" << t.exp[v];
      }
    }
  }
  return os.str();
}

}  // namespace tres
