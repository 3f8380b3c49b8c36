#ifndef TRES_MONOMIAL_HPP
#define TRES_MONOMIAL_HPP

#include <cassert>
#include <cstdint>
#include <vector>

namespace tres {

/// Exponent vector of a (Laurent) monomial.  Entries may be negative for
/// torus variables only; that restriction is enforced at the ring level.
using ExponentVector = std::vector<std::int64_t>;

inline std::int64_t total_degree(const ExponentVector& e) {
  std::int64_t s = 0;
  for (auto v : e) s += v;
  return s;
}

/// Graded lexicographic comparison: higher total degree wins; ties broken
/// lexicographically with earlier variables more significant.
/// Returns -1, 0, or +1 as a <, ==, > b.
inline int grlex_compare(const ExponentVector& a, const ExponentVector& b) {
  assert(a.size() == b.size());
  std::int64_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

struct GrlexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    return grlex_compare(a, b) < 0;
  }
};

struct GrlexGreater {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    return grlex_compare(a, b) > 0;
  }
};

inline ExponentVector exp_add(const ExponentVector& a,
                              const ExponentVector& b) {
  assert(a.size() == b.size());
  ExponentVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline ExponentVector exp_sub(const ExponentVector& a,
                              const ExponentVector& b) {
  assert(a.size() == b.size());
  ExponentVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool exp_is_zero(const ExponentVector& e) {
  for (auto v : e)
    if (v != 0) return false;
  return true;
}

}  // namespace tres

#endif  // TRES_MONOMIAL_HPP
