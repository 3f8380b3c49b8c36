#ifndef TRES_RNG_HPP
#define TRES_RNG_HPP

#include <cstdint>

#include "tres/rational.hpp"

namespace tres {

/// Deterministic 64-bit generator (splitmix64).  Every randomized routine in
/// the library takes an explicit Rng so that runs are reproducible from the
/// seed alone, independent of platform and thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // span == 0 means the full 64-bit range.
    if (span == 0) return static_cast<std::int64_t>(next_u64());
    // Rejection sampling keeps the distribution exactly uniform.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

  /// Uniform nonzero integer in [-bound, bound].
  Int nonzero(std::int64_t bound) {
    assert(bound >= 1);
    for (;;) {
      std::int64_t v = uniform(-bound, bound);
      if (v != 0) return Int(v);
    }
  }

  /// Uniform integer in [1, bound].
  Int positive(std::int64_t bound) {
    assert(bound >= 1);
    return Int(uniform(1, bound));
  }

  /// Child generator; lets parallel call sites draw independent streams
  /// deterministically.
  Rng fork() { return Rng(next_u64() ^ 0xa5a5a5a5a5a5a5a5ULL); }

 private:
  std::uint64_t state_;
};

}  // namespace tres

#endif  // TRES_RNG_HPP
