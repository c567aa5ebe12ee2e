#pragma once

#include <cstdint>
#include <random>

#include "coc/rational.hpp"

namespace coc {

/// Seeded RNG with hand-rolled distributions.  Standard-library
/// distributions are implementation-defined; reports must be reproducible
/// from (seed, config) alone, so every draw here is pinned at bit level.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform(std::uint64_t n) { return next_u64() % n; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  bool coin() { return (next_u64() & 1u) != 0; }

  /// Random rational p/q with 1 <= q <= max_den, 0 <= p < q.
  Rational rational(std::uint64_t max_den) {
    std::uint64_t q = 1 + uniform(max_den);
    std::uint64_t p = uniform(q);
    return Rational(Integer(p), Integer(q));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coc
