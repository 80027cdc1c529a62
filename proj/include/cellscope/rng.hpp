#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <random>

namespace cellscope {

/// Deterministic random source. The engine is std::mt19937_64 (whose
/// output sequence the standard pins down) and all derived draws avoid
/// std::*_distribution, whose results are implementation-defined, so a
/// fixed seed yields bit-identical streams on every platform.
///
/// Parallel batches derive independent streams from one seed via the
/// `stream` argument: task i uses Rng(seed, i). Results are then
/// independent of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform on [0, bound), bound >= 1. Bitmask rejection keeps the
  /// draw exactly uniform and platform-independent.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound >= 1);
    if (bound == 1) return 0;
    std::uint64_t mask = std::bit_ceil(bound) - 1;
    for (;;) {
      std::uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace cellscope
