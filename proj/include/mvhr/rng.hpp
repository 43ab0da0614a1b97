#pragma once

#include <cstdint>
#include <random>

namespace mvhr {

/// Seeded generator used for every random choice in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard.
/// Distributions are implemented here from raw 64-bit draws (the standard library
/// distributions are implementation-defined), so a (seed, call sequence) pair produces
/// the same values on every platform. Bump kRngVersion whenever the derivation changes.
class Rng {
 public:
  static constexpr const char* kRngVersion = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Derives an independent stream for a named sub-task.
  Rng fork(std::uint64_t salt) {
    std::uint64_t s = next() ^ (salt * 0x9e3779b97f4a7c15ULL);
    return Rng(s);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mvhr
