#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace stfgacn {

// All randomness in the library flows through this splitmix64-based PRNG so
// that runs are bit-identical across platforms and compilers. The standard
// <random> distributions are implementation-defined and must not be used.

/// One splitmix64 output for the given state value (stateless mix).
std::uint64_t mix64(std::uint64_t x);

/// Hash-combine a seed with a list of keys. Order-sensitive.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  double uniform(double lo, double hi);

  /// Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double gaussian();

 private:
  std::uint64_t state_;
};

/// Counter-based standard normal: a pure function of (seed, key). Used where
/// a draw must be reproducible from its arguments alone.
double gaussian_at(std::uint64_t seed, std::uint64_t key);

/// Deterministic Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& values, Prng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace stfgacn
