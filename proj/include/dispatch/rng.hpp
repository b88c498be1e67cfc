#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dispatch {

/// Seed for stream `stream` of a master seed (splitmix64 finalizer).
/// Every randomized component draws its seed through this, so any run can
/// be reproduced from the master seed and the documented stream index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// mt19937_64 plus hand-rolled conversions. The standard pins the raw
/// generator sequence but not the distributions, so the conversions live
/// here to keep seeded streams bit-stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  /// Sum of `phases` independent unit-mean exponentials.
  double erlang(int phases) {
    double s = 0.0;
    for (int i = 0; i < phases; ++i) s += exponential(1.0);
    return s;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dispatch
