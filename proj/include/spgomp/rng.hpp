#pragma once

#include <cmath>
#include <cstdint>

// Frozen random number generation. Every reproducibility promise in this
// library rests on the exact algorithms below, so none of them may change:
//
//   * xoshiro256++ for the uniform 64-bit stream, state seeded by four
//     successive splitmix64 outputs.
//   * uniform doubles from the top 53 bits: (bits >> 11) * 2^-53 in [0,1),
//     and ((bits >> 11) + 1) * 2^-53 in (0,1].
//   * standard normals by the trigonometric Box-Muller transform; the pair
//     is consumed in order (cos first), the second value is cached.
//   * bounded integers by masked rejection, so no modulo bias.
//
// The integer streams are bit-exact on any conforming platform. The double
// streams additionally depend on libm's sqrt/log/cos/sin rounding, which is
// stable on a given toolchain.

namespace spgomp {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// The splitmix64 output mix alone, as a pure 64 -> 64 hash.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1], safe as a log argument
  double uniform01_open_zero() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_open_zero();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Folds words into a master seed one at a time; used to give every benchmark
// trial its own independent stream. Pure, so trial seeds never depend on the
// order trials actually execute in. The splitmix-style increment keeps the
// fold order-sensitive: derive(a, b) and derive(b, a) differ.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t word) {
  return mix64(master + (word + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace spgomp
