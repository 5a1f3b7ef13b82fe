#pragma once

#include <cmath>
#include <cstdint>

namespace mmsim::rng {

// Substream tags. Every draw in a simulation comes from a stream derived
// from (master seed, tag, key_a, key_b), so adding a draw in one subsystem
// never shifts the sequence seen by another, and per-agent streams keyed by
// (step, agent) make the decision kernel order-independent.
enum class Tag : std::uint64_t {
  Topology = 1,
  InitInfo = 2,
  InitShuffle = 3,
  InitTraits = 4,
  Fundamental = 5,
  Drive = 6,
  Decision = 7,
  TieBreak = 8,
  Oracle = 100,  // test-only streams
};

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// splitmix64 sequence starting from a mixed state.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // (lo, hi), endpoints excluded
  double uniform_open(double lo, double hi) {
    double u;
    do {
      u = next_double();
    } while (u == 0.0);
    return lo + u * (hi - lo);
  }

  // unbiased integer in [0, n), n > 0 (Lemire multiply-shift with rejection)
  std::uint64_t uniform_int(std::uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t thresh = (0 - n) % n;
      while (lo < thresh) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // inclusive [lo, hi]
  int uniform_int_range(int lo, int hi) {
    return lo + static_cast<int>(uniform_int(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Box-Muller; one normal per call, two uniforms consumed
  double normal(double mean, double stddev) {
    double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
  }

  // UniformRandomBitGenerator interface
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t state_;
};

inline Stream derive(std::uint64_t seed, Tag tag, std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ mix64(static_cast<std::uint64_t>(tag)));
  s = mix64(s ^ mix64(a));
  s = mix64(s ^ mix64(b));
  return Stream(s);
}

}  // namespace mmsim::rng
