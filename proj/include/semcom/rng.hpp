#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

// Deterministic random number utilities.
//
// Two flavours are provided:
//  - counter-based draws addressed by (seed, counter, stream), used wherever
//    the same value must be reproducible independently of call order
//    (per-slot channel draws, per-sample encoder noise);
//  - a tiny sequential engine for shuffles and dataset synthesis.
//
// Everything here is bit-reproducible across platforms; no <random>
// distributions are used because their output is implementation-defined.

namespace semcom::rng {

// SplitMix64 finalizer (Stafford mix13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// FNV-1a, for folding string ids into seeds.
constexpr std::uint64_t hash_str(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform in [0, 1) with 53 random mantissa bits.
constexpr double to_unit(std::uint64_t u) noexcept {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter,
                                  std::uint64_t stream) noexcept {
  return mix64(combine(combine(seed, stream), counter));
}

inline double counter_unit(std::uint64_t seed, std::uint64_t counter,
                           std::uint64_t stream) noexcept {
  return to_unit(counter_bits(seed, counter, stream));
}

// Exp(1) draw; clamped away from exact zero so downstream gains stay positive.
inline double counter_exp1(std::uint64_t seed, std::uint64_t counter,
                           std::uint64_t stream) noexcept {
  const double u = counter_unit(seed, counter, stream);  // [0, 1)
  const double g = -std::log1p(-u);                      // [0, inf)
  return g < 1e-300 ? 1e-300 : g;
}

// Standard normal via Box-Muller; two sub-draws per value.
inline double counter_normal(std::uint64_t seed, std::uint64_t counter,
                             std::uint64_t stream) noexcept {
  const double u1 = 1.0 - counter_unit(seed, 2 * counter, stream);  // (0, 1]
  const double u2 = counter_unit(seed, 2 * counter + 1, stream);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Sequential SplitMix64 engine.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double unit() noexcept { return to_unit(next()); }

  double normal() noexcept {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Uniform integer in [0, n); rejection sampling, no modulo bias.
  std::uint64_t bounded(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace semcom::rng
