#pragma once

#include <cmath>
#include <cstdint>

namespace aoisim {

// SplitMix64 stream: a 64-bit counter advanced by a fixed odd gamma, output
// passed through the murmur-style finalizer. Fast, seedable, and replaying a
// seed reproduces the exact draw sequence. One stream per simulation
// replicate; streams are never shared.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, so log() and
  // division by the result are always finite.
  double next_u01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

  double next_exponential(double mean) { return -mean * std::log(next_u01()); }

  // Box-Muller; consumes exactly two uniforms per call (no cached spare).
  double next_normal(double mu, double sigma) {
    const double u1 = next_u01();
    const double u2 = next_u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(2.0 * kPi * u2);
  }

  // Uniform index in {0, ..., n-1}; consumes exactly one draw.
  int next_index(int n) {
    const int i = static_cast<int>(next_u01() * n);
    return i < n ? i : n - 1;
  }

  // Seed for substream r of a base seed. mix64 is a bijection and gamma is
  // odd, so distinct r give distinct seeds. Used for replicate seeds and for
  // auxiliary streams (heterogeneous model generation, coupled-run selection).
  static std::uint64_t derive(std::uint64_t base_seed, std::uint64_t r) {
    return mix64(base_seed + kGamma * (r + 1));
  }

  static constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::uint64_t state_;
};

}  // namespace aoisim
