#pragma once

#include <cstdint>
#include <utility>

namespace msq {

/// Counter-based deterministic generator: every (seed, stream) pair yields an
/// independent, platform-stable sequence, so parallel workers can draw from
/// disjoint streams in any order.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal pair via Box-Muller (fully specified, no library
  /// distribution involved).
  std::pair<double, double> next_gaussian_pair() {
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

} // namespace msq
