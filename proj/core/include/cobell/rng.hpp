#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cobell::rng {

// splitmix64 finalizer (Vigna); bijective, used to spread seed material.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Independent stream seed for (master, tag, index). Scan points, Bell-curve
/// points and QKD rounds each draw from their own stream so results do not
/// depend on evaluation order or thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index) {
    std::uint64_t z = master;
    z = mix64(z ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
    z = mix64(z ^ (0xBF58476D1CE4E5B9ULL * (index + 1)));
    return z;
}

// Stream tags used across the library. Keeping them in one table avoids
// accidental stream reuse between operations sharing a master seed.
namespace stream_tag {
inline constexpr std::uint64_t calibration = 0;
inline constexpr std::uint64_t scan_point = 1;
inline constexpr std::uint64_t bell_ab = 2;
inline constexpr std::uint64_t bell_ac = 3;
inline constexpr std::uint64_t bell_bc = 4;
inline constexpr std::uint64_t qkd_round = 5;
inline constexpr std::uint64_t qkd_phase = 6;
}  // namespace stream_tag

/// Deterministic variate source. The engine (mt19937_64) is bit-exact per
/// the standard; the uniform/normal transforms are written out here because
/// std::*_distribution output is implementation-defined.
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    /// 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, 2π).
    double uniform_angle() { return uniform01() * 2.0 * std::numbers::pi; }

    /// Uniform integer in [0, n); n must be nonzero.
    std::uint64_t uniform_index(std::uint64_t n) {
        std::uint64_t i = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    /// Standard normal via Box-Muller; consumes two uniforms per call.
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log1p(-u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace cobell::rng
