#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace psdme {

/// splitmix64 finalizer; used to turn (seed, index) pairs into seed material.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Seed for an independent substream identified by (seed, stream).
/// Trial- or repetition-level parallelism keys every unit of work off its
/// index, so results never depend on how work is scheduled.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
  const std::uint64_t a = mix64(seed + 0x9E3779B97F4A7C15ULL);
  const std::uint64_t b = mix64(stream + 0xD1B54A32D192ED03ULL);
  return mix64(a ^ (b + 0x9E3779B97F4A7C15ULL));
}

/// Deterministic random source. The engine is the standard-specified
/// mt19937_64; the uniform and gaussian transforms are implemented here so
/// that sampled values do not depend on the standard library's
/// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1).
  double open01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = open01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace psdme
