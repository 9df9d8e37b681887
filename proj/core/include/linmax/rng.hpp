#pragma once

#include <cstdint>
#include <random>

namespace linmax {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer. A bijection on 64-bit words, so distinct inputs
/// always give distinct outputs.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `stream` of `seed`: mix64(seed ^ mix64(stream)).
/// For a fixed base seed the map stream -> derived seed is injective.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream));
}

/// Fixed sub-stream identifiers. Each random ingredient of a simulation
/// reads from its own stream so that changing one parameter (say the tail
/// balance) does not perturb the others.
enum class Stream : std::uint64_t {
  InnovationMagnitude = 1,
  InnovationSign = 2,
  CoefficientAmplitude = 3,
  CoefficientSign = 4,
  PointCount = 5,
  PointTime = 6,
  PointMagnitude = 7,
  PointSign = 8,
  LimitCoefficients = 9,
  LimitPoints = 10,
  Innovations = 11,
  Coefficients = 12,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  return derive_seed(seed, static_cast<std::uint64_t>(stream));
}

inline Engine make_engine(std::uint64_t seed, Stream stream) {
  return Engine{derive_seed(seed, stream)};
}

/// Uniform variate on the open interval (0, 1) with 53 random bits.
inline double open_unit(Engine& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace linmax
