#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace hybridgrid {

/// The project-wide random engine. std::mt19937_64 has a fully specified
/// output sequence, so a seed reproduces the same draws on every platform.
/// Distributions are implemented here rather than taken from <random>,
/// whose distribution algorithms are implementation-defined.
using Engine = std::mt19937_64;

/// Derives the seed of a named sub-stream ("load-gen", "solver", ...) from
/// the top-level run seed. Enabling one feature never shifts another's draws.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h;  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Engine make_engine(std::uint64_t seed, std::string_view stream) {
  return Engine{substream_seed(seed, stream)};
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(eng) * static_cast<double>(n)) % n;
}

/// Standard normal draw (Box-Muller, one value per call).
inline double standard_normal(Engine& eng) {
  double u1 = uniform01(eng);
  while (u1 <= 0.0) u1 = uniform01(eng);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace hybridgrid
