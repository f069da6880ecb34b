#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace swarmest {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream id, salt).
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),   static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(salt),   static_cast<std::uint32_t>(salt >> 32)};
  return Rng(seq);
}

// Box-Muller, one variate per call.
inline double gaussian(Rng& rng, double sd) {
  if (sd == 0.0) return 0.0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double u1 = u(rng);
  while (u1 <= 0.0) u1 = u(rng);
  const double u2 = u(rng);
  return sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace swarmest
