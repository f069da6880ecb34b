#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarmest/consensus.hpp"
#include "swarmest/rng.hpp"

namespace swarmest {

// Consensus on frozen random geometric graphs in the unit square. Each
// agent measures a cone centred in the square (s = distance to the centre,
// plus optional noise) and starts from its own measurement.
struct StaticStudyParams {
  std::size_t n = 50;
  int repetitions = 200;
  std::vector<double> range_ratios;
  ConsensusParams consensus;
  PassageMode passage_mode = PassageMode::DistanceToFinal;
  double sensor_noise_sd = 0.0;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct StaticSample {
  double mean_degree = 0.0;
  std::size_t giant_component = 0;
  double steady_precision = 0.0;  // E_P after t_comm updates
  std::optional<std::size_t> passage_time;
  double lambda2 = 0.0;
};

struct StaticStudyRow {
  double range_ratio = 0.0;
  double mean_degree = 0.0;
  double steady_precision = 0.0;
  double passage_time = 0.0;  // mean over repetitions that reached the band, NaN if none did
  double lambda2 = 0.0;
  double median_lambda2 = 0.0;
  double connected_fraction = 0.0;
  std::size_t spectral_mismatches = 0;  // samples where (giant == N) != (lambda2 < 1)
};

StaticSample static_sample(std::size_t n, double range_ratio, const ConsensusParams& consensus, PassageMode mode,
                           double sensor_noise_sd, Rng& rng);

// One row per range ratio, in input order.
std::vector<StaticStudyRow> run_static_study(const StaticStudyParams& params);

// "lo:hi:count" -> count evenly spaced values from lo to hi inclusive.
std::vector<double> parse_linspace(const std::string& text);

// lambda2 within this margin of 1 counts as 1.
inline constexpr double kSpectralGapTolerance = 1e-9;

}  // namespace swarmest
