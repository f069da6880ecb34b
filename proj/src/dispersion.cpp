#include "swarmest/dispersion.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "swarmest/errors.hpp"

namespace swarmest {

void DispersionParams::validate(double r_comm, double step_length) const {
  if (!(distance_threshold > 0.0) || !(distance_threshold < r_comm)) {
    throw ConfigError("d_thr", "must satisfy 0 < d_thr < r_comm");
  }
  if (!(hysteresis >= 0.0)) throw ConfigError("hysteresis", "must be >= 0");
  if (distance_threshold + step_length > r_comm + 1e-12) {
    throw ConfigError("d_thr", "d_thr + speed*dt must not exceed r_comm");
  }
  if (min_run_ticks < 0) throw ConfigError("min_run", "must be >= 0");
  if (!(tumble_probability >= 0.0 && tumble_probability <= 1.0)) {
    throw ConfigError("tumble_prob", "must lie in [0, 1]");
  }
  if (max_turn_burst < 1) throw ConfigError("turn_burst", "must be >= 1");
  if (!(guard_distance > 0.0) || guard_distance > r_comm) {
    throw ConfigError("guard_distance", "must satisfy 0 < guard_distance <= r_comm");
  }
}

Motion random_walk_command(WalkState& walk, const DispersionParams& params, Rng& rng) {
  if (walk.turn_remaining > 0) {
    --walk.turn_remaining;
    return walk.turn;
  }
  if (walk.run_elapsed < params.min_run_ticks) {
    ++walk.run_elapsed;
    return Motion::Forward;
  }
  std::bernoulli_distribution tumble(params.tumble_probability);
  if (tumble(rng)) {
    std::bernoulli_distribution left(0.5);
    std::uniform_int_distribution<int> burst(1, params.max_turn_burst);
    walk.turn = left(rng) ? Motion::TurnLeft : Motion::TurnRight;
    walk.turn_remaining = burst(rng) - 1;
    walk.run_elapsed = 0;
    return walk.turn;
  }
  ++walk.run_elapsed;
  return Motion::Forward;
}

DispersionDecision dispersion_step(WalkState& walk, bool waiting, std::span<const NeighborReading> readings,
                                   const DispersionParams& params, Rng& rng) {
  // isolated: hold still
  if (readings.empty()) return {Motion::Stop, false};

  double d_min = std::numeric_limits<double>::infinity();
  for (const auto& r : readings) d_min = std::min(d_min, r.distance);

  const double thr = params.distance_threshold;
  bool keep_walking = false;
  if (params.rule == ThresholdRule::WalkWhileClose) {
    keep_walking = waiting ? d_min < thr - params.hysteresis : d_min < thr;
  } else {
    keep_walking = waiting ? d_min > thr + params.hysteresis : d_min >= thr;
  }

  if (keep_walking) {
    const bool strands_neighbor = params.link_guard && std::any_of(readings.begin(), readings.end(), [&](const NeighborReading& r) {
      return r.stationary && r.distance > params.guard_distance;
    });
    if (strands_neighbor && (params.max_hold_ticks == 0 || walk.hold_ticks < params.max_hold_ticks)) {
      ++walk.hold_ticks;
      return {Motion::Stop, false, true};
    }
    walk.hold_ticks = 0;
    return {random_walk_command(walk, params, rng), false};
  }
  walk = WalkState{};
  return {Motion::Stop, true};
}

}  // namespace swarmest
