#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "swarmest/geometry.hpp"
#include "swarmest/rng.hpp"

namespace swarmest {

enum class Phase : std::uint8_t { Dispersing, WaitingNeighbors, Averaging, CBPT, Stopped };
enum class Motion : std::uint8_t { Forward, TurnLeft, TurnRight, Stop };
enum class Turn : std::uint8_t { Left, Right };

const char* to_string(Phase p);
const char* to_string(Motion m);

// Ordinal used by the phase-monotonicity check.
constexpr int phase_index(Phase p) {
  switch (p) {
    case Phase::Dispersing: return 0;
    case Phase::WaitingNeighbors: return 1;
    case Phase::Averaging: return 2;
    case Phase::CBPT: return 3;
    case Phase::Stopped: return 4;
  }
  return 0;
}

// A phase at or past WaitingNeighbors reports its exploration as finished.
constexpr bool reports_done(Phase p) { return phase_index(p) >= phase_index(Phase::WaitingNeighbors); }

// Phases whose estimate is a consensus value shared with neighbours.
constexpr bool shares_estimate(Phase p) { return p == Phase::Averaging || p == Phase::CBPT; }

// Run-and-tumble bookkeeping shared by the dispersion and diffusion walks.
struct WalkState {
  int run_elapsed = 0;
  int turn_remaining = 0;
  Motion turn = Motion::TurnLeft;
  int hold_ticks = 0;  // consecutive ticks held by the link guard
};

// Improvement-memory run-and-turn controller used for consensus-based
// phototaxis. `best` is the lowest objective seen since the last reset.
struct CbptController {
  double objective = std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  Turn preference = Turn::Left;
  int patience = 0;
  int turn_remaining = 0;
  bool parked = false;  // stopped inside the band, waiting for the objective to leave the resume band
};

struct AgentState {
  int id = 0;
  Vec2 position;
  double heading = 0.0;  // [0, 2pi)
  double estimate = 0.0;
  int sample_count = 0;
  Phase phase = Phase::Dispersing;
  Motion motion = Motion::Stop;
  WalkState walk;
  CbptController cbpt;
  bool holding = false;     // walking wanted but held by the link guard
  int stall_ticks = 0;      // consecutive Stop ticks during exploration
  int averaging_ticks = 0;  // averaging updates performed so far
  double frozen_sample = 0.0;
  std::vector<double> range_memory;  // smoothed range per neighbour id, NaN if unheard last tick
  Rng rng;
};

struct MotionParams {
  double speed = 1.0;                         // cm/s
  double turn_rate = 0.78539816339744830962;  // rad/s
  double dt = 1.0;                            // s
  double heading_noise_sd = 0.05;             // rad per tick

  double step_length() const { return speed * dt; }
  void validate() const;
};

// What an agent hears from one neighbour: the range estimate plus the
// neighbour's broadcast state.
struct NeighborReading {
  int neighbor = 0;
  double distance = 0.0;  // estimated, cm
  double estimate = 0.0;  // neighbour's current estimate
  bool done = false;
  bool stationary = false;  // done or holding
};

double wrap_angle(double a);

// One tick of motion for `agent.motion`. Forward moves by speed*dt along the
// heading and then perturbs the heading; turns rotate by +-turn_rate*dt.
void step_kinematics(AgentState& agent, const MotionParams& params);

// Readings for every other agent within r_comm (inclusive). The estimated
// distance is the true distance scaled by (1 + eps), eps ~ N(0, fraction^2),
// clamped to stay positive. Noise draws come from `rng`.
std::vector<NeighborReading> sense_neighbors(int self, std::span<const Vec2> positions,
                                             std::span<const double> estimates, double r_comm,
                                             double range_noise_fraction, Rng& rng);

}  // namespace swarmest
