#pragma once

#include <span>

#include "swarmest/agent.hpp"

namespace swarmest {

// Which side of the threshold makes an agent walk.
//  WalkWhileClose: walk while the nearest neighbour is closer than the
//    threshold, stop once it is at least the threshold away (expands the swarm).
//  StopWhenClose: the literal reverse, kept for comparison runs.
enum class ThresholdRule { WalkWhileClose, StopWhenClose };

struct DispersionParams {
  double distance_threshold = 8.0;  // cm
  double hysteresis = 1.0;          // cm
  int min_run_ticks = 3;            // straight run after every tumble
  double tumble_probability = 0.1;  // per tick once the straight run elapsed
  int max_turn_burst = 4;           // a tumble turns for 1..max_turn_burst ticks
  ThresholdRule rule = ThresholdRule::WalkWhileClose;
  // A walker holds still instead of stretching the link to a stationary
  // neighbour that already reads farther than `guard_distance`.
  bool link_guard = true;
  double guard_distance = 8.0;  // cm
  int max_hold_ticks = 60;      // after this many held ticks walk anyway, 0 = never

  // Checks the standalone bounds plus threshold + step <= r_comm.
  void validate(double r_comm, double step_length) const;
};

struct DispersionDecision {
  Motion motion = Motion::Stop;
  bool done = false;
  bool holding = false;  // link guard suppressed a walk command
};

// Unconditional run-and-tumble command. Consumes randomness only from
// `rng`; never looks at neighbours.
Motion random_walk_command(WalkState& walk, const DispersionParams& params, Rng& rng);

// Connectivity-preserving threshold walk. `waiting` selects the hysteresis
// branch for an agent that has already stopped.
DispersionDecision dispersion_step(WalkState& walk, bool waiting, std::span<const NeighborReading> readings,
                                   const DispersionParams& params, Rng& rng);

inline DispersionDecision dispersion_step(AgentState& agent, std::span<const NeighborReading> readings,
                                          const DispersionParams& params) {
  return dispersion_step(agent.walk, agent.phase == Phase::WaitingNeighbors, readings, params, agent.rng);
}

// Pure diffusion baseline: the walk ignores neighbours entirely.
inline Motion diffusion_step(WalkState& walk, Rng& rng, const DispersionParams& params) {
  return random_walk_command(walk, params, rng);
}

inline Motion diffusion_step(AgentState& agent, const DispersionParams& params) {
  return diffusion_step(agent.walk, agent.rng, params);
}

}  // namespace swarmest
