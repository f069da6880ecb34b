#include "swarmest/agent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swarmest/errors.hpp"

namespace swarmest {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Dispersing: return "dispersing";
    case Phase::WaitingNeighbors: return "waiting";
    case Phase::Averaging: return "averaging";
    case Phase::CBPT: return "cbpt";
    case Phase::Stopped: return "stopped";
  }
  return "?";
}

const char* to_string(Motion m) {
  switch (m) {
    case Motion::Forward: return "forward";
    case Motion::TurnLeft: return "left";
    case Motion::TurnRight: return "right";
    case Motion::Stop: return "stop";
  }
  return "?";
}

void MotionParams::validate() const {
  if (!(speed > 0.0)) throw ConfigError("speed", "must be > 0");
  if (!(turn_rate > 0.0)) throw ConfigError("turn_rate", "must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
  if (!(heading_noise_sd >= 0.0)) throw ConfigError("heading_noise", "must be >= 0");
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  // fmod can land on exactly 2pi
  if (a >= two_pi) a = 0.0;
  return a;
}

void step_kinematics(AgentState& agent, const MotionParams& params) {
  switch (agent.motion) {
    case Motion::Stop:
      return;
    case Motion::Forward: {
      const double step = params.step_length();
      agent.position = agent.position + Vec2{std::cos(agent.heading), std::sin(agent.heading)} * step;
      agent.heading = wrap_angle(agent.heading + gaussian(agent.rng, params.heading_noise_sd));
      return;
    }
    case Motion::TurnLeft:
      agent.heading = wrap_angle(agent.heading + params.turn_rate * params.dt);
      return;
    case Motion::TurnRight:
      agent.heading = wrap_angle(agent.heading - params.turn_rate * params.dt);
      return;
  }
}

std::vector<NeighborReading> sense_neighbors(int self, std::span<const Vec2> positions,
                                             std::span<const double> estimates, double r_comm,
                                             double range_noise_fraction, Rng& rng) {
  std::vector<NeighborReading> out;
  const Vec2 me = positions[static_cast<std::size_t>(self)];
  const double r2 = r_comm * r_comm;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (static_cast<int>(j) == self) continue;
    const Vec2 d = positions[j] - me;
    if (d.squared_norm() > r2) continue;
    const double true_dist = std::sqrt(d.squared_norm());
    double est = true_dist * (1.0 + gaussian(rng, range_noise_fraction));
    // floor for coincident agents
    est = std::max(est, 1e-6);
    out.push_back({static_cast<int>(j), est, estimates.empty() ? 0.0 : estimates[j]});
  }
  return out;
}

}  // namespace swarmest
