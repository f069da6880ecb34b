#include "swarmest/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>

#include "swarmest/errors.hpp"
#include "swarmest/network.hpp"

namespace swarmest {

void CbptParams::validate() const {
  if (!(tolerance >= 0.0)) throw ConfigError("cbpt_tol", "must be >= 0");
  if (!(stop_band >= 0.0)) throw ConfigError("cbpt_stop_band", "must be >= 0");
  if (!(resume_band >= stop_band)) throw ConfigError("cbpt_resume_band", "must be >= cbpt_stop_band");
  if (patience_limit < 1) throw ConfigError("cbpt_patience", "must be >= 1");
  if (max_turn_burst < 1) throw ConfigError("cbpt_turn_burst", "must be >= 1");
}

Motion cbpt_step(CbptController& ctl, double consensus, double sample, const CbptParams& params, Rng& rng) {
  const double o = std::abs(sample - consensus);
  ctl.objective = o;
  if (ctl.parked && o <= params.resume_band) return Motion::Stop;
  ctl.parked = false;
  if (o <= params.stop_band) {
    ctl.parked = true;
    ctl.best = o;
    ctl.patience = 0;
    ctl.turn_remaining = 0;
    return Motion::Stop;
  }
  auto turn_motion = [&ctl] { return ctl.preference == Turn::Left ? Motion::TurnLeft : Motion::TurnRight; };
  if (ctl.turn_remaining > 0) {
    --ctl.turn_remaining;
    if (ctl.turn_remaining == 0) ctl.best = std::numeric_limits<double>::infinity();
    return turn_motion();
  }
  if (o < ctl.best - params.tolerance) {
    ctl.best = o;
    ctl.patience = 0;
    return Motion::Forward;
  }
  const bool worse = o > ctl.best + 2.0 * params.tolerance;
  if (++ctl.patience < params.patience_limit && !worse) return Motion::Forward;

  ctl.preference = ctl.preference == Turn::Left ? Turn::Right : Turn::Left;
  std::uniform_int_distribution<int> burst(1, params.max_turn_burst);
  ctl.turn_remaining = burst(rng) - 1;
  ctl.patience = 0;
  // The next sample after the burst becomes the new baseline.
  ctl.best = ctl.turn_remaining == 0 ? std::numeric_limits<double>::infinity() : o;
  return turn_motion();
}

double running_mean_update(double mean, int count, double sample) {
  return (mean * static_cast<double>(count) + sample) / static_cast<double>(count + 1);
}

void SimulationConfig::validate() const {
  if (n < 1) throw ConfigError("n", "must be >= 1");
  if (!(r_comm > 0.0)) throw ConfigError("r_comm", "must be > 0");
  if (!(range_noise >= 0.0)) throw ConfigError("range_noise", "must be >= 0");
  if (!(r_cover > 0.0)) throw ConfigError("r_cover", "must be > 0");
  if (!(cover_cell > 0.0) || cover_cell > r_cover / 5.0 + 1e-12) {
    throw ConfigError("cover_cell", "must satisfy 0 < cover_cell <= r_cover / 5");
  }
  if (!(region.size > 0.0)) throw ConfigError("region_size", "must be > 0");
  if (!(gt_resolution > 0.0) || gt_resolution >= region.size) {
    throw ConfigError("gt_resolution", "must satisfy 0 < gt_resolution < region.size");
  }
  if (sensor_noise_sd && !(*sensor_noise_sd >= 0.0)) throw ConfigError("sensor_noise", "must be >= 0");
  if (!(init_radius >= 0.0)) throw ConfigError("init_radius", "must be >= 0");
  if (total_ticks < 0) throw ConfigError("ticks", "must be >= 0");
  if (quorum_timeout < 1) throw ConfigError("quorum_timeout", "must be >= 1");
  if (t_sw < 1) throw ConfigError("t_sw", "must be >= 1");
  if (field.kind != FieldKind::Grid && !(field.slope != 0.0 && std::isfinite(field.slope))) {
    throw ConfigError("slope", "must be finite and non-zero");
  }
  motion.validate();
  dispersion.validate(r_comm, motion.step_length());
  consensus.validate();
  resolved_cbpt().validate();
}

double SimulationConfig::resolved_sensor_noise() const {
  if (sensor_noise_sd) return *sensor_noise_sd;
  if (field.kind == FieldKind::Grid) {
    const auto [lo, hi] = std::minmax_element(field.grid.values.begin(), field.grid.values.end());
    return field.grid.values.empty() ? 0.0 : 0.02 * (*hi - *lo);
  }
  return 0.02 * std::abs(field.slope) * region.reference_radius();
}

CbptParams SimulationConfig::resolved_cbpt() const {
  CbptParams p;
  p.tolerance = cbpt_tolerance.value_or(resolved_sensor_noise());
  p.stop_band = cbpt_stop_band.value_or(p.tolerance);
  p.resume_band = cbpt_resume_band.value_or(3.0 * p.stop_band);
  p.patience_limit = cbpt_patience;
  p.max_turn_burst = cbpt_turn_burst;
  return p;
}

namespace {

constexpr std::uint64_t kPlacementSalt = 0;
constexpr std::uint64_t kAgentSalt = 1;
constexpr double kUnheard = std::numeric_limits<double>::quiet_NaN();

Vec2 start_center(const SimulationConfig& config) {
  return config.field.kind == FieldKind::Grid ? config.region.center : config.field.center;
}

void enter_averaging(AgentState& a, double sample) {
  a.phase = Phase::Averaging;
  a.holding = false;
  a.estimate = sample;
  a.frozen_sample = sample;
  a.averaging_ticks = 0;
  a.motion = Motion::Stop;
}

void enter_cbpt(AgentState& a) {
  a.phase = Phase::CBPT;
  a.cbpt = CbptController{};
}

bool exploration_finished(const World& world) {
  switch (world.mode) {
    case ScenarioMode::Full:
      return std::all_of(world.agents.begin(), world.agents.end(),
                         [](const AgentState& a) { return phase_index(a.phase) >= phase_index(Phase::Averaging); });
    case ScenarioMode::DispersionOnly:
      return std::all_of(world.agents.begin(), world.agents.end(),
                         [](const AgentState& a) { return a.motion == Motion::Stop; });
    case ScenarioMode::Control:
      return std::all_of(world.agents.begin(), world.agents.end(),
                         [](const AgentState& a) { return a.phase == Phase::CBPT; });
    case ScenarioMode::DiffusionOnly:
      return false;
  }
  return false;
}

}  // namespace

World make_world(const SimulationConfig& config, ScenarioMode mode) {
  config.validate();
  World w;
  w.mode = mode;
  w.sensor_noise_sd = config.resolved_sensor_noise();
  w.cbpt = config.resolved_cbpt();
  w.ground_truth = ground_truth_mean(config.field, config.region, config.gt_resolution);
  w.ground_truth_position = config.field.kind == FieldKind::Grid
                                ? w.ground_truth
                                : contour_coordinate_of_value(config.field, w.ground_truth);

  Rng placement = make_stream(config.seed, 0, kPlacementSalt);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec2 c = start_center(config);
  w.agents.resize(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    AgentState& a = w.agents[i];
    a.id = static_cast<int>(i);
    const double r = config.init_radius * std::sqrt(unit(placement));
    const double theta = 2.0 * std::numbers::pi * unit(placement);
    a.position = c + Vec2{r * std::cos(theta), r * std::sin(theta)};
    a.heading = wrap_angle(2.0 * std::numbers::pi * unit(placement));
    a.estimate = field_value(config.field, a.position);
    a.phase = Phase::Dispersing;
    a.motion = Motion::Stop;
    a.rng = make_stream(config.seed, i, kAgentSalt);
  }
  return w;
}

MetricsRecord measure(const World& world, const SimulationConfig& config) {
  std::vector<Vec2> positions;
  std::vector<double> estimates;
  positions.reserve(world.agents.size());
  estimates.reserve(world.agents.size());
  for (const auto& a : world.agents) {
    positions.push_back(a.position);
    estimates.push_back(a.estimate);
  }
  MetricsRecord m;
  m.time = static_cast<double>(world.tick) * config.motion.dt;
  m.coverage = coverage_area(positions, config.r_cover, config.cover_cell);
  const ProximityGraph g = build_proximity_graph(positions, config.r_comm);
  m.mean_degree = mean_degree(g);
  m.giant_component = giant_component_size(g);

  std::vector<double> mapped;
  if (config.field.kind == FieldKind::Grid) {
    // grid: value under the robot
    mapped.reserve(positions.size());
    for (const auto& p : positions) mapped.push_back(field_value(config.field, p));
  } else {
    mapped = positions_to_estimates(positions, config.field);
  }
  m.position = accuracy_errors(mapped, world.ground_truth_position);
  m.estimate = accuracy_errors(estimates, world.ground_truth);
  m.robots_in_region = robots_in_region(positions, config.region);
  return m;
}

MetricsRecord advance_tick(World& world, const SimulationConfig& config) {
  const std::size_t n = world.agents.size();
  std::vector<Vec2> positions(n);
  std::vector<double> estimates(n);
  std::vector<Phase> phases(n);
  std::vector<bool> stationary(n);
  for (std::size_t i = 0; i < n; ++i) {
    positions[i] = world.agents[i].position;
    estimates[i] = world.agents[i].estimate;
    phases[i] = world.agents[i].phase;
    stationary[i] = reports_done(phases[i]) || world.agents[i].holding;
  }

  const double alpha = config.consensus.alpha;
  std::vector<double> shared;
  for (std::size_t i = 0; i < n; ++i) {
    AgentState& a = world.agents[i];
    std::vector<NeighborReading> readings;
    if (world.mode != ScenarioMode::Control && world.mode != ScenarioMode::DiffusionOnly) {
      readings = sense_neighbors(static_cast<int>(i), positions, estimates, config.r_comm, config.range_noise, a.rng);
      if (a.range_memory.size() != n) a.range_memory.assign(n, kUnheard);
      std::vector<double> memory(n, kUnheard);
      const double w = config.range_smoothing;
      for (auto& r : readings) {
        const auto j = static_cast<std::size_t>(r.neighbor);
        r.done = reports_done(phases[j]);
        r.stationary = stationary[j];
        if (!std::isnan(a.range_memory[j])) r.distance = w * r.distance + (1.0 - w) * a.range_memory[j];
        memory[j] = r.distance;
      }
      a.range_memory = std::move(memory);
    }
    const double s = sample_field(config.field, a.position, world.sensor_noise_sd, a.rng);

    shared.clear();
    for (const auto& r : readings) {
      if (shares_estimate(phases[static_cast<std::size_t>(r.neighbor)])) shared.push_back(r.estimate);
    }

    switch (world.mode) {
      case ScenarioMode::DiffusionOnly:
        a.motion = diffusion_step(a, config.dispersion);
        a.estimate = s;
        ++a.sample_count;
        break;

      case ScenarioMode::Control:
        if (a.phase == Phase::CBPT) {
          a.motion = cbpt_step(a.cbpt, a.estimate, s, world.cbpt, a.rng);
        } else {
          a.motion = diffusion_step(a, config.dispersion);
          a.estimate = a.sample_count == 0 ? s : running_mean_update(a.estimate, a.sample_count, s);
          ++a.sample_count;
          if (a.sample_count >= config.t_sw) enter_cbpt(a);
        }
        break;

      case ScenarioMode::DispersionOnly:
      case ScenarioMode::Full:
        switch (a.phase) {
          case Phase::Dispersing:
          case Phase::WaitingNeighbors: {
            const DispersionDecision d = dispersion_step(a, readings, config.dispersion);
            a.motion = d.motion;
            a.holding = d.holding;
            a.phase = d.done ? Phase::WaitingNeighbors : Phase::Dispersing;
            a.estimate = s;
            ++a.sample_count;
            a.stall_ticks = d.motion == Motion::Stop ? a.stall_ticks + 1 : 0;
            if (world.mode == ScenarioMode::Full) {
              const bool quorum =
                  d.done && std::all_of(readings.begin(), readings.end(), [&](const NeighborReading& r) {
                    return reports_done(phases[static_cast<std::size_t>(r.neighbor)]);
                  });
              if (quorum || a.stall_ticks >= config.quorum_timeout) enter_averaging(a, s);
            }
            break;
          }
          case Phase::Averaging: {
            const double input = config.freeze_samples ? a.frozen_sample : s;
            a.estimate = degroot_update(a.estimate, input, shared, alpha);
            a.motion = Motion::Stop;
            if (++a.averaging_ticks >= config.consensus.t_comm) enter_cbpt(a);
            break;
          }
          case Phase::CBPT:
            a.motion = cbpt_step(a.cbpt, a.estimate, s, world.cbpt, a.rng);
            if (!shared.empty()) {
              a.estimate = degroot_update(a.estimate, config.cbpt_live_samples ? s : a.frozen_sample, shared, alpha);
            }
            break;
          case Phase::Stopped:
            a.motion = Motion::Stop;
            break;
        }
        break;
    }
  }

  for (auto& a : world.agents) step_kinematics(a, config.motion);
  ++world.tick;
  return measure(world, config);
}

namespace {

void log_trajectory(const World& world, const SimulationConfig& config, std::vector<TrajectoryRow>& out) {
  const double t = static_cast<double>(world.tick) * config.motion.dt;
  for (const auto& a : world.agents) out.push_back({t, a.id, a.position, a.heading, a.phase, a.estimate});
}

}  // namespace

ScenarioResult run_scenario(const SimulationConfig& config, ScenarioMode mode) {
  World world = make_world(config, mode);
  ScenarioResult result;
  result.metrics.reserve(static_cast<std::size_t>(config.total_ticks) + 1);
  result.metrics.push_back(measure(world, config));
  if (config.record_trajectory) log_trajectory(world, config, result.trajectory);
  for (int t = 0; t < config.total_ticks; ++t) {
    result.metrics.push_back(advance_tick(world, config));
    if (config.record_trajectory) log_trajectory(world, config, result.trajectory);
    if (!result.exploration_end_tick && exploration_finished(world)) result.exploration_end_tick = world.tick;
  }
  result.final_agents = std::move(world.agents);
  return result;
}

ScenarioResult run_control_experiment(SimulationConfig config, int t_sw) {
  if (t_sw < 1) throw ConfigError("t_sw", "must be >= 1");
  config.t_sw = t_sw;
  return run_scenario(config, ScenarioMode::Control);
}

}  // namespace swarmest
