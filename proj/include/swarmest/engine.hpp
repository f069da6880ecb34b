#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "swarmest/agent.hpp"
#include "swarmest/consensus.hpp"
#include "swarmest/dispersion.hpp"
#include "swarmest/environment.hpp"
#include "swarmest/metrics.hpp"

namespace swarmest {

struct CbptParams {
  double tolerance = 0.0;  // minimum objective drop that counts as progress
  int patience_limit = 5;  // ticks without progress before turning
  double stop_band = 0.0;  // objective at or below which the agent halts
  double resume_band = 0.0;  // a halted agent moves again only above this
  int max_turn_burst = 4;  // a turn lasts 1..max_turn_burst ticks

  void validate() const;
};

// One consensus-based phototaxis decision. The objective is |sample - consensus|;
// progress keeps the agent going straight, stagnation for `patience_limit`
// ticks triggers a turn burst of random length in alternating directions.
Motion cbpt_step(CbptController& ctl, double consensus, double sample, const CbptParams& params, Rng& rng);

// Incremental sample mean: (mean * count + sample) / (count + 1).
double running_mean_update(double mean, int count, double sample);

enum class ScenarioMode {
  Full,           // dispersion -> averaging -> CBPT
  DispersionOnly, // connectivity-preserving walk only
  DiffusionOnly,  // unconditional run-and-tumble only
  Control,        // no communication: diffusion + running mean, then CBPT
};

struct SimulationConfig {
  std::size_t n = 40;
  ScalarField field = ScalarField::radial_cone({0.0, 0.0}, 1.0, 0.0);
  ReferenceRegion region;
  double gt_resolution = 0.5;
  std::optional<double> sensor_noise_sd;  // default 0.02 * |slope| * region radius; grids 0.02 * value range
  MotionParams motion;
  double r_comm = 10.0;
  double range_noise = 0.1;
  double range_smoothing = 0.5;  // weight of the newest range reading, 1 = no smoothing
  double r_cover = 5.0;
  double cover_cell = 0.25;
  DispersionParams dispersion;
  ConsensusParams consensus;
  bool freeze_samples = false;      // averaging input: exploration sample instead of live samples
  bool cbpt_live_samples = false;   // CBPT input: live samples instead of the exploration sample
  int quorum_timeout = 50;
  std::optional<double> cbpt_tolerance;  // default: sensor noise sd
  std::optional<double> cbpt_stop_band;  // default: tolerance
  std::optional<double> cbpt_resume_band;  // default: 3 * stop band
  int cbpt_patience = 5;
  int cbpt_turn_burst = 4;
  int total_ticks = 600;
  double init_radius = 10.0;
  int t_sw = 80;
  std::uint64_t seed = 1;
  bool record_trajectory = false;

  void validate() const;
  double resolved_sensor_noise() const;
  CbptParams resolved_cbpt() const;
};

struct World {
  std::vector<AgentState> agents;
  long tick = 0;
  ScenarioMode mode = ScenarioMode::Full;
  double ground_truth = 0.0;          // z_gt
  double ground_truth_position = 0.0; // contour coordinate of z_gt
  double sensor_noise_sd = 0.0;
  CbptParams cbpt;
};

// Agents uniform in a disk of radius init_radius around the field centre
// with uniform headings; estimates start at the noiseless local value.
World make_world(const SimulationConfig& config, ScenarioMode mode);

// Metrics of the current snapshot.
MetricsRecord measure(const World& world, const SimulationConfig& config);

// One synchronous tick: sense -> controllers -> kinematics -> metrics.
MetricsRecord advance_tick(World& world, const SimulationConfig& config);

struct TrajectoryRow {
  double time = 0.0;
  int agent = 0;
  Vec2 position;
  double heading = 0.0;
  Phase phase = Phase::Dispersing;
  double estimate = 0.0;
};

struct ScenarioResult {
  std::vector<MetricsRecord> metrics;  // index = tick, including tick 0
  std::vector<TrajectoryRow> trajectory;
  std::vector<AgentState> final_agents;
  // First tick at which every agent had left exploration.
  std::optional<long> exploration_end_tick;
};

ScenarioResult run_scenario(const SimulationConfig& config, ScenarioMode mode);

inline ScenarioResult run_full_scenario(const SimulationConfig& config) {
  return run_scenario(config, ScenarioMode::Full);
}

ScenarioResult run_control_experiment(SimulationConfig config, int t_sw);

}  // namespace swarmest
