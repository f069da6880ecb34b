#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <vector>

#include "swarmest/engine.hpp"
#include "swarmest/errors.hpp"

using namespace swarmest;

namespace {

CbptParams tight() {
  CbptParams p;
  p.tolerance = 0.0;
  p.stop_band = 0.0;
  p.resume_band = 0.0;
  return p;
}

SimulationConfig small_config(std::uint64_t seed) {
  SimulationConfig c;
  c.seed = seed;
  c.n = 20;
  c.total_ticks = 250;
  c.consensus.t_comm = 40;
  c.region = {RegionShape::Disk, 22.5, {0.0, 0.0}};
  c.record_trajectory = true;
  return c;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Cbpt, OnContourStops) {
  CbptController ctl;
  Rng rng = make_stream(1, 0);
  EXPECT_EQ(cbpt_step(ctl, 5.0, 5.0, tight(), rng), Motion::Stop);
  EXPECT_TRUE(ctl.parked);
}

TEST(Cbpt, ImprovingKeepsForward) {
  CbptController ctl;
  Rng rng = make_stream(1, 0);
  for (int k = 0; k < 50; ++k) {
    ASSERT_EQ(cbpt_step(ctl, 0.0, 100.0 - k, tight(), rng), Motion::Forward);
  }
}

TEST(Cbpt, StagnationTurnsAndAlternates) {
  CbptParams p = tight();
  p.patience_limit = 3;
  p.max_turn_burst = 1;
  CbptController ctl;
  Rng rng = make_stream(1, 0);
  std::vector<Motion> seq;
  for (int k = 0; k < 12; ++k) seq.push_back(cbpt_step(ctl, 0.0, 10.0, p, rng));
  const std::vector<Motion> want{Motion::Forward, Motion::Forward, Motion::Forward, Motion::TurnRight,
                                 Motion::Forward, Motion::Forward, Motion::Forward, Motion::TurnLeft,
                                 Motion::Forward, Motion::Forward, Motion::Forward, Motion::TurnRight};
  EXPECT_EQ(seq, want);
}

TEST(Cbpt, WorseningTurnsEarly) {
  CbptParams p = tight();
  p.tolerance = 0.1;
  CbptController ctl;
  Rng rng = make_stream(1, 0);
  EXPECT_EQ(cbpt_step(ctl, 0.0, 5.0, p, rng), Motion::Forward);
  EXPECT_NE(cbpt_step(ctl, 0.0, 6.0, p, rng), Motion::Forward);
}

TEST(Cbpt, ParkedAgentWaitsForResumeBand) {
  CbptParams p;
  p.tolerance = 0.1;
  p.stop_band = 0.1;
  p.resume_band = 0.3;
  CbptController ctl;
  Rng rng = make_stream(1, 0);
  EXPECT_EQ(cbpt_step(ctl, 0.0, 0.05, p, rng), Motion::Stop);
  EXPECT_EQ(cbpt_step(ctl, 0.0, 0.25, p, rng), Motion::Stop);
  EXPECT_NE(cbpt_step(ctl, 0.0, 0.5, p, rng), Motion::Stop);
  EXPECT_FALSE(ctl.parked);
}

TEST(Cbpt, ParamsValidation) {
  CbptParams p;
  EXPECT_NO_THROW(p.validate());
  p.stop_band = 1.0;
  p.resume_band = 0.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p = CbptParams{};
  p.patience_limit = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Cbpt, NoiselessSingleAgentReachesContour) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SimulationConfig c;
    c.seed = seed;
    c.n = 1;
    c.init_radius = 0.0;
    c.sensor_noise_sd = 0.0;
    c.cbpt_tolerance = 0.0;
    World w = make_world(c, ScenarioMode::Full);
    const double r_star = 15.0;
    AgentState& a = w.agents[0];
    a.phase = Phase::CBPT;
    a.estimate = c.field.slope * r_star + c.field.offset;
    a.frozen_sample = a.estimate;
    const double bound = 2.0 * c.motion.step_length() * c.cbpt_patience;
    for (int t = 0; t < 400; ++t) {
      advance_tick(w, c);
      if (t >= 200) ASSERT_LE(std::abs(contour_coordinate(c.field, w.agents[0].position) - r_star), bound) << seed;
    }
  }
}

TEST(RunningMean, Example) {
  EXPECT_DOUBLE_EQ(running_mean_update(2.0, 3, 6.0), 3.0);
  EXPECT_DOUBLE_EQ(running_mean_update(0.0, 0, 4.0), 4.0);
}

TEST(Engine, ZeroTicksGivesInitialMetricsOnly) {
  SimulationConfig c;
  c.total_ticks = 0;
  const auto r = run_full_scenario(c);
  ASSERT_EQ(r.metrics.size(), 1u);
  EXPECT_DOUBLE_EQ(r.metrics[0].time, 0.0);
  EXPECT_FALSE(r.exploration_end_tick.has_value());
}

TEST(Engine, InitialClusterWithinRadius) {
  SimulationConfig c;
  const World w = make_world(c, ScenarioMode::Full);
  ASSERT_EQ(w.agents.size(), c.n);
  for (const auto& a : w.agents) {
    EXPECT_LE(distance(a.position, c.field.center), c.init_radius + 1e-12);
    EXPECT_EQ(a.phase, Phase::Dispersing);
    EXPECT_DOUBLE_EQ(a.estimate, field_value(c.field, a.position));
  }
}

TEST(Engine, SingleAgentAveragesWithItself) {
  SimulationConfig c;
  c.n = 1;
  c.sensor_noise_sd = 0.0;
  c.total_ticks = c.quorum_timeout + c.consensus.t_comm + 20;
  c.record_trajectory = true;
  const auto r = run_full_scenario(c);
  const auto& a = r.final_agents[0];
  EXPECT_EQ(a.phase, Phase::CBPT);
  EXPECT_EQ(a.position, r.trajectory.front().position);
  EXPECT_NEAR(a.estimate, field_value(c.field, a.position), 1e-12);
}

TEST(Engine, DeterministicPerSeed) {
  const SimulationConfig c = small_config(3);
  const auto a = run_full_scenario(c);
  const auto b = run_full_scenario(c);
  ASSERT_EQ(a.metrics.size(), b.metrics.size());
  for (std::size_t t = 0; t < a.metrics.size(); ++t) {
    ASSERT_TRUE(same_bits(a.metrics[t].coverage, b.metrics[t].coverage));
    ASSERT_TRUE(same_bits(a.metrics[t].position.accuracy, b.metrics[t].position.accuracy));
    ASSERT_TRUE(same_bits(a.metrics[t].estimate.precision, b.metrics[t].estimate.precision));
  }
  for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
    ASSERT_EQ(a.trajectory[k].position, b.trajectory[k].position);
    ASSERT_TRUE(same_bits(a.trajectory[k].estimate, b.trajectory[k].estimate));
  }
}

TEST(Engine, SeedsDiffer) {
  const auto a = run_full_scenario(small_config(1));
  const auto b = run_full_scenario(small_config(2));
  EXPECT_NE(a.trajectory.back().position, b.trajectory.back().position);
}

TEST(Engine, PropertyPhaseMonotone) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SimulationConfig c = small_config(seed);
    const auto r = run_full_scenario(c);
    std::map<int, Phase> last;
    for (const auto& row : r.trajectory) {
      auto it = last.find(row.agent);
      if (it != last.end()) {
        const bool resumed = it->second == Phase::WaitingNeighbors && row.phase == Phase::Dispersing;
        ASSERT_TRUE(resumed || phase_index(row.phase) >= phase_index(it->second));
      }
      last[row.agent] = row.phase;
    }
  }
}

TEST(Engine, PropertyEstimatesStayInSampledHull) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    SimulationConfig c = small_config(seed);
    c.sensor_noise_sd = 0.0;
    const auto r = run_full_scenario(c);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const std::size_t n = c.n;
    for (std::size_t k = 0; k < r.trajectory.size(); k += n) {
      for (std::size_t i = 0; i < n; ++i) {
        const double v = field_value(c.field, r.trajectory[k + i].position);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const auto& row = r.trajectory[k + i];
        if (row.phase != Phase::Averaging) continue;
        ASSERT_GE(row.estimate, lo - 1e-9);
        ASSERT_LE(row.estimate, hi + 1e-9);
      }
    }
  }
}

TEST(Engine, PhasesProgressToCbpt) {
  const auto r = run_full_scenario(small_config(5));
  ASSERT_TRUE(r.exploration_end_tick.has_value());
  for (const auto& a : r.final_agents) EXPECT_EQ(a.phase, Phase::CBPT);
}

TEST(Engine, AveragingAgentsDoNotMove) {
  const auto r = run_full_scenario(small_config(6));
  const std::size_t n = 20;
  for (std::size_t k = n; k < r.trajectory.size(); ++k) {
    const auto& prev = r.trajectory[k - n];
    const auto& row = r.trajectory[k];
    if (prev.phase == Phase::Averaging && row.phase == Phase::Averaging) ASSERT_EQ(prev.position, row.position);
  }
}

TEST(Engine, RadialSpreadContractsAfterDispersion) {
  SimulationConfig c = small_config(1);
  c.n = 40;
  c.total_ticks = 600;
  c.consensus.t_comm = 100;
  c.record_trajectory = false;
  const auto r = run_full_scenario(c);
  ASSERT_TRUE(r.exploration_end_tick.has_value());
  const auto end = static_cast<std::size_t>(*r.exploration_end_tick);
  EXPECT_LT(r.metrics.back().position.precision, r.metrics[end].position.precision);
}

TEST(Control, SingleSampleSwitch) {
  SimulationConfig c;
  c.sensor_noise_sd = 0.0;
  c.total_ticks = 30;
  c.record_trajectory = true;
  const auto r = run_control_experiment(c, 1);
  const std::size_t n = c.n;
  for (std::size_t i = 0; i < n; ++i) {
    const double first = field_value(c.field, r.trajectory[i].position);
    for (std::size_t k = n + i; k < r.trajectory.size(); k += n) {
      ASSERT_DOUBLE_EQ(r.trajectory[k].estimate, first);
      ASSERT_EQ(r.trajectory[k].phase, Phase::CBPT);
    }
  }
  EXPECT_THROW(run_control_experiment(c, 0), ConfigError);
}

TEST(Control, RunningMeanBeforeSwitch) {
  SimulationConfig c;
  c.sensor_noise_sd = 0.0;
  c.total_ticks = 10;
  c.record_trajectory = true;
  const auto r = run_control_experiment(c, 50);
  const std::size_t n = c.n;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t t = 0; t < 10; ++t) {
      sum += field_value(c.field, r.trajectory[t * n + i].position);
      ASSERT_NEAR(r.trajectory[(t + 1) * n + i].estimate, sum / static_cast<double>(t + 1), 1e-9);
    }
  }
}

TEST(Config, RejectsBadValues) {
  SimulationConfig c;
  c.n = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SimulationConfig{};
  c.dispersion.distance_threshold = 9.5;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "d_thr");
  }
  c = SimulationConfig{};
  c.cover_cell = 2.0;
  EXPECT_THROW(c.validate(), ConfigError);
}
