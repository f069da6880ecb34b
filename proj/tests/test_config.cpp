#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "swarmest/config.hpp"
#include "swarmest/errors.hpp"

using namespace swarmest;

TEST(Config, Defaults) {
  const ExperimentConfig c;
  EXPECT_EQ(c.scenario, Scenario::Full);
  EXPECT_EQ(c.n, 40u);
  EXPECT_DOUBLE_EQ(c.r_comm, 10.0);
  EXPECT_DOUBLE_EQ(c.dispersion.distance_threshold, 8.0);
  EXPECT_DOUBLE_EQ(c.consensus.alpha, 0.5);
  EXPECT_EQ(c.consensus.t_comm, 100);
  EXPECT_EQ(c.region, RegionShape::Square);
  EXPECT_DOUBLE_EQ(c.region_size, 90.0);
  EXPECT_EQ(get_config_value(c, "sensor_noise"), "auto");
  EXPECT_NO_THROW(to_simulation(c));
}

TEST(Config, KeysNormalise) {
  ExperimentConfig c;
  set_config_value(c, "Range-Noise", "0.25");
  EXPECT_DOUBLE_EQ(c.range_noise, 0.25);
  EXPECT_TRUE(c.explicit_keys.count("range_noise"));
  EXPECT_EQ(normalize_key(" T-Comm "), "t_comm");
}

TEST(Config, UnknownKeyNamesKey) {
  ExperimentConfig c;
  try {
    set_config_value(c, "bogus_key", "1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "bogus_key");
  }
}

TEST(Config, BadValuesNameKey) {
  ExperimentConfig c;
  for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
           {"n", "many"}, {"alpha", "0.5x"}, {"field", "sphere"}, {"link_guard", "maybe"}, {"seed", "-1"}}) {
    try {
      set_config_value(c, k, v);
      ADD_FAILURE() << k;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), k);
    }
  }
}

TEST(Config, ValidationNamesField) {
  ExperimentConfig c;
  c.consensus.alpha = 2.0;
  try {
    to_simulation(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "alpha");
  }
}

TEST(Config, TextWithSectionsCommentsQuotes) {
  ExperimentConfig c;
  apply_config_text(c,
                    "# experiment\n"
                    "[run]\n"
                    "seed = 42   # trailing\n"
                    "out_dir = \"runs/a #1\"\n"
                    "\n"
                    "[swarm]\n"
                    "n = 12\n"
                    "speed=2\n");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.out_dir, "runs/a #1");
  EXPECT_EQ(c.n, 12u);
  EXPECT_DOUBLE_EQ(c.motion.speed, 2.0);
}

TEST(Config, MalformedText) {
  ExperimentConfig c;
  EXPECT_THROW(apply_config_text(c, "n 12\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "[run\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "out_dir = \"abc\n"), ConfigError);
  EXPECT_THROW(apply_config_file(c, "/nonexistent/file.cfg"), ConfigError);
}

TEST(Config, PropertyRoundTrip) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    ExperimentConfig c;
    c.seed = gen();
    c.n = 1 + gen() % 200;
    c.r_comm = u(gen);
    c.range_noise = u(gen) / 1e3;
    c.slope = -u(gen);
    c.offset = u(gen) * 1e-7;
    c.consensus.alpha = u(gen) / 1e3;
    c.consensus.delta = u(gen) * 1e-9;
    c.field_center = {u(gen), -u(gen)};
    c.sensor_noise = trial % 2 ? std::optional<double>(u(gen)) : std::nullopt;
    c.region = trial % 3 ? RegionShape::Disk : RegionShape::Square;
    c.walk = trial % 2 ? WalkKind::Diffusion : WalkKind::Dispersion;
    c.dispersion.link_guard = trial % 5 != 0;
    c.out_dir = trial % 4 ? "out dir/x" : " padded #";
    c.ticks = static_cast<int>(gen() % 5000);
    ExperimentConfig back;
    apply_config_text(back, serialize_config(c));
    ASSERT_TRUE(same_settings(c, back)) << serialize_config(c);
    EXPECT_EQ(back.r_comm, c.r_comm);
    EXPECT_EQ(back.consensus.delta, c.consensus.delta);
  }
}

TEST(Config, EveryKeySerialised) {
  const ExperimentConfig c;
  const std::string text = serialize_config(c);
  for (const auto& k : config_keys()) EXPECT_NE(text.find("\n" + k + " = "), std::string::npos) << k;
}

TEST(Config, Precedence) {
  const auto path = std::filesystem::temp_directory_path() / "swarmest_precedence.cfg";
  {
    std::ofstream f(path);
    f << "n = 12\nseed = 5\n";
  }
  ExperimentConfig c;
  apply_config_file(c, path);
  apply_overrides(c, parse_override_tokens({"--seed", "9", "--r-comm=7.5"}));
  EXPECT_EQ(c.n, 12u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.r_comm, 7.5);
  EXPECT_DOUBLE_EQ(c.range_noise, 0.1);
  std::filesystem::remove(path);
}

TEST(Config, OverrideTokens) {
  const auto o = parse_override_tokens({"--a=1", "--b", "2"});
  ASSERT_EQ(o.size(), 2u);
  EXPECT_EQ(o[0], (std::pair<std::string, std::string>{"a", "1"}));
  EXPECT_EQ(o[1], (std::pair<std::string, std::string>{"b", "2"}));
  EXPECT_THROW(parse_override_tokens({"--b"}), ConfigError);
  EXPECT_THROW(parse_override_tokens({"stray"}), ConfigError);
}

TEST(Config, SeedList) {
  ExperimentConfig c;
  c.seed = 10;
  c.seeds = 3;
  EXPECT_EQ(c.seed_list(), (std::vector<std::uint64_t>{10, 11, 12}));
}

TEST(Config, OutDirResolution) {
  ExperimentConfig c;
  ::setenv("SWARMEST_OUT_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_out_dir(c), std::filesystem::path("/tmp/from_env"));
  c.out_dir = "explicit";
  EXPECT_EQ(resolve_out_dir(c), std::filesystem::path("explicit"));
  ::unsetenv("SWARMEST_OUT_DIR");
  c.out_dir.clear();
  EXPECT_EQ(resolve_out_dir(c), std::filesystem::path("."));
}

TEST(Config, SweepGrid) {
  ExperimentConfig c;
  c.grid = "n=10,20;alpha=0.3,0.6,0.9";
  const auto axes = parse_sweep_grid(c);
  ASSERT_EQ(axes.size(), 2u);
  EXPECT_EQ(axes[0].key, "n");
  EXPECT_EQ(axes[1].values.size(), 3u);
}

TEST(Config, SweepRejectsConflicts) {
  ExperimentConfig c;
  set_config_value(c, "n", "30");
  c.grid = "n=10,20";
  try {
    parse_sweep_grid(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "n");
  }
  ExperimentConfig d;
  d.grid = "alpha=0.1;alpha=0.2";
  EXPECT_THROW(parse_sweep_grid(d), ConfigError);
  d.grid = "nope=1";
  EXPECT_THROW(parse_sweep_grid(d), ConfigError);
  d.grid = "";
  EXPECT_THROW(parse_sweep_grid(d), ConfigError);
  d.grid = "seed=1,2";
  EXPECT_THROW(parse_sweep_grid(d), ConfigError);
}

TEST(Config, GridFieldNeedsFile) {
  ExperimentConfig c;
  c.field = FieldSpecKind::Grid;
  try {
    to_simulation(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "grid_file");
  }
}

TEST(Config, StaticStudyParams) {
  ExperimentConfig c;
  c.sweep_range = "0.1:0.3:3";
  c.mc = 7;
  const auto p = to_static_study(c);
  EXPECT_EQ(p.repetitions, 7);
  ASSERT_EQ(p.range_ratios.size(), 3u);
  EXPECT_NEAR(p.range_ratios[1], 0.2, 1e-15);
  c.sweep_range = "0.1:0.3";
  EXPECT_THROW(to_static_study(c), ConfigError);
}
