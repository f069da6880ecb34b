#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "swarmest/engine.hpp"
#include "swarmest/study.hpp"

namespace swarmest {

enum class Scenario { Disperse, ConsensusStatic, Full, Control };
enum class WalkKind { Dispersion, Diffusion };
enum class FieldSpecKind { Cone, VShape, Grid };

const char* to_string(Scenario s);
Scenario parse_scenario(const std::string& text);

// Everything a run needs. Plain values only: the grid file is kept as a
// path and loaded when the simulation config is resolved.
struct ExperimentConfig {
  Scenario scenario = Scenario::Full;
  std::uint64_t seed = 1;
  int seeds = 1;
  unsigned workers = 0;
  std::string out_dir;  // empty: SWARMEST_OUT_DIR, then "."
  bool trajectory = false;

  std::size_t n = 40;
  MotionParams motion;
  double r_comm = 10.0;
  double range_noise = 0.1;
  double range_smoothing = 0.5;
  double init_radius = 10.0;

  FieldSpecKind field = FieldSpecKind::Cone;
  Vec2 field_center;
  double slope = 1.0;
  double offset = 0.0;
  std::string grid_file;
  bool grid_bilinear = true;

  RegionShape region = RegionShape::Square;
  double region_size = 90.0;
  Vec2 region_center;
  double gt_resolution = 0.5;
  std::optional<double> sensor_noise;

  WalkKind walk = WalkKind::Dispersion;
  DispersionParams dispersion;

  ConsensusParams consensus;
  PassageMode passage = PassageMode::DistanceToFinal;
  bool freeze_samples = false;
  bool cbpt_live_samples = false;
  int quorum_timeout = 50;

  std::optional<double> cbpt_tol;
  std::optional<double> cbpt_stop_band;
  std::optional<double> cbpt_resume_band;
  int cbpt_patience = 5;
  int cbpt_turn_burst = 4;

  double r_cover = 5.0;
  double cover_cell = 0.25;

  int ticks = 600;
  int t_sw = 80;

  int mc = 200;
  std::string sweep_range = "0.05:0.5:20";
  double static_noise = 0.0;

  // Sweep grid, "key=v1,v2;key2=v3,v4". Only used by the sweep runner.
  std::string grid;

  // Keys set by a file or an override rather than left at their default.
  std::set<std::string> explicit_keys;

  std::vector<std::uint64_t> seed_list() const;
};

// Canonical key spelling: lower case, '-' replaced by '_'.
std::string normalize_key(std::string key);

// All known keys in serialization order.
const std::vector<std::string>& config_keys();

// Assigns one key from its textual value. Throws ConfigError naming the key
// for unknown keys and unparsable values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);
std::string get_config_value(const ExperimentConfig& config, const std::string& key);

// Flat "key = value" text, optional [section] headers (informational only),
// '#' comments, optional double quotes around values.
void apply_config_text(ExperimentConfig& config, const std::string& text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);
void apply_overrides(ExperimentConfig& config, const std::vector<std::pair<std::string, std::string>>& overrides);

// Sectioned text that apply_config_text reads back to an identical config.
std::string serialize_config(const ExperimentConfig& config);
// Ordered key -> value map of the fully resolved config.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config);

bool same_settings(const ExperimentConfig& a, const ExperimentConfig& b);

// Resolved inputs for the library; both validate and throw ConfigError.
SimulationConfig to_simulation(const ExperimentConfig& config);
StaticStudyParams to_static_study(const ExperimentConfig& config);

// Parses "--key value" / "--key=value" tokens.
std::vector<std::pair<std::string, std::string>> parse_override_tokens(const std::vector<std::string>& tokens);

std::filesystem::path resolve_out_dir(const ExperimentConfig& config);

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

// Parses the grid string; rejects unknown keys, empty value lists, repeated
// keys and keys that are also set explicitly.
std::vector<SweepAxis> parse_sweep_grid(const ExperimentConfig& config);

}  // namespace swarmest
