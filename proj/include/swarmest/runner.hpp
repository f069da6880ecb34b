#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swarmest/config.hpp"

namespace swarmest {

struct SeedRun {
  std::uint64_t seed = 0;
  ScenarioResult result;
};

// Runs the configured scenario (disperse, full or control) once per seed,
// in parallel, results in seed order.
std::vector<SeedRun> run_seeds(const ExperimentConfig& config);

ScenarioMode scenario_mode(const ExperimentConfig& config);

// Output file stem of one seed, e.g. "full_seed3" or "control_tsw20_seed3".
std::string run_stem(const ExperimentConfig& config, std::uint64_t seed);

struct RunReport {
  std::vector<std::filesystem::path> files;
  double wall_time_s = 0.0;
};

// Executes config.scenario and writes its CSVs and summary JSON into
// resolve_out_dir(config).
RunReport run_experiment(const ExperimentConfig& config);

inline constexpr const char* kSweepMetrics[] = {"A_cover_cm2", "mean_degree", "giant_component", "E_T",
                                                "E_P",         "E_A",         "robots_in_region"};

struct SweepRow {
  std::vector<std::string> values;  // one per axis
  std::size_t seeds = 0;
  std::vector<double> mean;         // one per kSweepMetrics entry
  std::vector<double> sd;           // sample standard deviation, 0 for a single seed
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<SweepRow> rows;  // Cartesian product, first axis slowest
};

SweepResult run_sweep(const ExperimentConfig& config);
std::string sweep_csv(const SweepResult& result);
RunReport run_sweep_experiment(const ExperimentConfig& config);

// Final-row metric values in kSweepMetrics order (position-domain errors).
std::vector<double> final_metric_values(const MetricsRecord& m);

}  // namespace swarmest
