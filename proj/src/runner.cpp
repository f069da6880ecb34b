#include "swarmest/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "swarmest/errors.hpp"
#include "swarmest/io.hpp"
#include "swarmest/parallel.hpp"

namespace swarmest {

namespace {

using Clock = std::chrono::steady_clock;

std::filesystem::path prepare_dir(const ExperimentConfig& config) {
  const std::filesystem::path dir = resolve_out_dir(config);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text, RunReport& report) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
  report.files.push_back(path);
}

nlohmann::ordered_json config_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_entries(config)) j[k] = v;
  return j;
}

nlohmann::ordered_json metrics_json(const MetricsRecord& m) {
  nlohmann::ordered_json j;
  j["time_s"] = m.time;
  j["A_cover_cm2"] = m.coverage;
  j["mean_degree"] = m.mean_degree;
  j["giant_component"] = m.giant_component;
  j["position"] = {{"E_T", m.position.trueness}, {"E_P", m.position.precision}, {"E_A", m.position.accuracy}};
  j["estimate"] = {{"E_T", m.estimate.trueness}, {"E_P", m.estimate.precision}, {"E_A", m.estimate.accuracy}};
  j["robots_in_region"] = m.robots_in_region;
  return j;
}

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string csv_text(std::span<const MetricsRecord> records, ErrorDomain domain) {
  std::ostringstream out;
  write_metrics_csv(out, records, domain);
  return out.str();
}

}  // namespace

ScenarioMode scenario_mode(const ExperimentConfig& config) {
  switch (config.scenario) {
    case Scenario::Disperse:
      return config.walk == WalkKind::Dispersion ? ScenarioMode::DispersionOnly : ScenarioMode::DiffusionOnly;
    case Scenario::Full:
      return ScenarioMode::Full;
    case Scenario::Control:
      return ScenarioMode::Control;
    case Scenario::ConsensusStatic:
      break;
  }
  throw ConfigError("scenario", "consensus-static has no agent simulation");
}

std::vector<SeedRun> run_seeds(const ExperimentConfig& config) {
  const SimulationConfig base = to_simulation(config);
  const ScenarioMode mode = scenario_mode(config);
  const auto seeds = config.seed_list();
  std::vector<SeedRun> runs(seeds.size());
  parallel_for(seeds.size(), config.workers, [&](std::size_t i) {
    SimulationConfig c = base;
    c.seed = seeds[i];
    runs[i].seed = seeds[i];
    runs[i].result = run_scenario(c, mode);
  });
  return runs;
}

std::string run_stem(const ExperimentConfig& config, std::uint64_t seed) {
  switch (config.scenario) {
    case Scenario::Disperse:
      return fmt::format("{}_seed{}", config.walk == WalkKind::Dispersion ? "disperse" : "diffusion", seed);
    case Scenario::Control:
      return fmt::format("control_tsw{}_seed{}", config.t_sw, seed);
    default:
      return fmt::format("{}_seed{}", to_string(config.scenario), seed);
  }
}

std::vector<double> final_metric_values(const MetricsRecord& m) {
  return {m.coverage,           m.mean_degree,         static_cast<double>(m.giant_component),
          m.position.trueness,  m.position.precision,  m.position.accuracy,
          static_cast<double>(m.robots_in_region)};
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  RunReport report;
  nlohmann::ordered_json summary;
  summary["scenario"] = to_string(config.scenario);
  summary["config"] = config_json(config);

  if (config.scenario == Scenario::ConsensusStatic) {
    const StaticStudyParams params = to_static_study(config);
    const std::filesystem::path dir = prepare_dir(config);
    const auto rows = run_static_study(params);
    std::ostringstream out;
    write_static_csv(out, rows);
    write_file(dir / "consensus_static.csv", out.str(), report);
    summary["seeds"] = {config.seed};
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      points.push_back({{"range_ratio", r.range_ratio},
                        {"connected_fraction", r.connected_fraction},
                        {"median_lambda2", r.median_lambda2},
                        {"spectral_mismatches", r.spectral_mismatches}});
    }
    summary["points"] = points;
    summary["outputs"] = {"consensus_static.csv"};
    report.wall_time_s = elapsed(start);
    summary["wall_time_s"] = report.wall_time_s;
    write_file(dir / "consensus_static_summary.json", summary.dump(2) + "\n", report);
    return report;
  }

  const auto runs = run_seeds(config);
  const std::filesystem::path dir = prepare_dir(config);
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
  for (const auto& run : runs) {
    const std::string stem = run_stem(config, run.seed);
    write_file(dir / (stem + ".csv"), csv_text(run.result.metrics, ErrorDomain::Position), report);
    write_file(dir / (stem + "_estimates.csv"), csv_text(run.result.metrics, ErrorDomain::Estimate), report);
    if (config.trajectory) {
      std::ostringstream out;
      write_trajectory_csv(out, run.result.trajectory);
      write_file(dir / (stem + "_trajectory.csv"), out.str(), report);
    }
    seeds.push_back(run.seed);
    nlohmann::ordered_json s;
    s["seed"] = run.seed;
    s["metrics_csv"] = stem + ".csv";
    s["final"] = metrics_json(run.result.metrics.back());
    s["exploration_end_tick"] = run.result.exploration_end_tick ? nlohmann::ordered_json(*run.result.exploration_end_tick)
                                                                : nlohmann::ordered_json(nullptr);
    per_seed.push_back(s);
  }
  summary["seeds"] = seeds;
  summary["runs"] = per_seed;
  report.wall_time_s = elapsed(start);
  summary["wall_time_s"] = report.wall_time_s;
  const std::string prefix = config.scenario == Scenario::Control ? fmt::format("control_tsw{}", config.t_sw)
                             : config.scenario == Scenario::Disperse && config.walk == WalkKind::Diffusion
                                 ? std::string("diffusion")
                                 : std::string(to_string(config.scenario));
  write_file(dir / (prefix + "_summary.json"), summary.dump(2) + "\n", report);
  return report;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  if (config.scenario == Scenario::ConsensusStatic) {
    throw ConfigError("scenario", "sweep supports disperse, full and control; consensus-static sweeps its own range");
  }
  SweepResult result;
  result.axes = parse_sweep_grid(config);

  std::vector<ExperimentConfig> points(1, config);
  for (const auto& axis : result.axes) {
    std::vector<ExperimentConfig> next;
    for (const auto& p : points) {
      for (const auto& v : axis.values) {
        ExperimentConfig c = p;
        set_config_value(c, axis.key, v);
        next.push_back(std::move(c));
      }
    }
    points = std::move(next);
  }

  std::vector<SimulationConfig> sims;
  std::vector<ScenarioMode> modes;
  for (const auto& p : points) {
    sims.push_back(to_simulation(p));
    modes.push_back(scenario_mode(p));
  }

  const auto seeds = config.seed_list();
  const std::size_t k = seeds.size();
  std::vector<std::vector<double>> finals(points.size() * k);
  parallel_for(finals.size(), config.workers, [&](std::size_t job) {
    SimulationConfig c = sims[job / k];
    c.seed = seeds[job % k];
    finals[job] = final_metric_values(run_scenario(c, modes[job / k]).metrics.back());
  });

  const std::size_t metric_count = std::size(kSweepMetrics);
  for (std::size_t p = 0; p < points.size(); ++p) {
    SweepRow row;
    row.seeds = k;
    for (const auto& axis : result.axes) row.values.push_back(get_config_value(points[p], axis.key));
    row.mean.assign(metric_count, 0.0);
    row.sd.assign(metric_count, 0.0);
    for (std::size_t m = 0; m < metric_count; ++m) {
      double sum = 0.0;
      for (std::size_t s = 0; s < k; ++s) sum += finals[p * k + s][m];
      const double mean = sum / static_cast<double>(k);
      double ss = 0.0;
      for (std::size_t s = 0; s < k; ++s) ss += (finals[p * k + s][m] - mean) * (finals[p * k + s][m] - mean);
      row.mean[m] = mean;
      row.sd[m] = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1)) : 0.0;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out;
  for (const auto& axis : result.axes) out += axis.key + ",";
  out += "seeds";
  for (const char* m : kSweepMetrics) out += fmt::format(",{}_mean,{}_sd", m, m);
  out += '\n';
  for (const auto& row : result.rows) {
    for (const auto& v : row.values) out += v + ",";
    out += fmt::format("{}", row.seeds);
    for (std::size_t m = 0; m < row.mean.size(); ++m) {
      out += fmt::format(",{},{}", format_number(row.mean[m]), format_number(row.sd[m]));
    }
    out += '\n';
  }
  return out;
}

RunReport run_sweep_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  RunReport report;
  const SweepResult result = run_sweep(config);
  const std::filesystem::path dir = prepare_dir(config);
  const std::string stem = fmt::format("sweep_{}", to_string(config.scenario));
  write_file(dir / (stem + ".csv"), sweep_csv(result), report);
  nlohmann::ordered_json summary;
  summary["scenario"] = "sweep";
  summary["target"] = to_string(config.scenario);
  summary["config"] = config_json(config);
  summary["seeds"] = config.seed_list();
  summary["grid_points"] = result.rows.size();
  report.wall_time_s = elapsed(start);
  summary["wall_time_s"] = report.wall_time_s;
  write_file(dir / (stem + "_summary.json"), summary.dump(2) + "\n", report);
  return report;
}

}  // namespace swarmest
