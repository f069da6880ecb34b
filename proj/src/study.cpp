#include "swarmest/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "swarmest/errors.hpp"
#include "swarmest/metrics.hpp"
#include "swarmest/network.hpp"
#include "swarmest/parallel.hpp"

namespace swarmest {

namespace {

constexpr std::uint64_t kStudySalt = 2;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

void StaticStudyParams::validate() const {
  if (n < 2) throw ConfigError("n", "static consensus needs n >= 2");
  if (repetitions < 1) throw ConfigError("mc", "must be >= 1");
  if (range_ratios.empty()) throw ConfigError("sweep_range", "must contain at least one value");
  for (double r : range_ratios) {
    if (!(r > 0.0) || r > std::sqrt(2.0)) throw ConfigError("sweep_range", "range ratios must lie in (0, sqrt(2)]");
  }
  consensus.validate();
  if (!(consensus.alpha < 1.0)) throw ConfigError("alpha", "static consensus needs alpha < 1");
  if (!(sensor_noise_sd >= 0.0)) throw ConfigError("sensor_noise", "must be >= 0");
}

StaticSample static_sample(std::size_t n, double range_ratio, const ConsensusParams& consensus, PassageMode mode,
                           double sensor_noise_sd, Rng& rng) {
  const GeometricSample g = random_geometric_graph(n, range_ratio, rng);
  const Vec2 centre{0.5, 0.5};
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = distance(g.positions[i], centre) + gaussian(rng, sensor_noise_sd);

  const auto series = run_consensus_static(g.graph, s, consensus, s);
  std::vector<double> precision;
  precision.reserve(series.size());
  for (const auto& z : series) {
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(n);
    precision.push_back(accuracy_errors(z, mean).precision);
  }

  StaticSample out;
  out.mean_degree = mean_degree(g.graph);
  out.giant_component = giant_component_size(g.graph);
  out.steady_precision = precision.back();
  out.passage_time = first_passage_time(passage_series(precision, mode), consensus.delta);
  out.lambda2 = second_largest_eigenvalue(g.graph, consensus.alpha);
  return out;
}

std::vector<StaticStudyRow> run_static_study(const StaticStudyParams& params) {
  params.validate();
  const std::size_t points = params.range_ratios.size();
  const auto reps = static_cast<std::size_t>(params.repetitions);
  std::vector<StaticSample> samples(points * reps);
  parallel_for(samples.size(), params.workers, [&](std::size_t k) {
    Rng rng = make_stream(params.seed, k, kStudySalt);
    samples[k] = static_sample(params.n, params.range_ratios[k / reps], params.consensus, params.passage_mode,
                               params.sensor_noise_sd, rng);
  });

  std::vector<StaticStudyRow> rows(points);
  for (std::size_t p = 0; p < points; ++p) {
    StaticStudyRow& row = rows[p];
    row.range_ratio = params.range_ratios[p];
    std::vector<double> lambdas;
    double passage_sum = 0.0;
    std::size_t passed = 0, connected = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const StaticSample& x = samples[p * reps + r];
      row.mean_degree += x.mean_degree;
      row.steady_precision += x.steady_precision;
      row.lambda2 += x.lambda2;
      lambdas.push_back(x.lambda2);
      if (x.passage_time) {
        passage_sum += static_cast<double>(*x.passage_time);
        ++passed;
      }
      const bool is_connected = x.giant_component == params.n;
      connected += is_connected;
      if (is_connected != (x.lambda2 < 1.0 - kSpectralGapTolerance)) ++row.spectral_mismatches;
    }
    const double k = static_cast<double>(reps);
    row.mean_degree /= k;
    row.steady_precision /= k;
    row.lambda2 /= k;
    row.median_lambda2 = median(std::move(lambdas));
    row.connected_fraction = static_cast<double>(connected) / k;
    row.passage_time = passed ? passage_sum / static_cast<double>(passed) : std::numeric_limits<double>::quiet_NaN();
  }
  return rows;
}

std::vector<double> parse_linspace(const std::string& text) {
  std::istringstream in(text);
  double lo = 0.0, hi = 0.0;
  long count = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    throw ConfigError("sweep_range", "expected lo:hi:count, got '" + text + "'");
  }
  if (count < 1) throw ConfigError("sweep_range", "count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = hi;
  return out;
}

}  // namespace swarmest
