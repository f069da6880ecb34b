#include "swarmest/io.hpp"

#include <ostream>

#include <fmt/format.h>

namespace swarmest {

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

std::string metrics_row(const MetricsRecord& m, ErrorDomain domain) {
  const AccuracyErrors& e = domain == ErrorDomain::Position ? m.position : m.estimate;
  return fmt::format("{},{},{},{},{},{},{},{}", format_number(m.time), format_number(m.coverage),
                     format_number(m.mean_degree), m.giant_component, format_number(e.trueness),
                     format_number(e.precision), format_number(e.accuracy), m.robots_in_region);
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRecord> records, ErrorDomain domain) {
  out << kMetricsHeader << '\n';
  for (const auto& m : records) out << metrics_row(m, domain) << '\n';
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{}\n", format_number(r.time), r.agent, format_number(r.position.x),
                       format_number(r.position.y), format_number(r.heading), to_string(r.phase),
                       format_number(r.estimate));
  }
}

void write_static_csv(std::ostream& out, std::span<const StaticStudyRow> rows) {
  out << kStaticHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{}\n", format_number(r.range_ratio), format_number(r.mean_degree),
                       format_number(r.steady_precision), format_number(r.passage_time), format_number(r.lambda2));
  }
}

}  // namespace swarmest
