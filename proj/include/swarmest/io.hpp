#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "swarmest/engine.hpp"
#include "swarmest/study.hpp"

namespace swarmest {

enum class ErrorDomain { Position, Estimate };

inline constexpr const char* kMetricsHeader = "tick,A_cover_cm2,mean_degree,giant_component,E_T,E_P,E_A,robots_in_region";
inline constexpr const char* kTrajectoryHeader = "time,agent,x,y,heading,phase,estimate";
inline constexpr const char* kStaticHeader = "range_ratio,mean_degree,steady_E_P,passage_time,lambda2";

// Numbers are written with 9 significant digits; the first column is
// tick * dt in seconds.
std::string format_number(double v);
std::string metrics_row(const MetricsRecord& m, ErrorDomain domain);

void write_metrics_csv(std::ostream& out, std::span<const MetricsRecord> records, ErrorDomain domain);
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows);
void write_static_csv(std::ostream& out, std::span<const StaticStudyRow> rows);

}  // namespace swarmest
