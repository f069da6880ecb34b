#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swarmest/environment.hpp"
#include "swarmest/geometry.hpp"

namespace swarmest {

struct AccuracyErrors {
  double trueness = 0.0;   // E_T = (mean - truth)^2
  double precision = 0.0;  // E_P = mean (z_i - mean)^2
  double accuracy = 0.0;   // E_A = mean (z_i - truth)^2
};

// One row of the per-tick metrics CSV. `position` errors are computed on
// contour coordinates (cm^2); `estimate` errors on the agents' internal
// estimates (intensity^2).
struct MetricsRecord {
  double time = 0.0;  // tick * dt, seconds
  double coverage = 0.0;
  double mean_degree = 0.0;
  std::size_t giant_component = 0;
  AccuracyErrors position;
  AccuracyErrors estimate;
  std::size_t robots_in_region = 0;
};

// Area of the union of disks of radius r_cover, rasterised on a grid of
// pitch `cell` anchored at the lower-left corner of the padded bounding box.
// A cell counts when its centre lies inside any disk.
double coverage_area(std::span<const Vec2> positions, double r_cover, double cell);

AccuracyErrors accuracy_errors(std::span<const double> estimates, double truth);

// Contour coordinate of every robot.
std::vector<double> positions_to_estimates(std::span<const Vec2> positions, const ScalarField& field);

std::size_t robots_in_region(std::span<const Vec2> positions, const ReferenceRegion& region);

}  // namespace swarmest
