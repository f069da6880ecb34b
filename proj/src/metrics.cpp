#include "swarmest/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "swarmest/errors.hpp"

namespace swarmest {

double coverage_area(std::span<const Vec2> positions, double r_cover, double cell) {
  if (positions.empty()) return 0.0;
  if (!(r_cover > 0.0)) throw DomainError("coverage_area: r_cover must be > 0");
  if (!(cell > 0.0) || cell > r_cover / 5.0 + 1e-12) {
    throw DomainError("coverage_area: cell must satisfy 0 < cell <= r_cover / 5");
  }
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& p : positions) {
    if (!p.finite()) throw DomainError("coverage_area: non-finite position");
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double x0 = min_x - r_cover;
  const double y0 = min_y - r_cover;
  const auto cols = static_cast<long>(std::ceil((max_x + r_cover - x0) / cell)) + 1;
  const auto rows = static_cast<long>(std::ceil((max_y + r_cover - y0) / cell)) + 1;
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(rows * cols), 0);
  const double r2 = r_cover * r_cover;
  std::size_t count = 0;

  for (const auto& p : positions) {
    // Only cells whose centre can be inside this disk.
    const long c_lo = std::max(0L, static_cast<long>(std::floor((p.x - r_cover - x0) / cell - 0.5)));
    const long c_hi = std::min(cols - 1, static_cast<long>(std::ceil((p.x + r_cover - x0) / cell - 0.5)));
    const long r_lo = std::max(0L, static_cast<long>(std::floor((p.y - r_cover - y0) / cell - 0.5)));
    const long r_hi = std::min(rows - 1, static_cast<long>(std::ceil((p.y + r_cover - y0) / cell - 0.5)));
    for (long r = r_lo; r <= r_hi; ++r) {
      const double dy = y0 + (static_cast<double>(r) + 0.5) * cell - p.y;
      const double dy2 = dy * dy;
      if (dy2 > r2) continue;
      std::uint8_t* row = hit.data() + r * cols;
      for (long c = c_lo; c <= c_hi; ++c) {
        if (row[c]) continue;
        const double dx = x0 + (static_cast<double>(c) + 0.5) * cell - p.x;
        if (dx * dx + dy2 <= r2) {
          row[c] = 1;
          ++count;
        }
      }
    }
  }
  return static_cast<double>(count) * cell * cell;
}

AccuracyErrors accuracy_errors(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw DomainError("accuracy_errors: empty estimate list");
  const double n = static_cast<double>(estimates.size());
  double mean = 0.0;
  for (double z : estimates) mean += z;
  mean /= n;
  AccuracyErrors e;
  e.trueness = (mean - truth) * (mean - truth);
  for (double z : estimates) {
    e.precision += (z - mean) * (z - mean);
    e.accuracy += (z - truth) * (z - truth);
  }
  e.precision /= n;
  e.accuracy /= n;
  return e;
}

std::vector<double> positions_to_estimates(std::span<const Vec2> positions, const ScalarField& field) {
  std::vector<double> out;
  out.reserve(positions.size());
  for (const auto& p : positions) out.push_back(contour_coordinate(field, p));
  return out;
}

std::size_t robots_in_region(std::span<const Vec2> positions, const ReferenceRegion& region) {
  return static_cast<std::size_t>(
      std::count_if(positions.begin(), positions.end(), [&](const Vec2& p) { return region.contains(p); }));
}

}  // namespace swarmest
