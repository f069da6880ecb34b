#include "swarmest/environment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "swarmest/errors.hpp"

namespace swarmest {

ScalarField ScalarField::radial_cone(Vec2 center, double slope, double offset) {
  ScalarField f;
  f.kind = FieldKind::RadialCone;
  f.center = center;
  f.slope = slope;
  f.offset = offset;
  return f;
}

ScalarField ScalarField::v_shape_ramp(Vec2 center, double slope, double offset) {
  ScalarField f = radial_cone(center, slope, offset);
  f.kind = FieldKind::VShapeRamp;
  return f;
}

ScalarField ScalarField::from_grid(GridData grid) {
  if (grid.rows == 0 || grid.cols == 0 || grid.values.size() != grid.rows * grid.cols) {
    throw ConfigError("grid_file", "grid dimensions do not match the number of values");
  }
  if (!(grid.cell_cm > 0.0)) throw ConfigError("grid_file", "cell size must be > 0");
  ScalarField f;
  f.kind = FieldKind::Grid;
  f.grid = std::move(grid);
  return f;
}

bool ReferenceRegion::contains(const Vec2& p) const {
  const Vec2 d = p - center;
  if (shape == RegionShape::Disk) return d.squared_norm() <= size * size;
  const double h = 0.5 * size;
  return std::abs(d.x) <= h && std::abs(d.y) <= h;
}

double ReferenceRegion::reference_radius() const {
  return shape == RegionShape::Disk ? size : 0.5 * size;
}

namespace {

double grid_value(const GridData& g, const Vec2& pos) {
  const double fc = (pos.x - g.origin.x) / g.cell_cm;
  const double fr = (pos.y - g.origin.y) / g.cell_cm;
  const double max_c = static_cast<double>(g.cols - 1);
  const double max_r = static_cast<double>(g.rows - 1);
  const double c = std::clamp(fc, 0.0, max_c);
  const double r = std::clamp(fr, 0.0, max_r);
  auto at = [&g](std::size_t row, std::size_t col) { return g.values[row * g.cols + col]; };
  if (!g.bilinear) {
    return at(static_cast<std::size_t>(std::lround(r)), static_cast<std::size_t>(std::lround(c)));
  }
  const auto c0 = static_cast<std::size_t>(std::floor(c));
  const auto r0 = static_cast<std::size_t>(std::floor(r));
  const std::size_t c1 = std::min(c0 + 1, g.cols - 1);
  const std::size_t r1 = std::min(r0 + 1, g.rows - 1);
  const double tc = c - static_cast<double>(c0);
  const double tr = r - static_cast<double>(r0);
  const double top = at(r0, c0) * (1.0 - tc) + at(r0, c1) * tc;
  const double bottom = at(r1, c0) * (1.0 - tc) + at(r1, c1) * tc;
  return top * (1.0 - tr) + bottom * tr;
}

}  // namespace

double signed_diagonal_offset(const ScalarField& field, const Vec2& pos) {
  const Vec2 d = pos - field.center;
  return (d.x - d.y) / std::numbers::sqrt2;
}

double contour_coordinate(const ScalarField& field, const Vec2& pos) {
  if (!pos.finite()) throw DomainError("contour_coordinate: non-finite position");
  switch (field.kind) {
    case FieldKind::RadialCone:
      return distance(pos, field.center);
    case FieldKind::VShapeRamp:
      return std::abs(signed_diagonal_offset(field, pos));
    case FieldKind::Grid:
      break;
  }
  throw UnsupportedMapping("contour_coordinate: grid fields have no closed-form mapping");
}

double contour_coordinate_of_value(const ScalarField& field, double value) {
  switch (field.kind) {
    case FieldKind::RadialCone:
      return (value - field.offset) / field.slope;
    case FieldKind::VShapeRamp:
      return (field.offset - value) / field.slope;
    case FieldKind::Grid:
      break;
  }
  throw UnsupportedMapping("contour_coordinate_of_value: grid fields have no closed-form mapping");
}

double field_value(const ScalarField& field, const Vec2& pos) {
  if (!pos.finite()) throw DomainError("sample_field: non-finite position");
  switch (field.kind) {
    case FieldKind::RadialCone:
      return field.offset + field.slope * distance(pos, field.center);
    case FieldKind::VShapeRamp:
      return field.offset - field.slope * std::abs(signed_diagonal_offset(field, pos));
    case FieldKind::Grid:
      return grid_value(field.grid, pos);
  }
  return 0.0;
}

double sample_field(const ScalarField& field, const Vec2& pos, double noise_sd, Rng& rng) {
  if (!(noise_sd >= 0.0)) throw DomainError("sample_field: noise_sd must be >= 0");
  const double v = field_value(field, pos);
  return v + gaussian(rng, noise_sd);
}

double ground_truth_mean(const ScalarField& field, const ReferenceRegion& region, double resolution) {
  const double extent = region.size;
  if (!(region.size > 0.0)) throw ConfigError("region_size", "must be > 0");
  if (!(resolution > 0.0) || resolution >= extent) {
    throw ConfigError("gt_resolution", "must satisfy 0 < resolution < region dimension");
  }
  // Square bounding box of the region, side 2 * radius for disks.
  const double side = region.shape == RegionShape::Disk ? 2.0 * region.size : region.size;
  const auto cells = static_cast<long>(std::ceil(side / resolution));
  const double step = side / static_cast<double>(cells);
  const Vec2 corner = region.center - Vec2{0.5 * side, 0.5 * side};
  double sum = 0.0;
  long count = 0;
  for (long r = 0; r < cells; ++r) {
    const double y = corner.y + (static_cast<double>(r) + 0.5) * step;
    for (long c = 0; c < cells; ++c) {
      const Vec2 p{corner.x + (static_cast<double>(c) + 0.5) * step, y};
      if (!region.contains(p)) continue;
      sum += field_value(field, p);
      ++count;
    }
  }
  if (count == 0) throw ConfigError("gt_resolution", "no quadrature cell falls inside the region");
  return sum / static_cast<double>(count);
}

GridData parse_grid(const std::string& text) {
  std::istringstream in(text);
  GridData g;
  if (!(in >> g.rows >> g.cols >> g.cell_cm >> g.origin.x >> g.origin.y)) {
    throw ConfigError("grid_file", "malformed header, expected 'rows cols cell_cm origin_x origin_y'");
  }
  g.values.resize(g.rows * g.cols);
  for (double& v : g.values) {
    if (!(in >> v)) throw ConfigError("grid_file", "fewer values than rows * cols");
  }
  double extra = 0.0;
  if (in >> extra) throw ConfigError("grid_file", "more values than rows * cols");
  return g;
}

GridData load_grid(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("grid_file", "cannot open " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_grid(buf.str());
}

}  // namespace swarmest
