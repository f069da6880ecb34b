#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "swarmest/geometry.hpp"
#include "swarmest/rng.hpp"

namespace swarmest {

enum class FieldKind { RadialCone, VShapeRamp, Grid };

// Regular grid of intensity samples. Row r, column c sits at
// origin + (c * cell, r * cell).
struct GridData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double cell_cm = 1.0;
  Vec2 origin;
  std::vector<double> values;  // row-major
  bool bilinear = true;
};

// Environmental intensity field on the unbounded plane.
//
//   RadialCone:  z(p) = offset + slope * |p - center|
//   VShapeRamp:  z(p) = offset - slope * dist(p, diagonal through center)
//   Grid:        sampled values, clamped to the border outside the grid
//
// The VShapeRamp diagonal is the line through `center` with direction (1, 1).
struct ScalarField {
  FieldKind kind = FieldKind::RadialCone;
  Vec2 center;
  double slope = 1.0;
  double offset = 0.0;
  GridData grid;

  static ScalarField radial_cone(Vec2 center, double slope, double offset);
  static ScalarField v_shape_ramp(Vec2 center, double slope, double offset);
  static ScalarField from_grid(GridData grid);
};

enum class RegionShape { Disk, Square };

// Region over which the ground-truth mean is taken and retained robots are
// counted. `size` is the radius for a disk and the side length for a square.
struct ReferenceRegion {
  RegionShape shape = RegionShape::Square;
  double size = 90.0;
  Vec2 center;

  bool contains(const Vec2& p) const;
  // Radius-like extent used to scale default sensor noise.
  double reference_radius() const;
};

// Noiseless field value. Throws DomainError for non-finite positions.
double field_value(const ScalarField& field, const Vec2& pos);

// Field value plus N(0, noise_sd^2) noise drawn from the caller's stream.
double sample_field(const ScalarField& field, const Vec2& pos, double noise_sd, Rng& rng);

// Area average of the noiseless field over `region`, midpoint-rule
// quadrature on a grid of the given resolution (cells whose centre lies in
// the region are counted).
double ground_truth_mean(const ScalarField& field, const ReferenceRegion& region, double resolution);

// Position-to-contour mapping: distance to the cone centre, or the
// perpendicular distance to the ramp's diagonal. Grid fields throw
// UnsupportedMapping.
double contour_coordinate(const ScalarField& field, const Vec2& pos);

// Signed distance to the ramp diagonal (positive below-right of it). Only
// meaningful for VShapeRamp; used to tell the two ramp flanks apart.
double signed_diagonal_offset(const ScalarField& field, const Vec2& pos);

// Inverse of the field along the contour coordinate: the coordinate at
// which the noiseless field equals `value`.
double contour_coordinate_of_value(const ScalarField& field, double value);

// Plain-text grid: first line "rows cols cell_cm origin_x origin_y", then
// `rows` lines of `cols` space-separated intensities.
GridData load_grid(const std::filesystem::path& path);
GridData parse_grid(const std::string& text);

}  // namespace swarmest
