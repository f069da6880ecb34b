#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swarmest/engine.hpp"
#include "swarmest/environment.hpp"
#include "swarmest/errors.hpp"

using namespace swarmest;

namespace {

ReferenceRegion disk(double r, Vec2 c = {}) { return {RegionShape::Disk, r, c}; }
ReferenceRegion square(double l, Vec2 c = {}) { return {RegionShape::Square, l, c}; }

}  // namespace

TEST(Field, ConeValue) {
  const auto f = ScalarField::radial_cone({1.0, 2.0}, 2.0, 3.0);
  EXPECT_DOUBLE_EQ(field_value(f, {1.0, 2.0}), 3.0);
  EXPECT_DOUBLE_EQ(field_value(f, {4.0, 6.0}), 3.0 + 2.0 * 5.0);
}

TEST(Field, VShapeValuePeaksOnDiagonal) {
  const auto f = ScalarField::v_shape_ramp({0.0, 0.0}, 1.0, 10.0);
  EXPECT_DOUBLE_EQ(field_value(f, {5.0, 5.0}), 10.0);
  EXPECT_DOUBLE_EQ(field_value(f, {-3.0, -3.0}), 10.0);
  // (2, 0) lies sqrt(2) from the line y = x
  EXPECT_NEAR(field_value(f, {2.0, 0.0}), 10.0 - std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(field_value(f, {0.0, 2.0}), 10.0 - std::numbers::sqrt2, 1e-12);
}

TEST(Field, NoiselessSampleMatchesValue) {
  Rng rng = make_stream(1, 0);
  const auto f = ScalarField::radial_cone({}, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(sample_field(f, {3.0, 4.0}, 0.0, rng), 5.0);
}

TEST(Field, SampleNoiseHasRequestedSpread) {
  Rng rng = make_stream(3, 0);
  const auto f = ScalarField::radial_cone({}, 1.0, 0.0);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = sample_field(f, {3.0, 4.0}, 0.5, rng) - 5.0;
    sum += e;
    sq += e * e;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.005);
  EXPECT_NEAR(std::sqrt(sq / n), 0.5, 0.005);
}

TEST(Field, NonFinitePositionThrows) {
  Rng rng = make_stream(1, 0);
  const auto f = ScalarField::radial_cone({}, 1.0, 0.0);
  EXPECT_THROW(sample_field(f, {std::nan(""), 0.0}, 0.0, rng), DomainError);
  EXPECT_THROW(contour_coordinate(f, {INFINITY, 0.0}), DomainError);
}

TEST(GroundTruth, ConeOverDiskIsTwoThirdsRadius) {
  const auto f = ScalarField::radial_cone({}, 1.0, 0.0);
  for (double r : {10.0, 22.5, 45.0}) {
    EXPECT_NEAR(ground_truth_mean(f, disk(r), 0.05), 2.0 * r / 3.0, 2e-3 * r) << r;
  }
}

TEST(GroundTruth, ConstantFieldIsConstant) {
  const auto f = ScalarField::radial_cone({}, 0.0, 7.25);
  EXPECT_DOUBLE_EQ(ground_truth_mean(f, square(90.0), 1.0), 7.25);
  EXPECT_DOUBLE_EQ(ground_truth_mean(f, disk(12.0), 0.5), 7.25);
}

TEST(GroundTruth, ConeOverSquareMatchesMonteCarlo) {
  const auto f = ScalarField::radial_cone({}, 1.0, 0.0);
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(-45.0, 45.0);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += std::hypot(u(gen), u(gen));
  const double mc = sum / n;
  EXPECT_NEAR(ground_truth_mean(f, square(90.0), 0.5), mc, 0.005 * mc);
  // closed form L/6 (sqrt2 + ln(1 + sqrt2))
  EXPECT_NEAR(mc, 90.0 / 6.0 * (std::numbers::sqrt2 + std::log(1.0 + std::numbers::sqrt2)), 0.05);
}

TEST(GroundTruth, ResolutionMustBeBelowRegionSize) {
  const auto f = ScalarField::radial_cone({}, 1.0, 0.0);
  EXPECT_THROW(ground_truth_mean(f, square(10.0), 10.0), ConfigError);
  EXPECT_THROW(ground_truth_mean(f, square(10.0), 0.0), ConfigError);
  EXPECT_THROW(ground_truth_mean(f, disk(5.0), 7.0), ConfigError);
}

TEST(GroundTruth, TranslationInvariant) {
  const auto f0 = ScalarField::radial_cone({}, 1.5, 2.0);
  const Vec2 shift{13.7, -42.25};
  const auto f1 = ScalarField::radial_cone(shift, 1.5, 2.0);
  for (const auto& [r0, r1] : {std::pair{disk(20.0), disk(20.0, shift)}, std::pair{square(90.0), square(90.0, shift)}}) {
    EXPECT_NEAR(ground_truth_mean(f0, r0, 0.5), ground_truth_mean(f1, r1, 0.5), 1e-9);
  }
  const auto v0 = ScalarField::v_shape_ramp({}, 1.0, 30.0);
  const auto v1 = ScalarField::v_shape_ramp(shift, 1.0, 30.0);
  EXPECT_NEAR(ground_truth_mean(v0, disk(22.5), 0.5), ground_truth_mean(v1, disk(22.5, shift), 0.5), 1e-9);
}

TEST(Contour, ConeIsRadialDistance) {
  const auto f = ScalarField::radial_cone({1.0, 1.0}, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(contour_coordinate(f, {4.0, 5.0}), 5.0);
  EXPECT_DOUBLE_EQ(contour_coordinate(f, {1.0, 1.0}), 0.0);
}

TEST(Contour, RampIsDistanceToDiagonal) {
  const auto f = ScalarField::v_shape_ramp({}, 1.0, 0.0);
  EXPECT_NEAR(contour_coordinate(f, {1.0, -1.0}), std::numbers::sqrt2, 1e-12);
  EXPECT_DOUBLE_EQ(contour_coordinate(f, {3.0, 3.0}), 0.0);
  EXPECT_GT(signed_diagonal_offset(f, {1.0, -1.0}), 0.0);
  EXPECT_LT(signed_diagonal_offset(f, {-1.0, 1.0}), 0.0);
}

TEST(Contour, GridIsUnsupported) {
  GridData g;
  g.rows = 2;
  g.cols = 2;
  g.values = {0, 1, 2, 3};
  const auto f = ScalarField::from_grid(g);
  EXPECT_THROW(contour_coordinate(f, {0.5, 0.5}), UnsupportedMapping);
  EXPECT_THROW(contour_coordinate_of_value(f, 1.0), UnsupportedMapping);
}

TEST(Contour, PropertyConeSampleEqualsOffsetPlusSlopeTimesCoordinate) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  Rng rng = make_stream(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto f = ScalarField::radial_cone({u(gen), u(gen)}, 0.1 + std::abs(u(gen)) / 10.0, u(gen));
    const Vec2 p{u(gen), u(gen)};
    EXPECT_NEAR(sample_field(f, p, 0.0, rng), f.offset + f.slope * contour_coordinate(f, p), 1e-9);
  }
}

TEST(Contour, PropertyNonNegativeAndZeroOnlyOnCentreOrDiagonal) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  const auto cone = ScalarField::radial_cone({2.0, -3.0}, 1.0, 0.0);
  const auto ramp = ScalarField::v_shape_ramp({2.0, -3.0}, 1.0, 0.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p{u(gen), u(gen)};
    EXPECT_GT(contour_coordinate(cone, p), 0.0);
    EXPECT_GE(contour_coordinate(ramp, p), 0.0);
    const double t = u(gen);
    EXPECT_NEAR(contour_coordinate(ramp, Vec2{2.0 + t, -3.0 + t}), 0.0, 1e-12);
  }
  EXPECT_EQ(contour_coordinate(cone, {2.0, -3.0}), 0.0);
}

TEST(Contour, InverseMapping) {
  const auto cone = ScalarField::radial_cone({}, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(contour_coordinate_of_value(cone, 21.0), 10.0);
  const auto ramp = ScalarField::v_shape_ramp({}, 0.5, 30.0);
  EXPECT_DOUBLE_EQ(contour_coordinate_of_value(ramp, 25.0), 10.0);
}

TEST(Region, ContainsIsInclusive) {
  EXPECT_TRUE(disk(5.0).contains({3.0, 4.0}));
  EXPECT_FALSE(disk(5.0).contains({3.0, 4.0001}));
  EXPECT_TRUE(square(10.0).contains({5.0, -5.0}));
  EXPECT_FALSE(square(10.0).contains({5.0001, 0.0}));
}

TEST(Region, DefaultsToNinetyCmSquare) {
  const ReferenceRegion r;
  EXPECT_EQ(r.shape, RegionShape::Square);
  EXPECT_DOUBLE_EQ(r.size, 90.0);
  EXPECT_DOUBLE_EQ(r.reference_radius(), 45.0);
}

TEST(Region, DefaultSensorNoiseScalesWithSlopeAndRegion) {
  SimulationConfig c;
  c.field = ScalarField::radial_cone({}, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(c.resolved_sensor_noise(), 0.02 * 2.0 * 45.0);
  c.region = disk(22.5);
  EXPECT_DOUBLE_EQ(c.resolved_sensor_noise(), 0.02 * 2.0 * 22.5);
  c.sensor_noise_sd = 0.3;
  EXPECT_DOUBLE_EQ(c.resolved_sensor_noise(), 0.3);
}

TEST(Grid, ParseAndInterpolate) {
  const GridData g = parse_grid("2 3 10 0 0\n0 10 20\n30 40 50\n");
  EXPECT_EQ(g.rows, 2u);
  EXPECT_EQ(g.cols, 3u);
  const auto f = ScalarField::from_grid(g);
  EXPECT_DOUBLE_EQ(field_value(f, {0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(field_value(f, {20.0, 10.0}), 50.0);
  EXPECT_DOUBLE_EQ(field_value(f, {5.0, 0.0}), 5.0);
  EXPECT_DOUBLE_EQ(field_value(f, {5.0, 5.0}), (0.0 + 10.0 + 30.0 + 40.0) / 4.0);
  // clamped outside
  EXPECT_DOUBLE_EQ(field_value(f, {-50.0, -50.0}), 0.0);
  EXPECT_DOUBLE_EQ(field_value(f, {500.0, 500.0}), 50.0);
}

TEST(Grid, NearestWhenBilinearOff) {
  GridData g = parse_grid("1 2 1 0 0 4 8");
  g.bilinear = false;
  const auto f = ScalarField::from_grid(g);
  EXPECT_DOUBLE_EQ(field_value(f, {0.4, 0.0}), 4.0);
  EXPECT_DOUBLE_EQ(field_value(f, {0.6, 0.0}), 8.0);
}

TEST(Grid, MalformedInputThrows) {
  EXPECT_THROW(parse_grid("2 2 1 0"), ConfigError);
  EXPECT_THROW(parse_grid("2 2 1 0 0\n1 2 3"), ConfigError);
  EXPECT_THROW(parse_grid("1 1 1 0 0\n1 2"), ConfigError);
  EXPECT_THROW(load_grid("/nonexistent/grid.txt"), ConfigError);
  GridData bad;
  bad.rows = 2;
  bad.cols = 2;
  bad.values = {1.0};
  EXPECT_THROW(ScalarField::from_grid(bad), ConfigError);
}

TEST(Grid, GroundTruthOfLinearGridMatchesPlane) {
  // z = x on a 0..100 grid, mean over a centred square is the centre x
  std::string text = "11 11 10 0 0\n";
  for (int r = 0; r < 11; ++r) {
    for (int c = 0; c < 11; ++c) text += std::to_string(c * 10) + (c == 10 ? "\n" : " ");
  }
  const auto f = ScalarField::from_grid(parse_grid(text));
  EXPECT_NEAR(ground_truth_mean(f, square(40.0, {50.0, 50.0}), 0.5), 50.0, 1e-9);
}
