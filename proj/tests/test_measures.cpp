// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/measures.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace anisocurv;
using oracle::kPi;
using oracle::v2;
using oracle::v3;

namespace {

Mat diag2(double a, double b) {
  Mat q = Mat::Zero(2, 2);
  q(0, 0) = a;
  q(1, 1) = b;
  return q;
}

Shape unit_square() { return Shape::polytope({v2(-.5, -.5), v2(.5, -.5), v2(.5, .5), v2(-.5, .5)}); }
Shape unit_cube() {
  std::vector<Vec> vs;
  for (int i = 0; i < 8; ++i) vs.push_back(v3(i & 1 ? .5 : -.5, i & 2 ? .5 : -.5, i & 4 ? .5 : -.5));
  return Shape::polytope(vs);
}
Shape two_balls(double gap) { return Shape::disjoint_union({Shape::ball(v2(-1 - gap / 2, 0), 1), Shape::ball(v2(1 + gap / 2, 0), 1)}); }
Shape parallel_segments() { return Shape::segment_union({{v2(-2, 1), v2(2, 1)}, {v2(-2, -1), v2(2, -1)}}); }

double theta(const Shape& s, const Norm& n, int m, const std::vector<BundleSample>& bundle) {
  return curvature_measure(s, n, m, {}, bundle).theta_total;
}

}  // namespace

TEST(VoxelTube, Annulus) {
  const TubeRecord rec = voxel_tube_volume(Shape::ball(v2(0, 0), 1), Norm::euclidean(2), {0.5});
  EXPECT_NEAR(rec.voxel_volume[0], kPi * (2.25 - 1.0), 0.01 * 3.927);
  EXPECT_LE(std::abs(rec.voxel_volume[0] - kPi * 1.25), rec.voxel_error[0]);
  EXPECT_EQ(rec.method, "voxel");
}

TEST(VoxelTube, SquareOffset) {
  const TubeRecord rec = voxel_tube_volume(unit_square(), Norm::euclidean(2), {0.25});
  EXPECT_NEAR(rec.voxel_volume[0], oracle::convex_offset_area(1.0, 4.0, 0.25) - 1.0, 0.01 * 1.196);
}

TEST(VoxelTube, TwoBallsBeyondReach) {
  const TubeRecord rec = voxel_tube_volume(two_balls(1.0), Norm::euclidean(2), {2.0});
  const double expect = oracle::two_disc_union_area(3.0, 3.0) - 2 * kPi;
  EXPECT_NEAR(rec.voxel_volume[0], expect, 0.01 * expect);
}

TEST(VoxelTube, NondecreasingAndThreadIndependent) {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  const Shape s = Shape::cap_lens(0.5);
  const Norm q = Norm::ellipsoidal(diag2(4, 1));
  set_threads(1);
  const TubeRecord a = voxel_tube_volume(s, q, grid);
  set_threads(3);
  const TubeRecord b = voxel_tube_volume(s, q, grid);
  set_threads(0);
  EXPECT_EQ(a.voxel_volume, b.voxel_volume);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GE(a.voxel_volume[i], a.voxel_volume[i - 1]);
}

TEST(VoxelTube, BudgetExceeded) {
  VoxelOptions opts;
  opts.h = 1e-4;
  opts.voxel_cap = 1000;
  opts.monte_carlo_fallback = false;
  try {
    voxel_tube_volume(Shape::ball(v2(0, 0), 1), Norm::euclidean(2), {0.5}, opts);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::budget_exceeded);
  }
  opts.monte_carlo_fallback = true;
  opts.mc_points = 2000000;
  const TubeRecord mc = voxel_tube_volume(Shape::ball(v2(0, 0), 1), Norm::euclidean(2), {0.5}, opts);
  EXPECT_EQ(mc.method, "monte-carlo");
  EXPECT_NEAR(mc.voxel_volume[0], kPi * 1.25, 3 * mc.voxel_error[0] + 1e-3);
}

TEST(SteinerPredict, ConvexExamples) {
  const Norm e = Norm::euclidean(2);
  const std::vector<double> grid = {0.1, 0.5, 1.0, 2.0, 5.0};
  const auto sq = steiner_predict(e, bundle_sample(unit_square(), e, 400, 1), grid, true);
  const auto disk = steiner_predict(e, bundle_sample(Shape::ball(v2(0, 0), 1), e, 400, 1), grid, true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    EXPECT_NEAR(sq[i], 4 * r + kPi * r * r, 1e-6 * (1 + r * r));
    EXPECT_NEAR(disk[i], 2 * kPi * r + kPi * r * r, 1e-6 * (1 + r * r));
  }
  const auto c = steiner_coefficients(e, bundle_sample(Shape::ball(v2(0, 0), 1), e, 400, 1));
  EXPECT_NEAR(c[0], 2 * kPi, 1e-6);
  EXPECT_NEAR(c[1], kPi, 1e-6);
}

TEST(SteinerPredict, ParallelSegmentsTruncate) {
  const Norm e = Norm::euclidean(2);
  const Shape s = parallel_segments();
  const auto bundle = bundle_sample(s, e, 2000, 2);
  const double pred = steiner_predict(e, bundle, {2.0}, true)[0];
  const double untrunc = steiner_predict(e, bundle, {2.0}, false)[0];
  const TubeRecord vox = voxel_tube_volume(s, e, {2.0});
  EXPECT_NEAR(pred, vox.voxel_volume[0], 0.02 * vox.voxel_volume[0]);
  // Without truncation the strip between the segments is counted twice.
  EXPECT_GT(untrunc - pred, 7.0);
}

TEST(SteinerPredict, MatchesVoxelsOnCatalog) {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.2 * i);
  for (const Norm& n : {Norm::euclidean(2), Norm::ellipsoidal(diag2(4, 1))})
    for (const Shape& s : {Shape::ellipsoid(v2(0, 0), v2(2, 1)), Shape::cap_lens(0.5), two_balls(1.0)}) {
      TubeRecord rec = voxel_tube_volume(s, n, grid);
      attach_prediction(rec, n, bundle_sample(s, n, 2000, 3));
      for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_LE(std::abs(rec.steiner_prediction[i] - rec.voxel_volume[i]), 0.01 * rec.voxel_volume[i] + 3 * rec.voxel_error[i]);
    }
}

TEST(FitTubePolynomial, RecoversCoefficients) {
  std::vector<double> rho, vol;
  for (int i = 1; i <= 30; ++i) {
    const double r = 0.05 * i;
    rho.push_back(r);
    vol.push_back(3.0 * r - 0.5 * r * r + 0.25 * r * r * r);
  }
  const auto c = fit_tube_polynomial(rho, vol, 3);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], 3.0, 1e-9);
  EXPECT_NEAR(c[1], -0.5, 1e-9);
  EXPECT_NEAR(c[2], 0.25, 1e-9);
}

TEST(FitTubePolynomial, VoxelFitMatchesBundleCoefficients) {
  const Norm q = Norm::ellipsoidal(diag2(4, 1));
  const Shape s = Shape::ellipsoid(v2(0, 0), v2(1, 2));
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
  const auto fit = fit_tube_polynomial(grid, voxel_tube_volume(s, q, grid).voxel_volume, 2);
  const auto c = steiner_coefficients(q, bundle_sample(s, q, 2000, 4));
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(fit[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)], 0.02 * std::abs(c[static_cast<std::size_t>(j)]));
}

TEST(VolumeDerivatives, DiskHasNoJump) {
  const Norm e = Norm::euclidean(2);
  const Shape disk = Shape::ball(v2(0, 0), 1);
  const VolumeDerivatives b = volume_derivatives(e, bundle_sample(disk, e, 400, 5), 0.5);
  EXPECT_NEAR(b.plus, 2 * kPi * 1.5, 1e-6);
  EXPECT_EQ(b.jump, 0.0);
  const VolumeDerivatives v = voxel_derivatives(disk, e, 0.5, 0.05);
  EXPECT_NEAR(v.plus, 3 * kPi, 0.02 * 3 * kPi);
  EXPECT_NEAR(v.minus, 3 * kPi, 0.02 * 3 * kPi);
}

TEST(VolumeDerivatives, ParallelSegmentsJumpAtMidline) {
  const Norm e = Norm::euclidean(2);
  const auto bundle = bundle_sample(parallel_segments(), e, 2000, 6);
  const VolumeDerivatives at = volume_derivatives(e, bundle, 1.0);
  EXPECT_NEAR(at.jump, 8.0, 0.02 * 8.0);
  EXPECT_NEAR(at.minus - at.plus, at.jump, 1e-12);
  EXPECT_EQ(volume_derivatives(e, bundle, 0.5).jump, 0.0);
  EXPECT_EQ(volume_derivatives(e, bundle, 1.5).jump, 0.0);
}

TEST(VolumeDerivatives, TwoBallsJumpOnlyAtReach) {
  const Norm e = Norm::euclidean(2);
  const auto bundle = bundle_sample(two_balls(1.0), e, 4000, 7);
  EXPECT_GT(volume_derivatives(e, bundle, 0.5, {}, 1e-3).jump, 0.0);
  EXPECT_EQ(volume_derivatives(e, bundle, 0.4).jump, 0.0);
}

TEST(PhiPerimeter, Examples) {
  EXPECT_NEAR(phi_perimeter(Shape::ball(v2(0, 0), 1), Norm::euclidean(2)), 2 * kPi, 1e-9);
  EXPECT_NEAR(phi_perimeter(unit_square(), Norm::euclidean(2)), 4.0, 1e-9);
  const Norm q = Norm::ellipsoidal(diag2(4, 1));
  EXPECT_NEAR(phi_perimeter(Shape::ball(v2(0, 0), 1), q), oracle::polygon_phi_perimeter_ellipse(q, 1, 1, 200000), 1e-6);
  EXPECT_NEAR(phi_perimeter(Shape::ellipsoid(v2(0, 0), v2(1, 2)), q), oracle::polygon_phi_perimeter_ellipse(q, 1, 2, 200000), 1e-6);
  try {
    phi_perimeter(parallel_segments(), Norm::euclidean(2));
    FAIL() << "expected EmptyInterior";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::empty_interior);
  }
}

TEST(PhiPerimeter, EqualsBundleIntegral) {
  for (const Norm& n : {Norm::ellipsoidal(diag2(4, 1)), Norm::smoothed_lp(2, 4.0)})
    for (const Shape& s : {Shape::cap_lens(0.5), unit_square(), two_balls(1.0)}) {
      const double p = phi_perimeter(s, n);
      EXPECT_NEAR(theta(s, n, 1, bundle_sample(s, n, 2000, 8)), p, 1e-4 * p);
    }
}

TEST(CurvatureMeasure, SquareAndDisk) {
  const Norm e = Norm::euclidean(2);
  const auto sq = bundle_sample(unit_square(), e, 400, 1);
  EXPECT_NEAR(theta(unit_square(), e, 1, sq), 4.0, 1e-9);
  EXPECT_NEAR(theta(unit_square(), e, 0, sq), kPi, 1e-6);
  const Shape disk = Shape::ball(v2(0, 0), 1);
  const auto db = bundle_sample(disk, e, 400, 1);
  EXPECT_NEAR(theta(disk, e, 1, db), 2 * kPi, 1e-6);
  EXPECT_NEAR(theta(disk, e, 0, db), kPi, 1e-6);
}

TEST(CurvatureMeasure, FanRouteAgreesWithBundle) {
  const Norm e2 = Norm::euclidean(2), e3 = Norm::euclidean(3);
  const Shape tri = Shape::polytope({v2(0, 0), v2(3, 0), v2(0.5, 2)});
  for (const Shape& s : {unit_square(), tri}) {
    const auto fan = fan_curvature_measures(s, e2);
    const auto bundle = bundle_sample(s, e2, 1000, 2);
    for (int m = 0; m <= 1; ++m) EXPECT_NEAR(theta(s, e2, m, bundle), fan[static_cast<std::size_t>(m)], 5e-3 * fan[static_cast<std::size_t>(m)]);
  }
  const auto fan = fan_curvature_measures(unit_cube(), e3);
  EXPECT_NEAR(fan[2], 6.0, 1e-12);
  // Tube volume of the unit cube: 6 rho + 3 pi rho^2 + 4 pi rho^3 / 3.
  EXPECT_NEAR(fan[1], 3 * kPi, 1e-9);
  EXPECT_NEAR(fan[0], 4 * kPi / 3, 1e-9);
  const auto bundle = bundle_sample(unit_cube(), e3, 6000, 3);
  for (int m = 0; m <= 2; ++m) EXPECT_NEAR(theta(unit_cube(), e3, m, bundle), fan[static_cast<std::size_t>(m)], 5e-3 * fan[static_cast<std::size_t>(m)]);
  EXPECT_THROW(fan_curvature_measures(unit_square(), Norm::ellipsoidal(diag2(4, 1))), Error);
}

TEST(CurvatureMeasure, WindowsAndBreakdown) {
  const Norm e = Norm::euclidean(2);
  const auto bundle = bundle_sample(unit_square(), e, 400, 4);
  Window right{"right", Box{v2(0.4, -1), v2(1, 1)}, std::nullopt, 0.0, {}};
  Window vertices{"vertices", std::nullopt, std::nullopt, 0.0, {0}};
  const CurvatureReport r = curvature_measure(unit_square(), e, 0, {right, vertices}, bundle);
  EXPECT_NEAR(r.theta_on.at("right"), kPi / 2, 1e-6);
  EXPECT_NEAR(r.theta_on.at("vertices"), kPi, 1e-6);
  ASSERT_EQ(r.stratum_breakdown.size(), 2u);
  EXPECT_NEAR(r.stratum_breakdown[0], kPi, 1e-6);
  EXPECT_NEAR(r.stratum_breakdown[1], 0.0, 1e-12);
  // The box also holds 0.1 of the top and bottom edges.
  Window cap{"cap", std::nullopt, v2(1, 0), kPi / 4, {}};
  const CurvatureReport r1 = curvature_measure(unit_square(), e, 1, {right, cap}, bundle);
  EXPECT_NEAR(r1.theta_on.at("right"), 1.2, 0.01);
  EXPECT_NEAR(r1.theta_on.at("cap"), 1.0, 1e-9);
  EXPECT_NEAR(curvature_measure(unit_square(), e, 0, {cap}, bundle).theta_on.at("cap"), kPi / 4, 0.02);
}

TEST(CurvatureMeasure, StrataCoverageGap) {
  const Norm e = Norm::euclidean(2);
  auto bundle = bundle_sample(unit_square(), e, 400, 4);
  std::erase_if(bundle, [](const BundleSample& b) { return b.chart_stratum == 0; });
  try {
    curvature_measure(unit_square(), e, 0, {}, bundle);
    FAIL() << "expected StrataCoverageGap";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::strata_coverage_gap);
  }
}

// Properties.

TEST(MeasureProperties, TopMeasureNonnegativeAndConvexAllNonnegative) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-2.5, 2.5);
  for (const Norm& n : {Norm::euclidean(2), Norm::ellipsoidal(diag2(4, 1))})
    for (const Shape& s : {Shape::cap_lens(0.25), two_balls(1.0), two_balls(1.0).complement(), unit_square()}) {
      const auto bundle = bundle_sample(s, n, 1000, 6);
      std::vector<Window> windows;
      for (int i = 0; i < 10; ++i) {
        const double x = c(rng), y = c(rng);
        windows.push_back(Window{"w" + std::to_string(i), Box{v2(x, y), v2(x + 1, y + 1)}, std::nullopt, 0.0, {}});
      }
      const CurvatureReport top = curvature_measure(s, n, 1, windows, bundle);
      for (const auto& [name, v] : top.theta_on) EXPECT_GE(v, 0.0) << name;
      if (s.is_convex()) {
        EXPECT_GE(theta(s, n, 0, bundle), 0.0);
      }
    }
}

TEST(MeasureProperties, ComplementHasNegativeLowerMeasure) {
  const Norm e = Norm::euclidean(2);
  const Shape k = Shape::ball(v2(0, 0), 1).complement();
  EXPECT_NEAR(theta(k, e, 0, bundle_sample(k, e, 400, 7)), -kPi, 1e-6);
}

TEST(MeasureProperties, LocalBoundOnEdges) {
  // |Theta_0 on a window around part of an edge| is zero; on the top index it equals the length.
  const Norm e = Norm::euclidean(2);
  const auto bundle = bundle_sample(unit_square(), e, 400, 8);
  Window mid{"mid", Box{v2(-0.25, -0.6), v2(0.25, -0.4)}, std::nullopt, 0.0, {}};
  EXPECT_NEAR(curvature_measure(unit_square(), e, 0, {mid}, bundle).theta_on.at("mid"), 0.0, 1e-12);
  EXPECT_NEAR(curvature_measure(unit_square(), e, 1, {mid}, bundle).theta_on.at("mid"), 0.5, 0.02);
}
