// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/curvature.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace anisocurv {

/// Selector on the normal bundle: position box, cap of normals, strata.  Unset parts accept everything.
struct Window {
  std::string name;
  std::optional<Box> box;
  std::optional<Vec> cap_axis;  // Euclidean unit normals u with u . axis >= cos(cap_angle)
  double cap_angle = 0.0;
  std::set<int> strata;  // stratum_d values; empty means all
  bool contains(const BundleSample& s) const;
};

struct CurvatureReport {
  int m = 0;
  double theta_total = 0.0;
  double abs_total = 0.0;  // same integral with |H|
  std::map<std::string, double> theta_on;
  double quadrature_se = 0.0;
  std::vector<double> stratum_breakdown;  // indexed by stratum_d = 0..n, ambiguous samples left out
  double ambiguous_weight = 0.0;          // sum of J w over ambiguous samples
  double ambiguous_theta = 0.0;           // their share of theta_total
  std::optional<double> fan_total;  // exact normal-fan value (Euclidean polytopes)
};

/// 1/(n-m+1) times the bundle quadrature of phi(u) J H_{n-m}.
/// Throws StrataCoverageGap when a chart stratum of the shape has no samples.
CurvatureReport curvature_measure(const Shape& shape, const Norm& norm, int m, const std::vector<Window>& windows,
                                  const std::vector<BundleSample>& bundle);

/// Exact totals from faces and their external angles; index m = 0..n.
/// Only for polygons, segment unions and 3D polytopes under the Euclidean norm (PreconditionFailed otherwise).
std::vector<double> fan_curvature_measures(const Shape& shape, const Norm& norm);

/// Integral of phi(n) over the boundary.  Throws EmptyInterior.
double phi_perimeter(const Shape& shape, const Norm& norm, int n_samples = 4000);

struct VoxelOptions {
  double h = 0.0;                  // 0: diameter / 512 in the plane, / 128 in space
  long long voxel_cap = 50000000;  // beyond this: Monte-Carlo or BudgetExceeded
  bool monte_carlo_fallback = true;
  long long mc_points = 10000000;
  std::uint64_t seed = 0;
  /// One jittered point per voxel instead of the centre; removes grid-aligned bias in differences.
  bool stratified = false;
  /// Localized volume: only points whose nearest point lies in this box are counted.
  std::optional<Box> foot_window;
};

struct TubeRecord {
  std::vector<double> rho_grid;
  std::vector<double> voxel_volume;
  std::vector<double> voxel_error;
  std::vector<double> steiner_prediction;
  std::vector<double> residuals;  // relative, prediction vs voxel
  double h = 0.0;
  long long cells = 0;
  std::string method = "voxel";
};

/// Volume of {0 < delta <= rho} for every rho in the grid by counting voxel centres.
TubeRecord voxel_tube_volume(const Shape& shape, const Norm& norm, const std::vector<double>& rho_grid, const VoxelOptions& opts = {});

/// Sum_j 1/(j+1) int phi J min(rho, reach)^{j+1} H_j; with truncate = false the reach is ignored.
std::vector<double> steiner_predict(const Norm& norm, const std::vector<BundleSample>& bundle, const std::vector<double>& rho_grid,
                                    bool truncate);

/// Coefficients of rho^{j+1}, j = 0..n: 1/(j+1) int phi J H_j.
std::vector<double> steiner_coefficients(const Norm& norm, const std::vector<BundleSample>& bundle);

/// Least-squares coefficients c_0..c_{deg-1} of sum_j c_j rho^{j+1}.
std::vector<double> fit_tube_polynomial(const std::vector<double>& rho, const std::vector<double>& volume, int degree);

/// Fills steiner_prediction and residuals of a voxel record.
void attach_prediction(TubeRecord& rec, const Norm& norm, const std::vector<BundleSample>& bundle);

struct VolumeDerivatives {
  double plus = 0.0;
  double minus = 0.0;
  double jump = 0.0;
};

/// One-sided derivatives of the localized parallel volume.  Samples whose reach equals rho within
/// reach_tol * max(1, rho) count for the left derivative only.
VolumeDerivatives volume_derivatives(const Norm& norm, const std::vector<BundleSample>& bundle, double rho, const Window& window = {},
                                     double reach_tol = 1e-6);

/// One-sided derivatives of V at rho from voxel volumes: quadratic fits on each side over `points` steps.
VolumeDerivatives voxel_derivatives(const Shape& shape, const Norm& norm, double rho, double step, const VoxelOptions& opts = {},
                                    int points = 4);

}  // namespace anisocurv
