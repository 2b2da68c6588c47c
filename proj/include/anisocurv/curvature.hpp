// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/norm.hpp"
#include "anisocurv/projection.hpp"
#include "anisocurv/shapes.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace anisocurv {

struct CurvatureOptions {
  double r_frac = 0.1;         // probe offset as a fraction of the reach along the normal
  double r_cap_frac = 0.05;    // ... capped at this fraction of the diameter
  double fd_step_rel = 1e-4;   // tangent finite-difference step relative to the probe offset; widened to 1e-2 when round-off dominates
  double tol_inf = 1e-6;       // 1 - r chi below this means an infinite curvature
  double tol_kinv = 1e-4;      // probe r vs 2r agreement, scaled by 1 + |kappa|
  ReachOptions reach;
};

struct ChiResult {
  std::vector<double> chi;  // ascending
  Mat frame;                // columns: eigenvectors, orthonormal for the metric B
  Vec u;                    // Euclidean unit normal of the level set
  double r = 0.0;
  bool kink = false;   // stencil crossed a change of nearest-point regime
  double noise = 0.0;  // round-off bound on the entries of chi
};

/// Eigenvalues of the derivative of the Cahn-Hoffman map on the tangent space of the
/// level set through x.  Throws ProjectionNoise when a stencil point has several nearest points.
ChiResult chi_eigen(const Shape& shape, const Norm& norm, const Vec& x, const CurvatureOptions& opts = {});

/// chi / (1 - r chi), +inf when 1 - r chi <= tol_inf.
double kappa_from_chi(double chi, double r, double tol_inf = 1e-6);

struct BundleSample {
  Vec a;
  Vec eta;
  Vec u;
  double weight = 0.0;  // H^n quadrature weight on the normal bundle
  double reach = kInf;
  int stratum_d = 0;  // number of finite curvatures
  std::vector<double> kappa;  // ascending, +inf entries last
  Mat tau;                    // eigenframe, columns matching kappa
  double jacobian = 1.0;
  // Diagnostics.
  double probe = 0.0;
  std::vector<double> kappa_audit;  // at probe 2r
  bool invariance_violation = false;
  bool ambiguous = false;
  int chart_stratum = 0;
  int chart = 0;
  int piece = 0;
};

std::vector<BundleSample> bundle_sample(const Shape& shape, const Norm& norm, int n_samples, std::uint64_t seed,
                                        const CurvatureOptions& opts = {});

struct CurvatureSpectrum {
  std::vector<double> E;  // E_0..E_n of the finite curvatures
  std::vector<double> H;  // H_0..H_n
  std::optional<std::vector<double>> h_pointwise;
};

/// n = kappa.size(); entries equal to +inf are the dropped directions.
CurvatureSpectrum mean_curvatures(const std::vector<double>& kappa);
CurvatureSpectrum mean_curvatures(const BundleSample& sample);

/// Curvatures at a single bundle point, probed at min(r_frac * reach, r_cap).
std::vector<double> kappa_at(const Shape& shape, const Norm& norm, const Vec& a, const Vec& eta, const CurvatureOptions& opts = {});

/// S_k of D(grad phi o n)(a) from finite differences of neighbouring boundary normals.
std::vector<double> pointwise_h(const Shape& shape, const Norm& norm, const Vec& a);

/// Wedge-ratio Jacobian from an eigenframe and its curvatures.
double bundle_jacobian(const Mat& tau, const std::vector<double>& kappa);

}  // namespace anisocurv
