// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/measures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anisocurv {

struct TheoremVerdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // relative error for identities, slack for inequalities
  double tolerance = 0.0;
  bool pass = false;
  bool infinite = false;  // inequality side diverged (flat boundary parts)
  bool equality = false;  // inequality attained within the equality tolerance
  std::optional<ErrorCode> error;
  std::vector<Vec> witnesses;
  std::string note;
};

/// x lies in the cone where S_1, ..., S_k are all nonnegative (tol absorbs rounding).
bool in_gamma_cone(const std::vector<double>& x, int k, double tol = 0.0);

/// Chain (S_i / C(n,i))^{1/i} >= (S_j / C(n,j))^{1/j} for 1 <= i <= j <= k.  Throws PreconditionFailed outside the cone.
TheoremVerdict maclaurin_check(const std::vector<double>& x, int k, double tol = 1e-12);

/// (n-r+1) int phi J H_{r-1} against r int (a.u) J H_r.
TheoremVerdict minkowski_check(const Shape& shape, const Norm& norm, int r, const std::vector<BundleSample>& bundle, double tol = 5e-3);

/// int (a.u) J H_0 against (n+1) times the volume.
TheoremVerdict minkowski_volume_check(const Shape& shape, const Norm& norm, const std::vector<BundleSample>& bundle, double tol = 1e-2);

struct HeintzeKarcherOptions {
  double tol = 5e-3;        // slack >= -tol * (n+1) L
  double tol_eq = 5e-3;     // |slack| <= tol_eq * (n+1) L counts as equality
  double tol_sign = 1e-6;   // mean curvature below -tol_sign violates the precondition
};

/// Inequality n int phi(n) / h_1 >= (n+1) L for the set C, evaluated on the bundle of its complement.
/// A negative mean curvature sets error = PreconditionFailed and lists the offending points.
TheoremVerdict heintze_karcher_check(const Shape& shape, const Norm& norm, const std::vector<BundleSample>& complement_bundle,
                                     const HeintzeKarcherOptions& opts = {});

/// h_i >= -tol at Alexandrov samples for i < r and H_r >= -tol on every sample.
TheoremVerdict mean_convexity_ledger(const Shape& shape, const Norm& norm, int r, const std::vector<BundleSample>& bundle,
                                     double tol = 1e-6);

struct BubbleOptions {
  double tol_const = 1e-3;  // relative spread of H_r on the top stratum
  double tol_rad = 1e-2;
  double tol_fit = 1e-3;    // times the radius
  double tol_sing = 1e-3;   // fraction of total bundle weight
  int perimeter_samples = 4000;
  bool check_reach_gap = true;
};

struct BubbleVerdict {
  bool is_bubble_union = false;
  int count = 0;
  std::vector<Vec> centers;
  double radius = 0.0;
  double lambda = 0.0;
  double rho_volume = 0.0;     // (n+1) L / P
  double rho_algebraic = 0.0;  // C(n,r)^{1/r} (lambda (r+1))^{-1/r}
  double radius_consistency_volume = 0.0;
  double radius_consistency_algebraic = 0.0;
  double curvature_spread = 0.0;
  double singular_fraction = 0.0;
  double max_fit_residual = 0.0;
  std::optional<bool> reach_gap_ok;
  std::string failure_reason;
};

/// Failure reasons, in the order they are tested.
inline constexpr const char* kSingularBudget = "singular-set budget exceeded";
inline constexpr const char* kNotConstant = "mean curvature not constant";
inline constexpr const char* kNonPositive = "mean curvature not positive";
inline constexpr const char* kRadiusMismatch = "radius relations disagree";
inline constexpr const char* kFitFailed = "components are not scaled Wulff shapes";

BubbleVerdict alexandrov_classify(const Shape& shape, const Norm& norm, int r, const std::vector<BundleSample>& bundle,
                                  const BubbleOptions& opts = {});

/// If h_1 >= n / rho with rho = (n+1) L / P on Alexandrov samples, the classifier must report a bubble union.
TheoremVerdict lower_bound_rigidity(const Shape& shape, const Norm& norm, const std::vector<BundleSample>& bundle, double tol = 1e-3);

}  // namespace anisocurv
