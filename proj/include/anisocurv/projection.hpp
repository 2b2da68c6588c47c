// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/norm.hpp"
#include "anisocurv/shapes.hpp"

#include <cstdint>
#include <vector>

namespace anisocurv {

enum class Multiplicity { unique, multiple, unresolved };

struct ProjectionOptions {
  double tol_multi_rel = 1e-4;  // feet farther apart than this * diameter are distinct
  double tol_eq_rel = 1e-7;     // distances within this * (1 + delta) tie
};

struct ProjectionResult {
  double delta = 0.0;
  Vec foot;
  Vec nu;  // (x - foot) / delta on the Wulff shape boundary; zero when delta = 0
  Multiplicity multiplicity = Multiplicity::unique;
  std::vector<Vec> feet;  // all distinct minimizers
  double residual = 0.0;  // |phi*(x - foot) - delta| / (1 + delta)
};

/// Nearest phi-projection onto the shape.  Points of the shape get delta = 0 and foot = x.
ProjectionResult project(const Shape& shape, const Norm& norm, const Vec& x, const ProjectionOptions& opts = {});
/// The phi-distance alone (no tie analysis).
double distance(const Shape& shape, const Norm& norm, const Vec& x);

struct ReachOptions {
  double tol_pred = 1e-8;
  double s_max_factor = 10.0;  // times the bounding-box diameter
  double s_min_factor = 1e-7;
  double bracket_rel = 1e-10;  // bisection stops at this * s_max
};

struct ReachBracket {
  double value = kInf;
  double lo = kInf;
  double hi = kInf;
};

/// sup{ s > 0 : delta(a + s eta) = s } by bisection; +inf when it holds at s_max.
ReachBracket reach_along(const Shape& shape, const Norm& norm, const Vec& a, const Vec& eta, const ReachOptions& opts = {});

struct ReachSample {
  Vec a;
  Vec eta;
  double reach = kInf;
};

struct ReachEstimate {
  std::vector<ReachSample> per_sample;
  double global = kInf;
  double lo = kInf;
  double hi = kInf;
  bool convex = false;
  int scan_points = 0;
  std::vector<Vec> witnesses;  // scan points with several nearest points below the estimate
};

ReachEstimate global_reach(const Shape& shape, const Norm& norm, int n_samples, std::uint64_t seed,
                           const ReachOptions& opts = {}, int scan_points = 10000);

enum class BoundaryClass { viscosity, non_viscosity, alexandrov };

struct BoundaryClassification {
  BoundaryClass cls = BoundaryClass::non_viscosity;
  Vec eta;  // phi-unit normal when the fiber is a single ray
  FiberDescriptor fiber;
};

BoundaryClassification classify_boundary_point(const Shape& shape, const Norm& norm, const Vec& a);

const char* to_string(BoundaryClass c) noexcept;
const char* to_string(Multiplicity m) noexcept;

}  // namespace anisocurv
