// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/norm.hpp"
#include "anisocurv/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anisocurv {

namespace detail {
class Piece;
struct Chart;
}  // namespace detail

enum class Membership { inside, boundary, outside };

/// Euclidean unit normals at a boundary point.  For arcs the two entries are the
/// arc endpoints (the arc runs counter-clockwise from the first to the second);
/// for patches the entries are the cone generators in cyclic order.
enum class FiberKind { single, antipodal_pair, arc, patch, empty };

struct FiberDescriptor {
  FiberKind kind = FiberKind::single;
  std::vector<Vec> normals;
};

struct BoundarySample {
  Vec point;
  double weight = 0.0;  // H^m weight on the stratum
  int stratum = 0;      // m
  FiberDescriptor fiber;
};

struct Box {
  Vec lo;
  Vec hi;
  double diameter() const { return (hi - lo).norm(); }
};

/// A closed subset of R^d built from convex primitives: a single primitive, a
/// disjoint union of primitives, or the closed complement of such a union.
class Shape {
 public:
  static Shape ball(const Vec& center, double radius);
  static Shape ellipsoid(const Vec& center, const Vec& semiaxes);
  /// center + radius * W, with W the Wulff shape of `norm`.
  static Shape wulff_body(const Norm& norm, const Vec& center, double radius);
  /// Convex hull of the vertices.  In d = 2 two vertices give a segment.
  static Shape polytope(const std::vector<Vec>& vertices);
  static Shape segment_union(const std::vector<std::pair<Vec, Vec>>& segments);
  /// Intersection of the unit disks centred at (0, eps) and (0, -eps), 0 < eps < 1.
  static Shape cap_lens(double eps);
  /// Components must be pairwise at Euclidean distance >= 1e-6.
  static Shape disjoint_union(const std::vector<Shape>& parts);

  /// Closure of the complement of the interior.
  Shape complement() const;

  int dim() const;
  bool is_complement() const { return complement_; }
  bool is_convex() const;
  bool has_interior() const;
  std::size_t component_count() const { return pieces_.size(); }
  std::string kind() const;

  Membership membership(const Vec& x, double tol = 1e-9) const;
  /// Quasi-uniform boundary samples; lower strata are listed with their own H^m weights.
  std::vector<BoundarySample> sample_boundary(int n_samples, std::uint64_t seed) const;
  /// Closed-form nearest point and distance, when available, for x outside the shape.
  std::optional<std::pair<Vec, double>> exact_projection(const Norm& norm, const Vec& x) const;

  Box bounding_box() const;
  double diameter() const { return bounding_box().diameter(); }
  /// Lebesgue measure of the set (not defined for complements).
  std::optional<double> volume() const;
  /// Smallest pairwise phi*-distance between components (+inf for one component).
  double min_gap(const Norm& norm) const;

  const std::vector<std::shared_ptr<const detail::Piece>>& pieces() const { return pieces_; }

 private:
  Shape() = default;
  std::vector<std::shared_ptr<const detail::Piece>> pieces_;
  bool complement_ = false;
  std::string kind_;
};

}  // namespace anisocurv
