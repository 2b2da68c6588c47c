// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/norm.hpp"
#include "anisocurv/shapes.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace anisocurv::detail {

/// A parametrization s in [0,1]^dims -> (boundary point a, Euclidean unit normal u)
/// covering one piece of the unit normal bundle.
struct Chart {
  int stratum = 0;  // H^m dimension of the position image
  int dims = 1;
  std::array<bool, 2> periodic{false, false};
  /// Upper bound on quadrature nodes per parameter (lower strata need few).
  std::array<int, 2> node_cap{1 << 20, 1 << 20};
  /// Ratio of node counts, second parameter over first.
  double aspect = 1.0;
  /// Rough bundle measure, used to share the sample budget.
  double size = 1.0;
  std::function<void(const std::array<double, 2>& s, Vec& a, Vec& u)> map;
};

struct Foot {
  Vec point;
  double delta = 0.0;
};

/// One convex primitive.  All primitives are compact and convex; segments have no interior.
class Piece {
 public:
  virtual ~Piece() = default;
  virtual int dim() const = 0;
  virtual std::string kind() const = 0;
  virtual bool has_interior() const { return true; }
  /// Negative inside, positive outside, roughly Euclidean distance scale near the boundary.
  virtual double level(const Vec& x) const = 0;
  virtual double support(const Vec& u) const = 0;
  virtual Box box() const = 0;
  virtual double volume() const = 0;
  virtual bool closed_form(const Norm& norm) const = 0;
  /// Nearest point for x outside the piece (x may lie on the boundary).
  virtual Foot project_outside(const Norm& norm, const Vec& x) const = 0;
  /// Nearest boundary points for x in the interior; ties within tol_eq are all returned.
  virtual std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const = 0;
  virtual std::vector<Chart> charts() const = 0;
  virtual std::vector<BoundarySample> boundary_samples(int count, double shift) const = 0;
  /// Euclidean normal cone at a boundary point.
  virtual FiberDescriptor fiber_at(const Vec& a) const = 0;
  /// Boundary points where the normal cone is not a single ray (corners, edges, vertices).
  virtual std::vector<Vec> singular_points() const { return {}; }
};

/// Smooth strictly convex body described by its support function.
class SmoothConvex : public Piece {
 public:
  virtual Vec support_point(const Vec& u) const = 0;
  Foot project_outside(const Norm& norm, const Vec& x) const override;
  std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const override;
  std::vector<Chart> charts() const override;
  std::vector<BoundarySample> boundary_samples(int count, double shift) const override;

 protected:
  /// Roots u of (x - s(u)) || grad phi(u) with (x - s(u)).u of the requested sign.
  std::vector<Foot> stationary_feet(const Norm& norm, const Vec& x, bool outside, int grid) const;
};

class BallPiece : public SmoothConvex {
 public:
  BallPiece(Vec center, double radius);
  int dim() const override { return static_cast<int>(center_.size()); }
  std::string kind() const override { return "ball"; }
  double level(const Vec& x) const override { return (x - center_).norm() - radius_; }
  double support(const Vec& u) const override { return center_.dot(u) + radius_ * u.norm(); }
  Vec support_point(const Vec& u) const override { return center_ + radius_ * u / u.norm(); }
  Box box() const override;
  double volume() const override;
  bool closed_form(const Norm& norm) const override { return norm.kind() == NormKind::euclidean; }
  Foot project_outside(const Norm& norm, const Vec& x) const override;
  std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const override;
  FiberDescriptor fiber_at(const Vec& a) const override;
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec center_;
  double radius_;
};

class EllipsoidPiece : public SmoothConvex {
 public:
  EllipsoidPiece(Vec center, Vec semiaxes);
  int dim() const override { return static_cast<int>(center_.size()); }
  std::string kind() const override { return "ellipsoid"; }
  double level(const Vec& x) const override;
  double support(const Vec& u) const override;
  Vec support_point(const Vec& u) const override;
  Box box() const override;
  double volume() const override;
  bool closed_form(const Norm&) const override { return false; }
  FiberDescriptor fiber_at(const Vec& a) const override;

 private:
  Vec center_;
  Vec axes_;
};

class WulffPiece : public SmoothConvex {
 public:
  WulffPiece(Norm norm, Vec center, double radius);
  int dim() const override { return norm_.dim(); }
  std::string kind() const override { return "wulff_body"; }
  double level(const Vec& x) const override;
  double support(const Vec& u) const override { return center_.dot(u) + radius_ * norm_.eval(u); }
  Vec support_point(const Vec& u) const override { return center_ + radius_ * norm_.grad(u); }
  Box box() const override;
  double volume() const override;
  bool closed_form(const Norm& norm) const override { return norm.same_as(norm_); }
  Foot project_outside(const Norm& norm, const Vec& x) const override;
  std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const override;
  FiberDescriptor fiber_at(const Vec& a) const override;
  const Norm& norm() const { return norm_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Norm norm_;
  Vec center_;
  double radius_;
};

/// Convex polygon (counter-clockwise) or, with two vertices, a segment.
class PolygonPiece : public Piece {
 public:
  explicit PolygonPiece(std::vector<Vec> ccw_vertices);
  int dim() const override { return 2; }
  std::string kind() const override { return is_segment() ? "segment" : "polygon"; }
  bool has_interior() const override { return !is_segment(); }
  bool is_segment() const { return verts_.size() == 2; }
  double level(const Vec& x) const override;
  double support(const Vec& u) const override;
  Box box() const override;
  double volume() const override;
  bool closed_form(const Norm& norm) const override { return norm.is_quadratic(); }
  Foot project_outside(const Norm& norm, const Vec& x) const override;
  std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const override;
  std::vector<Chart> charts() const override;
  std::vector<BoundarySample> boundary_samples(int count, double shift) const override;
  FiberDescriptor fiber_at(const Vec& a) const override;
  std::vector<Vec> singular_points() const override { return verts_; }
  const std::vector<Vec>& vertices() const { return verts_; }

 private:
  std::vector<Vec> verts_;
  std::vector<Vec> normals_;  // outward normal of edge i -> i+1
  std::vector<double> offsets_;
};

class PolytopePiece : public Piece {
 public:
  explicit PolytopePiece(const std::vector<Vec>& points);
  int dim() const override { return 3; }
  std::string kind() const override { return "polytope"; }
  double level(const Vec& x) const override;
  double support(const Vec& u) const override;
  Box box() const override;
  double volume() const override;
  bool closed_form(const Norm& norm) const override { return norm.is_quadratic(); }
  Foot project_outside(const Norm& norm, const Vec& x) const override;
  std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const override;
  std::vector<Chart> charts() const override;
  std::vector<BoundarySample> boundary_samples(int count, double shift) const override;
  FiberDescriptor fiber_at(const Vec& a) const override;
  std::vector<Vec> singular_points() const override { return verts_; }

  struct Face {
    Vec normal;
    double offset = 0.0;
    std::vector<int> verts;  // counter-clockwise seen from outside
    double area = 0.0;
  };
  struct Edge {
    int v0 = 0, v1 = 0;
    int f0 = 0, f1 = 0;  // the arc of normals runs from face f0 to face f1
  };
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vec>& vertices() const { return verts_; }
  /// Normals of the faces around vertex v in cyclic order.
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<Vec> verts_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> vertex_faces_;
};

class LensPiece : public Piece {
 public:
  explicit LensPiece(double eps);
  int dim() const override { return 2; }
  std::string kind() const override { return "cap_lens"; }
  double level(const Vec& x) const override;
  double support(const Vec& u) const override;
  Box box() const override;
  double volume() const override;
  bool closed_form(const Norm& norm) const override { return norm.kind() == NormKind::euclidean; }
  Foot project_outside(const Norm& norm, const Vec& x) const override;
  std::vector<Foot> project_inside(const Norm& norm, const Vec& x, double tol_eq) const override;
  std::vector<Chart> charts() const override;
  std::vector<BoundarySample> boundary_samples(int count, double shift) const override;
  FiberDescriptor fiber_at(const Vec& a) const override;
  std::vector<Vec> singular_points() const override;
  double eps() const { return eps_; }

 private:
  bool in_lens(const Vec& x) const;
  double eps_;
  double half_angle_;  // asin(eps)
  BallPiece upper_;    // its arc y >= 0 is the upper boundary
  BallPiece lower_;
};

/// Arc of unit vectors in the plane, counter-clockwise from `from` by `angle`.
Vec arc_point(const Vec& from, double angle, double t);
double ccw_angle(const Vec& from, const Vec& to);
/// Spherical interpolation between unit vectors in R^3 (angle < pi).
Vec slerp(const Vec& a, const Vec& b, double t);

}  // namespace anisocurv::detail
