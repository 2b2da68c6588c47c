// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/shapes.hpp"

#include "numerics.hpp"
#include "pieces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace anisocurv {

using detail::Piece;

namespace {

std::vector<Vec> hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return (a - b).norm() == 0.0; }), pts.end());
  if (pts.size() < 2) return pts;
  double scale = 0.0;
  for (const Vec& p : pts) scale = std::max(scale, p.norm());
  const double tol = 1e-12 * (1.0 + scale) * (1.0 + scale);
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  for (const Vec& p : pts) {
    while (k >= 2 && detail::cross2(h[k - 1] - h[k - 2], p - h[k - 2]) <= tol) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && detail::cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// max over unit u of (-h_B(-u) - h_A(u)) / weight(u): the weighted separation of convex sets.
double separation(const Piece& a, const Piece& b, const std::function<double(const Vec&)>& weight) {
  const int d = a.dim();
  auto f = [&](const Vec& u) { return (-b.support(-u) - a.support(u)) / weight(u); };
  if (d == 2) {
    const int n = 720;
    double best = -kInf, best_t = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * i / n;
      const double v = f(detail::unit_circle(t));
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    double lo = best_t - 2.0 * std::numbers::pi / n, hi = best_t + 2.0 * std::numbers::pi / n;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
      const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
      if (f(detail::unit_circle(m1)) > f(detail::unit_circle(m2)))
        hi = m2;
      else
        lo = m1;
    }
    return std::max(best, f(detail::unit_circle(0.5 * (lo + hi))));
  }
  const auto pts = detail::sphere_points(3, 4000);
  double best = -kInf;
  Vec bu = pts[0];
  for (const Vec& u : pts) {
    const double v = f(u);
    if (v > best) {
      best = v;
      bu = u;
    }
  }
  // Coordinate refinement in the tangent plane with shrinking steps.
  double step = 0.05;
  while (step > 1e-10) {
    bool moved = false;
    const Mat e = detail::tangent_basis(bu);
    for (int j = 0; j < 2; ++j)
      for (double sgn : {-1.0, 1.0}) {
        Vec c = bu + sgn * step * e.col(j);
        c.normalize();
        const double v = f(c);
        if (v > best) {
          best = v;
          bu = c;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

Shape Shape::ball(const Vec& center, double radius) {
  if (center.size() != 2 && center.size() != 3) throw Error(ErrorCode::invalid_argument, "ball center must have 2 or 3 coordinates");
  Shape s;
  s.pieces_.push_back(std::make_shared<detail::BallPiece>(center, radius));
  s.kind_ = "ball";
  return s;
}

Shape Shape::ellipsoid(const Vec& center, const Vec& semiaxes) {
  if (center.size() != 2 && center.size() != 3) throw Error(ErrorCode::invalid_argument, "ellipsoid center must have 2 or 3 coordinates");
  Shape s;
  s.pieces_.push_back(std::make_shared<detail::EllipsoidPiece>(center, semiaxes));
  s.kind_ = "ellipsoid";
  return s;
}

Shape Shape::wulff_body(const Norm& norm, const Vec& center, double radius) {
  Shape s;
  s.pieces_.push_back(std::make_shared<detail::WulffPiece>(norm, center, radius));
  s.kind_ = "wulff_body";
  return s;
}

Shape Shape::polytope(const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::invalid_argument, "polytope needs vertices");
  const auto d = vertices[0].size();
  for (const Vec& v : vertices)
    if (v.size() != d || !v.allFinite()) throw Error(ErrorCode::invalid_argument, "polytope vertices must be finite with equal dimension");
  Shape s;
  if (d == 2) {
    auto h = hull_2d(vertices);
    if (h.size() < 2) throw Error(ErrorCode::invalid_argument, "polytope needs at least two distinct vertices");
    s.pieces_.push_back(std::make_shared<detail::PolygonPiece>(std::move(h)));
    s.kind_ = s.pieces_[0]->kind();
  } else if (d == 3) {
    s.pieces_.push_back(std::make_shared<detail::PolytopePiece>(vertices));
    s.kind_ = "polytope";
  } else {
    throw Error(ErrorCode::invalid_argument, "polytope vertices must have 2 or 3 coordinates");
  }
  return s;
}

Shape Shape::segment_union(const std::vector<std::pair<Vec, Vec>>& segments) {
  std::vector<Shape> parts;
  for (const auto& [p, q] : segments) {
    if (p.size() != 2 || q.size() != 2) throw Error(ErrorCode::invalid_argument, "segments live in the plane");
    parts.push_back(polytope({p, q}));
  }
  Shape s = disjoint_union(parts);
  s.kind_ = "segment_union";
  return s;
}

Shape Shape::cap_lens(double eps) {
  Shape s;
  s.pieces_.push_back(std::make_shared<detail::LensPiece>(eps));
  s.kind_ = "cap_lens";
  return s;
}

Shape Shape::disjoint_union(const std::vector<Shape>& parts) {
  if (parts.empty()) throw Error(ErrorCode::invalid_argument, "union needs at least one component");
  Shape s;
  for (const Shape& p : parts) {
    if (p.complement_) throw Error(ErrorCode::invalid_argument, "complements cannot be united");
    if (p.dim() != parts[0].dim()) throw Error(ErrorCode::invalid_argument, "union components must share the dimension");
    s.pieces_.insert(s.pieces_.end(), p.pieces_.begin(), p.pieces_.end());
  }
  auto unit = [](const Vec&) { return 1.0; };
  for (std::size_t i = 0; i < s.pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < s.pieces_.size(); ++j) {
      const double gap = separation(*s.pieces_[i], *s.pieces_[j], unit);
      if (!(gap >= 1e-6))
        throw Error(ErrorCode::invalid_argument,
                    "union components " + std::to_string(i) + " and " + std::to_string(j) + " are not separated by the 1e-6 margin");
    }
  s.kind_ = s.pieces_.size() == 1 ? s.pieces_[0]->kind() : "disjoint_union";
  return s;
}

Shape Shape::complement() const {
  if (complement_) throw Error(ErrorCode::invalid_argument, "shape is already a complement");
  for (const auto& p : pieces_)
    if (!p->has_interior()) throw Error(ErrorCode::empty_interior, "complement requires every component to have interior");
  Shape s = *this;
  s.complement_ = true;
  s.kind_ = "complement_of_" + kind_;
  return s;
}

int Shape::dim() const { return pieces_.front()->dim(); }

bool Shape::is_convex() const { return !complement_ && pieces_.size() == 1; }

bool Shape::has_interior() const {
  if (complement_) return true;
  return std::any_of(pieces_.begin(), pieces_.end(), [](const auto& p) { return p->has_interior(); });
}

std::string Shape::kind() const { return kind_; }

Membership Shape::membership(const Vec& x, double tol) const {
  if (x.size() != dim()) throw Error(ErrorCode::invalid_argument, "point dimension does not match the shape");
  Membership m = Membership::outside;
  for (const auto& p : pieces_) {
    const double l = p->level(x);
    if (l < -tol && p->has_interior()) {
      m = Membership::inside;
      break;
    }
    if (l <= tol) m = Membership::boundary;
  }
  if (!complement_) return m;
  if (m == Membership::inside) return Membership::outside;
  if (m == Membership::outside) return Membership::inside;
  return m;
}

std::vector<BoundarySample> Shape::sample_boundary(int n_samples, std::uint64_t seed) const {
  if (n_samples < 1) throw Error(ErrorCode::invalid_argument, "n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  const double shift = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  std::vector<BoundarySample> out;
  const int per = std::max(1, n_samples / static_cast<int>(pieces_.size()));
  for (const auto& p : pieces_) {
    auto part = p->boundary_samples(per, shift);
    if (complement_) {
      for (auto& b : part) {
        if (b.fiber.kind == FiberKind::single || b.fiber.kind == FiberKind::antipodal_pair) {
          for (Vec& n : b.fiber.normals) n = -n;
        } else {
          b.fiber = FiberDescriptor{FiberKind::empty, {}};
        }
      }
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::optional<std::pair<Vec, double>> Shape::exact_projection(const Norm& norm, const Vec& x) const {
  if (complement_ || norm.dim() != dim()) return std::nullopt;
  for (const auto& p : pieces_)
    if (!p->closed_form(norm)) return std::nullopt;
  if (membership(x, 0.0) == Membership::inside) return std::nullopt;
  std::pair<Vec, double> best{x, kInf};
  for (const auto& p : pieces_) {
    const detail::Foot f = p->project_outside(norm, x);
    if (f.delta < best.second) best = {f.point, f.delta};
  }
  return best;
}

Box Shape::bounding_box() const {
  Box b = pieces_.front()->box();
  for (const auto& p : pieces_) {
    const Box q = p->box();
    b.lo = b.lo.cwiseMin(q.lo);
    b.hi = b.hi.cwiseMax(q.hi);
  }
  return b;
}

std::optional<double> Shape::volume() const {
  if (complement_) return std::nullopt;
  double v = 0.0;
  for (const auto& p : pieces_) v += p->volume();
  return v;
}

double Shape::min_gap(const Norm& norm) const {
  double g = kInf;
  auto w = [&](const Vec& u) { return norm.eval(u); };
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) g = std::min(g, separation(*pieces_[i], *pieces_[j], w));
  return g;
}

}  // namespace anisocurv
