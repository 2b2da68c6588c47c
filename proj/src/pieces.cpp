// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "pieces.hpp"

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace anisocurv::detail {

namespace {

constexpr double kPi = std::numbers::pi;

Vec fd_derivative(const std::function<Vec(double)>& f, double t, double h) { return (f(t + h) - f(t - h)) / (2.0 * h); }

// Local maximization of f near u0 on the unit sphere S^2 (Nelder-Mead in tangent coordinates).
Vec nelder_mead_sphere(const std::function<double(const Vec&)>& f, const Vec& u0, double scale) {
  const Mat e = tangent_basis(u0);
  auto at = [&](const Eigen::Vector2d& p) {
    Vec v = u0 + e * Vec(p);
    return Vec(v / v.norm());
  };
  std::array<Eigen::Vector2d, 3> simplex{Eigen::Vector2d(0, 0), Eigen::Vector2d(scale, 0), Eigen::Vector2d(0, scale)};
  std::array<double, 3> val{};
  for (int i = 0; i < 3; ++i) val[static_cast<std::size_t>(i)] = -f(at(simplex[static_cast<std::size_t>(i)]));
  for (int it = 0; it < 400; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[static_cast<std::size_t>(a)] < val[static_cast<std::size_t>(b)]; });
    const auto best = static_cast<std::size_t>(idx[0]), mid = static_cast<std::size_t>(idx[1]), worst = static_cast<std::size_t>(idx[2]);
    if ((simplex[worst] - simplex[best]).norm() < 1e-14) break;
    const Eigen::Vector2d centroid = 0.5 * (simplex[best] + simplex[mid]);
    const Eigen::Vector2d refl = centroid + (centroid - simplex[worst]);
    const double fr = -f(at(refl));
    if (fr < val[best]) {
      const Eigen::Vector2d exp = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = -f(at(exp));
      if (fe < fr) {
        simplex[worst] = exp;
        val[worst] = fe;
      } else {
        simplex[worst] = refl;
        val[worst] = fr;
      }
    } else if (fr < val[mid]) {
      simplex[worst] = refl;
      val[worst] = fr;
    } else {
      const Eigen::Vector2d con = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = -f(at(con));
      if (fc < val[worst]) {
        simplex[worst] = con;
        val[worst] = fc;
      } else {
        for (std::size_t i = 0; i < 3; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          val[i] = -f(at(simplex[i]));
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (val[i] < val[best]) best = i;
  return at(simplex[best]);
}

// Gauss-Newton on (x - s(u)) parallel to grad phi(u), u on S^2.
bool polish_stationary(const SmoothConvex& body, const Norm& norm, const Vec& x, Vec& u) {
  auto residual = [&](const Vec& v) -> Vec {
    const Vec g = norm.grad(v);
    const Vec gh = g / g.norm();
    const Vec r = x - body.support_point(v);
    return r - r.dot(gh) * gh;
  };
  const double scale = 1.0 + (x - body.support_point(u)).norm();
  Vec r = residual(u);
  for (int it = 0; it < 40; ++it) {
    if (r.norm() <= 1e-15 * scale) return true;
    const Mat e = tangent_basis(u);
    Eigen::Matrix<double, 3, 2> jac;
    const double h = 1e-7;
    for (int j = 0; j < 2; ++j) {
      Vec up = u + h * e.col(j);
      Vec um = u - h * e.col(j);
      jac.col(j) = (residual(up / up.norm()) - residual(um / um.norm())) / (2.0 * h);
    }
    const Eigen::Vector2d step = -jac.colPivHouseholderQr().solve(Eigen::Vector3d(r));
    double t = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      Vec cand = u + t * (e * Vec(step));
      cand.normalize();
      const Vec rc = residual(cand);
      if (rc.norm() < r.norm()) {
        u = cand;
        r = rc;
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;
  }
  return r.norm() <= 1e-9 * scale;
}

Box box_around(const Vec& c, const Vec& half) { return Box{c - half, c + half}; }

}  // namespace

Vec arc_point(const Vec& from, double angle, double t) {
  const double a = std::atan2(from(1), from(0)) + angle * t;
  return unit_circle(a);
}

double ccw_angle(const Vec& from, const Vec& to) {
  double a = std::atan2(cross2(from, to), from.dot(to));
  if (a <= 0.0) a += 2.0 * kPi;
  return a;
}

Vec slerp(const Vec& a, const Vec& b, double t) {
  const double omega = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  if (omega < 1e-14) return a;
  return (std::sin((1.0 - t) * omega) * a + std::sin(t * omega) * b) / std::sin(omega);
}

// ---------------------------------------------------------------------------
// Smooth convex bodies

std::vector<Foot> SmoothConvex::stationary_feet(const Norm& norm, const Vec& x, bool outside, int grid) const {
  std::vector<Foot> feet;
  if (dim() == 2) {
    auto g = [&](double th) {
      const Vec u = unit_circle(th);
      return cross2(x - support_point(u), norm.grad(u));
    };
    std::vector<double> vals(static_cast<std::size_t>(grid) + 1);
    for (int k = 0; k <= grid; ++k) vals[static_cast<std::size_t>(k)] = k == grid ? vals[0] : g(2.0 * kPi * k / grid);
    for (int k = 0; k < grid; ++k) {
      const double lo = 2.0 * kPi * k / grid, hi = 2.0 * kPi * (k + 1) / grid;
      const double flo = vals[static_cast<std::size_t>(k)], fhi = vals[static_cast<std::size_t>(k) + 1];
      double th;
      if (flo == 0.0) {
        th = lo;
      } else if ((flo < 0.0) != (fhi < 0.0) && fhi != 0.0) {
        th = find_root(g, lo, hi, flo, fhi);
      } else {
        continue;
      }
      const Vec u = unit_circle(th);
      const Vec s = support_point(u);
      const double w = (x - s).dot(u);
      if (outside ? w >= 0.0 : w < 0.0) feet.push_back(Foot{s, std::abs(w) / norm.eval(u)});
    }
  } else {
    // f(u) = (u.x - h(u)) / phi(u) is the signed distance at its maximum.
    auto f = [&](const Vec& u) { return (u.dot(x) - support(u)) / norm.eval(u); };
    const auto pts = sphere_points(3, outside ? 200 : 800);
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < pts.size(); ++i) scored.emplace_back(f(pts[i]), i);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Vec> seeds;
    for (const auto& [val, i] : scored) {
      bool far = true;
      for (const Vec& s : seeds) far = far && (s - pts[i]).norm() > 0.4;
      if (far) seeds.push_back(pts[i]);
      if (seeds.size() >= (outside ? 1u : 4u)) break;
    }
    for (Vec u : seeds) {
      u = nelder_mead_sphere(f, u, 0.05);
      polish_stationary(*this, norm, x, u);
      const Vec s = support_point(u);
      const double w = (x - s).dot(u);
      if (outside ? w >= -1e-12 : w < 0.0) feet.push_back(Foot{s, std::abs(w) / norm.eval(u)});
    }
  }
  return feet;
}

Foot SmoothConvex::project_outside(const Norm& norm, const Vec& x) const {
  auto feet = stationary_feet(norm, x, true, 32);
  if (feet.empty()) feet = stationary_feet(norm, x, true, 512);
  if (feet.empty()) throw Error(ErrorCode::non_convergence, "no nearest point found on " + kind());
  return *std::min_element(feet.begin(), feet.end(), [](const Foot& a, const Foot& b) { return a.delta < b.delta; });
}

std::vector<Foot> SmoothConvex::project_inside(const Norm& norm, const Vec& x, double tol_eq) const {
  auto feet = stationary_feet(norm, x, false, 128);
  if (feet.empty()) throw Error(ErrorCode::non_convergence, "no nearest boundary point found inside " + kind());
  double best = kInf;
  for (const Foot& f : feet) best = std::min(best, f.delta);
  std::vector<Foot> out;
  for (const Foot& f : feet)
    if (f.delta <= best + tol_eq) out.push_back(f);
  return out;
}

std::vector<Chart> SmoothConvex::charts() const {
  Chart c;
  c.stratum = dim() - 1;
  c.dims = dim() - 1;
  const Box b = box();
  if (dim() == 2) {
    c.periodic = {true, false};
    c.size = 2.0 * kPi + kPi * b.diameter();
    c.map = [this](const std::array<double, 2>& s, Vec& a, Vec& u) {
      u = unit_circle(2.0 * kPi * s[0]);
      a = support_point(u);
    };
  } else {
    c.periodic = {false, true};
    c.aspect = 2.0;
    c.size = 4.0 * kPi + kPi * b.diameter() * b.diameter();
    c.map = [this](const std::array<double, 2>& s, Vec& a, Vec& u) {
      u = unit_sphere(kPi * s[0], 2.0 * kPi * s[1]);
      a = support_point(u);
    };
  }
  return {c};
}

std::vector<BoundarySample> SmoothConvex::boundary_samples(int count, double shift) const {
  std::vector<BoundarySample> out;
  auto sample = [&](const Vec& u, double weight) {
    BoundarySample b;
    b.point = support_point(u);
    b.weight = weight;
    b.stratum = dim() - 1;
    b.fiber = FiberDescriptor{FiberKind::single, {u}};
    out.push_back(std::move(b));
  };
  if (dim() == 2) {
    count = std::max(count, 3);
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * kPi * (i + shift) / count;
      const Vec da = fd_derivative([&](double t) { return support_point(unit_circle(t)); }, th, 1e-6);
      sample(unit_circle(th), da.norm() * 2.0 * kPi / count);
    }
    return out;
  }
  const int nt = std::max(2, static_cast<int>(std::lround(std::sqrt(count / 2.0))));
  const int np = 2 * nt;
  const QuadratureRule rule = gauss_legendre(nt);
  for (int i = 0; i < nt; ++i) {
    const double th = kPi * rule.nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < np; ++j) {
      const double ph = 2.0 * kPi * (j + shift) / np;
      const Vec dt = fd_derivative([&](double t) { return support_point(unit_sphere(t, ph)); }, th, 1e-6);
      const Vec dp = fd_derivative([&](double p) { return support_point(unit_sphere(th, p)); }, ph, 1e-6);
      const Eigen::Vector3d cr = Eigen::Vector3d(dt(0), dt(1), dt(2)).cross(Eigen::Vector3d(dp(0), dp(1), dp(2)));
      sample(unit_sphere(th, ph), cr.norm() * kPi * rule.weights[static_cast<std::size_t>(i)] * 2.0 * kPi / np);
    }
  }
  return out;
}

BallPiece::BallPiece(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius_ > 0.0)) throw Error(ErrorCode::invalid_argument, "ball radius must be positive");
}

Box BallPiece::box() const { return box_around(center_, Vec::Constant(center_.size(), radius_)); }

double BallPiece::volume() const {
  return dim() == 2 ? kPi * radius_ * radius_ : 4.0 / 3.0 * kPi * radius_ * radius_ * radius_;
}

Foot BallPiece::project_outside(const Norm& norm, const Vec& x) const {
  if (!closed_form(norm)) return SmoothConvex::project_outside(norm, x);
  const Vec d = x - center_;
  const double r = d.norm();
  return Foot{center_ + radius_ * d / r, std::max(0.0, r - radius_)};
}

std::vector<Foot> BallPiece::project_inside(const Norm& norm, const Vec& x, double tol_eq) const {
  if (!closed_form(norm)) return SmoothConvex::project_inside(norm, x, tol_eq);
  const Vec d = x - center_;
  const double r = d.norm();
  if (r <= 1e-14 * radius_) {
    std::vector<Foot> all;
    for (int i = 0; i < dim(); ++i) {
      Vec e = Vec::Zero(dim());
      e(i) = radius_;
      all.push_back(Foot{center_ + e, radius_});
      all.push_back(Foot{center_ - e, radius_});
    }
    return all;
  }
  return {Foot{center_ + radius_ * d / r, radius_ - r}};
}

FiberDescriptor BallPiece::fiber_at(const Vec& a) const {
  if (std::abs(level(a)) > 1e-7 * (1.0 + radius_)) throw Error(ErrorCode::not_on_boundary, "point is not on the ball boundary");
  return FiberDescriptor{FiberKind::single, {(a - center_) / (a - center_).norm()}};
}

EllipsoidPiece::EllipsoidPiece(Vec center, Vec semiaxes) : center_(std::move(center)), axes_(std::move(semiaxes)) {
  if (center_.size() != axes_.size()) throw Error(ErrorCode::invalid_argument, "ellipsoid center/semiaxes size mismatch");
  if (axes_.minCoeff() <= 0.0) throw Error(ErrorCode::invalid_argument, "ellipsoid semiaxes must be positive");
}

double EllipsoidPiece::level(const Vec& x) const {
  return ((x - center_).cwiseQuotient(axes_).norm() - 1.0) * axes_.minCoeff();
}

double EllipsoidPiece::support(const Vec& u) const {
  return center_.dot(u) + axes_.cwiseProduct(u).norm();
}

Vec EllipsoidPiece::support_point(const Vec& u) const {
  const Vec a2u = axes_.cwiseProduct(axes_).cwiseProduct(u);
  return center_ + a2u / axes_.cwiseProduct(u).norm();
}

Box EllipsoidPiece::box() const { return box_around(center_, axes_); }

double EllipsoidPiece::volume() const {
  const double p = axes_.prod();
  return dim() == 2 ? kPi * p : 4.0 / 3.0 * kPi * p;
}

FiberDescriptor EllipsoidPiece::fiber_at(const Vec& a) const {
  if (std::abs(level(a)) > 1e-7 * (1.0 + axes_.maxCoeff())) throw Error(ErrorCode::not_on_boundary, "point is not on the ellipsoid boundary");
  Vec n = (a - center_).cwiseQuotient(axes_.cwiseProduct(axes_));
  return FiberDescriptor{FiberKind::single, {n / n.norm()}};
}

WulffPiece::WulffPiece(Norm norm, Vec center, double radius)
    : norm_(std::move(norm)), center_(std::move(center)), radius_(radius) {
  if (!(radius_ > 0.0)) throw Error(ErrorCode::invalid_argument, "Wulff body radius must be positive");
  if (center_.size() != norm_.dim()) throw Error(ErrorCode::invalid_argument, "Wulff body center dimension mismatch");
}

double WulffPiece::level(const Vec& x) const { return norm_.conjugate_eval(x - center_) - radius_; }

Box WulffPiece::box() const {
  Vec half(dim());
  for (int i = 0; i < dim(); ++i) {
    Vec e = Vec::Zero(dim());
    e(i) = 1.0;
    half(i) = radius_ * norm_.eval(e);
  }
  return box_around(center_, half);
}

double WulffPiece::volume() const {
  // |W| = (1/d) * integral over S^{d-1} of phi(u) det(tangential Hessian of phi at u).
  double acc = 0.0;
  if (dim() == 2) {
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
      const Vec u = unit_circle(2.0 * kPi * (i + 0.5) / n);
      const Vec t = tangent_basis(u).col(0);
      acc += norm_.eval(u) * t.dot(norm_.hessian(u) * t) * 2.0 * kPi / n;
    }
    return 0.5 * acc * radius_ * radius_;
  }
  const int nt = 96, np = 192;
  const QuadratureRule rule = gauss_legendre(nt);
  for (int i = 0; i < nt; ++i) {
    const double th = kPi * rule.nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < np; ++j) {
      const Vec u = unit_sphere(th, 2.0 * kPi * (j + 0.5) / np);
      const Mat e = tangent_basis(u);
      const double det = (e.transpose() * norm_.hessian(u) * e).determinant();
      acc += norm_.eval(u) * det * std::sin(th) * kPi * rule.weights[static_cast<std::size_t>(i)] * 2.0 * kPi / np;
    }
  }
  return acc / 3.0 * radius_ * radius_ * radius_;
}

Foot WulffPiece::project_outside(const Norm& norm, const Vec& x) const {
  if (!closed_form(norm)) return SmoothConvex::project_outside(norm, x);
  const Vec d = x - center_;
  const double r = norm_.conjugate_eval(d);
  return Foot{center_ + radius_ * d / r, std::max(0.0, r - radius_)};
}

std::vector<Foot> WulffPiece::project_inside(const Norm& norm, const Vec& x, double tol_eq) const {
  if (!closed_form(norm)) return SmoothConvex::project_inside(norm, x, tol_eq);
  const Vec d = x - center_;
  const double r = norm_.conjugate_eval(d);
  if (r <= 1e-14 * radius_) {
    std::vector<Foot> all;
    for (int i = 0; i < dim(); ++i) {
      Vec e = Vec::Zero(dim());
      e(i) = 1.0;
      const Vec g = norm_.grad(e);
      all.push_back(Foot{center_ + radius_ * g, radius_});
      all.push_back(Foot{center_ - radius_ * g, radius_});
    }
    return all;
  }
  return {Foot{center_ + radius_ * d / r, radius_ - r}};
}

FiberDescriptor WulffPiece::fiber_at(const Vec& a) const {
  if (std::abs(level(a)) > 1e-7 * (1.0 + radius_)) throw Error(ErrorCode::not_on_boundary, "point is not on the Wulff body boundary");
  const Vec g = norm_.grad_conjugate(a - center_);
  return FiberDescriptor{FiberKind::single, {g / g.norm()}};
}

// ---------------------------------------------------------------------------
// Polygons and segments

PolygonPiece::PolygonPiece(std::vector<Vec> ccw_vertices) : verts_(std::move(ccw_vertices)) {
  if (verts_.size() < 2) throw Error(ErrorCode::invalid_argument, "polygon needs at least two vertices");
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec d = verts_[(i + 1) % n] - verts_[i];
    if (d.norm() == 0.0) throw Error(ErrorCode::invalid_argument, "polygon has repeated vertices");
    Vec nrm = make_vec({d(1), -d(0)});
    nrm /= nrm.norm();
    normals_.push_back(nrm);
    offsets_.push_back(nrm.dot(verts_[i]));
  }
}

double PolygonPiece::level(const Vec& x) const {
  if (is_segment()) {
    const Vec d = verts_[1] - verts_[0];
    const double t = std::clamp((x - verts_[0]).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return (x - verts_[0] - t * d).norm();
  }
  double m = -kInf;
  for (std::size_t i = 0; i < normals_.size(); ++i) m = std::max(m, normals_[i].dot(x) - offsets_[i]);
  return m;
}

double PolygonPiece::support(const Vec& u) const {
  double m = -kInf;
  for (const Vec& v : verts_) m = std::max(m, u.dot(v));
  return m;
}

Box PolygonPiece::box() const {
  Vec lo = verts_[0], hi = verts_[0];
  for (const Vec& v : verts_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return Box{lo, hi};
}

double PolygonPiece::volume() const {
  double a = 0.0;
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) a += cross2(verts_[i], verts_[(i + 1) % n]);
  return 0.5 * a;
}

Foot PolygonPiece::project_outside(const Norm& norm, const Vec& x) const {
  Foot best{verts_[0], kInf};
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = normals_[i].dot(x) - offsets_[i];
    if (gap < 0.0) continue;
    const double t = gap / norm.eval(normals_[i]);
    const Vec c = x - t * norm.grad(normals_[i]);
    const Vec d = verts_[(i + 1) % n] - verts_[i];
    const double lam = (c - verts_[i]).dot(d) / d.squaredNorm();
    if (lam >= 0.0 && lam <= 1.0 && t < best.delta) best = Foot{c, t};
  }
  for (const Vec& v : verts_) {
    const double t = norm.conjugate_eval(x - v);
    if (t < best.delta) best = Foot{v, t};
  }
  return best;
}

std::vector<Foot> PolygonPiece::project_inside(const Norm& norm, const Vec& x, double tol_eq) const {
  std::vector<Foot> feet;
  double best = kInf;
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    const double t = (offsets_[i] - normals_[i].dot(x)) / norm.eval(normals_[i]);
    feet.push_back(Foot{x + t * norm.grad(normals_[i]), t});
    best = std::min(best, t);
  }
  std::erase_if(feet, [&](const Foot& f) { return f.delta > best + tol_eq; });
  return feet;
}

std::vector<Chart> PolygonPiece::charts() const {
  std::vector<Chart> out;
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    Chart c;
    c.stratum = 1;
    c.dims = 1;
    c.node_cap = {256, 1};
    const Vec p = verts_[i], q = verts_[(i + 1) % n], nrm = normals_[i];
    c.size = (q - p).norm();
    c.map = [p, q, nrm](const std::array<double, 2>& s, Vec& a, Vec& u) {
      a = p + s[0] * (q - p);
      u = nrm;
    };
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Chart c;
    c.stratum = 0;
    c.dims = 1;
    c.node_cap = {24, 1};
    const Vec v = verts_[i];
    const Vec from = normals_[(i + n - 1) % n];
    const double angle = ccw_angle(from, normals_[i]);
    c.size = angle;
    c.map = [v, from, angle](const std::array<double, 2>& s, Vec& a, Vec& u) {
      a = v;
      u = arc_point(from, angle, s[0]);
    };
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BoundarySample> PolygonPiece::boundary_samples(int count, double) const {
  std::vector<BoundarySample> out;
  const std::size_t n = verts_.size();
  double perim = 0.0;
  for (std::size_t i = 0; i < n; ++i) perim += (verts_[(i + 1) % n] - verts_[i]).norm();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec p = verts_[i], q = verts_[(i + 1) % n];
    const double len = (q - p).norm();
    const int m = std::max(2, static_cast<int>(std::lround(count * len / perim)));
    const QuadratureRule rule = gauss_legendre(m);
    for (int k = 0; k < m; ++k) {
      BoundarySample b;
      b.point = p + rule.nodes[static_cast<std::size_t>(k)] * (q - p);
      b.weight = len * rule.weights[static_cast<std::size_t>(k)];
      b.stratum = 1;
      if (is_segment())
        b.fiber = FiberDescriptor{FiberKind::antipodal_pair, {normals_[i], -normals_[i]}};
      else
        b.fiber = FiberDescriptor{FiberKind::single, {normals_[i]}};
      out.push_back(std::move(b));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    BoundarySample b;
    b.point = verts_[i];
    b.weight = 1.0;
    b.stratum = 0;
    b.fiber = FiberDescriptor{FiberKind::arc, {normals_[(i + n - 1) % n], normals_[i]}};
    out.push_back(std::move(b));
  }
  return out;
}

FiberDescriptor PolygonPiece::fiber_at(const Vec& a) const {
  const double tol = 1e-9 * (1.0 + box().diameter());
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i)
    if ((a - verts_[i]).norm() <= tol) return FiberDescriptor{FiberKind::arc, {normals_[(i + n - 1) % n], normals_[i]}};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec p = verts_[i], q = verts_[(i + 1) % n];
    const Vec d = q - p;
    const double lam = (a - p).dot(d) / d.squaredNorm();
    if (lam < 0.0 || lam > 1.0 || std::abs(normals_[i].dot(a) - offsets_[i]) > tol) continue;
    if (is_segment()) return FiberDescriptor{FiberKind::antipodal_pair, {normals_[i], -normals_[i]}};
    return FiberDescriptor{FiberKind::single, {normals_[i]}};
  }
  throw Error(ErrorCode::not_on_boundary, "point is not on the polygon boundary");
}

// ---------------------------------------------------------------------------
// Polytopes in R^3

namespace {

Eigen::Vector3d v3(const Vec& v) { return Eigen::Vector3d(v(0), v(1), v(2)); }
Vec vx(const Eigen::Vector3d& v) { return make_vec({v(0), v(1), v(2)}); }

double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
  // Van Oosterom-Strackee.
  const double num = std::abs(v3(a).dot(v3(b).cross(v3(c))));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

}  // namespace

PolytopePiece::PolytopePiece(const std::vector<Vec>& points) {
  if (points.size() < 4) throw Error(ErrorCode::invalid_argument, "3D polytope needs at least four vertices");
  double scale = 0.0;
  for (const Vec& p : points) {
    if (p.size() != 3) throw Error(ErrorCode::invalid_argument, "3D polytope vertices must have three coordinates");
    scale = std::max(scale, p.norm());
  }
  const double tol = 1e-9 * (1.0 + scale);
  const std::size_t n = points.size();
  // Supporting planes through vertex triples.
  std::vector<std::pair<Vec, double>> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Eigen::Vector3d nn = (v3(points[j]) - v3(points[i])).cross(v3(points[k]) - v3(points[i]));
        if (nn.norm() <= tol * tol) continue;
        nn.normalize();
        const double h = nn.dot(v3(points[i]));
        bool le = true, ge = true;
        for (const Vec& p : points) {
          const double s = nn.dot(v3(p)) - h;
          le = le && s <= tol;
          ge = ge && s >= -tol;
        }
        if (!le && !ge) continue;
        if (!le) nn = -nn;
        const Vec nv = vx(nn);
        const double hv = nn.dot(v3(points[i]));
        bool dup = false;
        for (const auto& [pn, ph] : planes) dup = dup || ((pn - nv).norm() < 1e-9 && std::abs(ph - hv) < tol);
        if (!dup) planes.emplace_back(nv, hv);
      }
  if (planes.size() < 4) throw Error(ErrorCode::invalid_argument, "3D polytope is degenerate (no interior)");
  // Keep only extreme points: those on at least three facet planes.
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    int on = 0;
    for (const auto& [pn, ph] : planes) on += std::abs(pn.dot(points[i]) - ph) <= tol;
    bool dup = false;
    for (std::size_t j = 0; j < i; ++j) dup = dup || (index[j] >= 0 && (points[j] - points[i]).norm() <= tol);
    if (on >= 3 && !dup) {
      index[i] = static_cast<int>(verts_.size());
      verts_.push_back(points[i]);
    }
  }
  for (const auto& [pn, ph] : planes) {
    Face f;
    f.normal = pn;
    f.offset = ph;
    std::vector<int> on;
    Vec centroid = Vec::Zero(3);
    for (std::size_t v = 0; v < verts_.size(); ++v)
      if (std::abs(pn.dot(verts_[v]) - ph) <= tol) {
        on.push_back(static_cast<int>(v));
        centroid += verts_[v];
      }
    centroid /= static_cast<double>(on.size());
    const Mat e = tangent_basis(pn);
    std::sort(on.begin(), on.end(), [&](int a, int b) {
      const Vec da = verts_[static_cast<std::size_t>(a)] - centroid, db = verts_[static_cast<std::size_t>(b)] - centroid;
      return std::atan2(da.dot(e.col(1)), da.dot(e.col(0))) < std::atan2(db.dot(e.col(1)), db.dot(e.col(0)));
    });
    // tangent_basis gives (t1, u x t1), a right-handed frame about the outward normal.
    f.verts = on;
    for (std::size_t k = 1; k + 1 < on.size(); ++k) {
      const Eigen::Vector3d a = v3(verts_[static_cast<std::size_t>(on[0])]);
      f.area += 0.5 * (v3(verts_[static_cast<std::size_t>(on[k])]) - a).cross(v3(verts_[static_cast<std::size_t>(on[k + 1])]) - a).norm();
    }
    faces_.push_back(std::move(f));
  }
  // Edges: consecutive face vertices; the arc runs from the face where the edge is traversed v0->v1.
  for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
    const auto& fv = faces_[fi].verts;
    for (std::size_t k = 0; k < fv.size(); ++k) {
      const int a = fv[k], b = fv[(k + 1) % fv.size()];
      bool found = false;
      for (Edge& e : edges_)
        if (e.v0 == b && e.v1 == a) {
          e.f1 = static_cast<int>(fi);
          found = true;
        }
      if (!found) edges_.push_back(Edge{a, b, static_cast<int>(fi), -1});
    }
  }
  for (const Edge& e : edges_)
    if (e.f1 < 0) throw Error(ErrorCode::invalid_argument, "3D polytope face structure is not closed");
  vertex_faces_.resize(verts_.size());
  for (std::size_t v = 0; v < verts_.size(); ++v) {
    std::vector<int> fs;
    Vec mean = Vec::Zero(3);
    for (std::size_t fi = 0; fi < faces_.size(); ++fi)
      if (std::find(faces_[fi].verts.begin(), faces_[fi].verts.end(), static_cast<int>(v)) != faces_[fi].verts.end()) {
        fs.push_back(static_cast<int>(fi));
        mean += faces_[fi].normal;
      }
    mean.normalize();
    const Mat e = tangent_basis(mean);
    std::sort(fs.begin(), fs.end(), [&](int a, int b) {
      const Vec& na = faces_[static_cast<std::size_t>(a)].normal;
      const Vec& nb = faces_[static_cast<std::size_t>(b)].normal;
      return std::atan2(na.dot(e.col(1)), na.dot(e.col(0))) < std::atan2(nb.dot(e.col(1)), nb.dot(e.col(0)));
    });
    vertex_faces_[v] = fs;
  }
}

double PolytopePiece::level(const Vec& x) const {
  double m = -kInf;
  for (const Face& f : faces_) m = std::max(m, f.normal.dot(x) - f.offset);
  return m;
}

double PolytopePiece::support(const Vec& u) const {
  double m = -kInf;
  for (const Vec& v : verts_) m = std::max(m, u.dot(v));
  return m;
}

Box PolytopePiece::box() const {
  Vec lo = verts_[0], hi = verts_[0];
  for (const Vec& v : verts_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return Box{lo, hi};
}

double PolytopePiece::volume() const {
  double v = 0.0;
  for (const Face& f : faces_) v += f.offset * f.area / 3.0;
  return v;
}

Foot PolytopePiece::project_outside(const Norm& norm, const Vec& x) const {
  Foot best{verts_[0], kInf};
  for (const Face& f : faces_) {
    const double gap = f.normal.dot(x) - f.offset;
    if (gap < 0.0) continue;
    const double t = gap / norm.eval(f.normal);
    const Vec c = x - t * norm.grad(f.normal);
    bool in = true;
    for (std::size_t k = 0; k < f.verts.size() && in; ++k) {
      const Vec& p = verts_[static_cast<std::size_t>(f.verts[k])];
      const Vec& q = verts_[static_cast<std::size_t>(f.verts[(k + 1) % f.verts.size()])];
      in = (v3(q) - v3(p)).cross(v3(c) - v3(p)).dot(v3(f.normal)) >= 0.0;
    }
    if (in && t < best.delta) best = Foot{c, t};
  }
  for (const Edge& e : edges_) {
    const Vec& p = verts_[static_cast<std::size_t>(e.v0)];
    const Vec d = verts_[static_cast<std::size_t>(e.v1)] - p;
    const Vec y = x - p;
    double t;
    if (norm.is_quadratic()) {
      // phi*(y - t d)^2 is a quadratic in t.
      const double f0 = std::pow(norm.conjugate_eval(y), 2);
      const double fp = std::pow(norm.conjugate_eval(y - d), 2);
      const double fm = std::pow(norm.conjugate_eval(y + d), 2);
      const double a = 0.5 * (fp + fm) - f0;
      const double b = 0.25 * (fm - fp);
      t = a > 0.0 ? b / a : 0.0;
    } else {
      double lo = 0.0, hi = 1.0;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      for (int it = 0; it < 80; ++it) {
        const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
        if (norm.conjugate_eval(y - m1 * d) < norm.conjugate_eval(y - m2 * d))
          hi = m2;
        else
          lo = m1;
      }
      t = 0.5 * (lo + hi);
    }
    if (t <= 0.0 || t >= 1.0) continue;
    const double dist = norm.conjugate_eval(y - t * d);
    if (dist < best.delta) best = Foot{p + t * d, dist};
  }
  for (const Vec& v : verts_) {
    const double t = norm.conjugate_eval(x - v);
    if (t < best.delta) best = Foot{v, t};
  }
  return best;
}

std::vector<Foot> PolytopePiece::project_inside(const Norm& norm, const Vec& x, double tol_eq) const {
  std::vector<Foot> feet;
  double best = kInf;
  for (const Face& f : faces_) {
    const double t = (f.offset - f.normal.dot(x)) / norm.eval(f.normal);
    feet.push_back(Foot{x + t * norm.grad(f.normal), t});
    best = std::min(best, t);
  }
  std::erase_if(feet, [&](const Foot& f) { return f.delta > best + tol_eq; });
  return feet;
}

std::vector<Chart> PolytopePiece::charts() const {
  std::vector<Chart> out;
  for (const Face& f : faces_) {
    const Vec nrm = f.normal;
    const Vec a0 = verts_[static_cast<std::size_t>(f.verts[0])];
    for (std::size_t k = 1; k + 1 < f.verts.size(); ++k) {
      const Vec b = verts_[static_cast<std::size_t>(f.verts[k])];
      const Vec c = verts_[static_cast<std::size_t>(f.verts[k + 1])];
      Chart ch;
      ch.stratum = 2;
      ch.dims = 2;
      ch.node_cap = {48, 48};
      ch.size = 0.5 * (v3(b) - v3(a0)).cross(v3(c) - v3(a0)).norm();
      ch.map = [a0, b, c, nrm](const std::array<double, 2>& s, Vec& a, Vec& u) {
        a = a0 + s[0] * (b - a0) + s[0] * s[1] * (c - b);
        u = nrm;
      };
      out.push_back(std::move(ch));
    }
  }
  for (const Edge& e : edges_) {
    const Vec p = verts_[static_cast<std::size_t>(e.v0)], q = verts_[static_cast<std::size_t>(e.v1)];
    const Vec n0 = faces_[static_cast<std::size_t>(e.f0)].normal, n1 = faces_[static_cast<std::size_t>(e.f1)].normal;
    Chart ch;
    ch.stratum = 1;
    ch.dims = 2;
    ch.node_cap = {48, 16};
    ch.size = (q - p).norm() * std::acos(std::clamp(n0.dot(n1), -1.0, 1.0));
    ch.map = [p, q, n0, n1](const std::array<double, 2>& s, Vec& a, Vec& u) {
      a = p + s[0] * (q - p);
      u = slerp(n0, n1, s[1]);
    };
    out.push_back(std::move(ch));
  }
  for (std::size_t v = 0; v < verts_.size(); ++v) {
    const auto& fs = vertex_faces_[v];
    const Vec pos = verts_[v];
    const Vec n0 = faces_[static_cast<std::size_t>(fs[0])].normal;
    for (std::size_t k = 1; k + 1 < fs.size(); ++k) {
      const Vec n1 = faces_[static_cast<std::size_t>(fs[k])].normal;
      const Vec n2 = faces_[static_cast<std::size_t>(fs[k + 1])].normal;
      Chart ch;
      ch.stratum = 0;
      ch.dims = 2;
      ch.node_cap = {16, 16};
      ch.size = spherical_triangle_area(n0, n1, n2);
      ch.map = [pos, n0, n1, n2](const std::array<double, 2>& s, Vec& a, Vec& u) {
        a = pos;
        u = n0 + s[0] * (n1 - n0) + s[0] * s[1] * (n2 - n1);
        u.normalize();
      };
      out.push_back(std::move(ch));
    }
  }
  return out;
}

std::vector<BoundarySample> PolytopePiece::boundary_samples(int count, double) const {
  std::vector<BoundarySample> out;
  double total_area = 0.0;
  for (const Face& f : faces_) total_area += f.area;
  for (const Face& f : faces_) {
    const Vec a0 = verts_[static_cast<std::size_t>(f.verts[0])];
    for (std::size_t k = 1; k + 1 < f.verts.size(); ++k) {
      const Vec b = verts_[static_cast<std::size_t>(f.verts[k])];
      const Vec c = verts_[static_cast<std::size_t>(f.verts[k + 1])];
      const double area = 0.5 * (v3(b) - v3(a0)).cross(v3(c) - v3(a0)).norm();
      const int m = std::max(2, static_cast<int>(std::lround(std::sqrt(count * area / total_area))));
      const QuadratureRule rule = gauss_legendre(m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const double s0 = rule.nodes[static_cast<std::size_t>(i)], s1 = rule.nodes[static_cast<std::size_t>(j)];
          BoundarySample smp;
          smp.point = a0 + s0 * (b - a0) + s0 * s1 * (c - b);
          // Collapsed-square Jacobian: 2 * area * s0.
          smp.weight = 2.0 * area * s0 * rule.weights[static_cast<std::size_t>(i)] * rule.weights[static_cast<std::size_t>(j)];
          smp.stratum = 2;
          smp.fiber = FiberDescriptor{FiberKind::single, {f.normal}};
          out.push_back(std::move(smp));
        }
    }
  }
  for (const Edge& e : edges_) {
    const Vec p = verts_[static_cast<std::size_t>(e.v0)], q = verts_[static_cast<std::size_t>(e.v1)];
    const QuadratureRule rule = gauss_legendre(8);
    for (int i = 0; i < 8; ++i) {
      BoundarySample smp;
      smp.point = p + rule.nodes[static_cast<std::size_t>(i)] * (q - p);
      smp.weight = (q - p).norm() * rule.weights[static_cast<std::size_t>(i)];
      smp.stratum = 1;
      smp.fiber = FiberDescriptor{FiberKind::arc, {faces_[static_cast<std::size_t>(e.f0)].normal, faces_[static_cast<std::size_t>(e.f1)].normal}};
      out.push_back(std::move(smp));
    }
  }
  for (std::size_t v = 0; v < verts_.size(); ++v) {
    BoundarySample smp;
    smp.point = verts_[v];
    smp.weight = 1.0;
    smp.stratum = 0;
    smp.fiber.kind = FiberKind::patch;
    for (int f : vertex_faces_[v]) smp.fiber.normals.push_back(faces_[static_cast<std::size_t>(f)].normal);
    out.push_back(std::move(smp));
  }
  return out;
}

FiberDescriptor PolytopePiece::fiber_at(const Vec& a) const {
  const double tol = 1e-9 * (1.0 + box().diameter());
  if (std::abs(level(a)) > tol) throw Error(ErrorCode::not_on_boundary, "point is not on the polytope boundary");
  std::vector<int> on;
  for (std::size_t fi = 0; fi < faces_.size(); ++fi)
    if (std::abs(faces_[fi].normal.dot(a) - faces_[fi].offset) <= tol) on.push_back(static_cast<int>(fi));
  if (on.size() == 1) return FiberDescriptor{FiberKind::single, {faces_[static_cast<std::size_t>(on[0])].normal}};
  if (on.size() == 2)
    return FiberDescriptor{FiberKind::arc, {faces_[static_cast<std::size_t>(on[0])].normal, faces_[static_cast<std::size_t>(on[1])].normal}};
  for (std::size_t v = 0; v < verts_.size(); ++v)
    if ((verts_[v] - a).norm() <= tol) {
      FiberDescriptor fd{FiberKind::patch, {}};
      for (int f : vertex_faces_[v]) fd.normals.push_back(faces_[static_cast<std::size_t>(f)].normal);
      return fd;
    }
  throw Error(ErrorCode::not_on_boundary, "point is not on the polytope boundary");
}

// ---------------------------------------------------------------------------
// Lens of two unit disks

LensPiece::LensPiece(double eps)
    : eps_(eps),
      half_angle_(std::asin(eps)),
      upper_(make_vec({0.0, -eps}), 1.0),
      lower_(make_vec({0.0, eps}), 1.0) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::invalid_argument, "cap lens parameter must lie in (0, 1)");
}

double LensPiece::level(const Vec& x) const { return std::max(upper_.level(x), lower_.level(x)); }

bool LensPiece::in_lens(const Vec& x) const { return level(x) <= 1e-12; }

std::vector<Vec> LensPiece::singular_points() const {
  const double w = std::sqrt(1.0 - eps_ * eps_);
  return {make_vec({w, 0.0}), make_vec({-w, 0.0})};
}

double LensPiece::support(const Vec& u) const {
  double m = -kInf;
  for (const Vec& c : singular_points()) m = std::max(m, u.dot(c));
  const Vec su = upper_.support_point(u);
  if (su(1) >= 0.0) m = std::max(m, u.dot(su));
  const Vec sl = lower_.support_point(u);
  if (sl(1) <= 0.0) m = std::max(m, u.dot(sl));
  return m;
}

Box LensPiece::box() const {
  const double w = std::sqrt(1.0 - eps_ * eps_);
  return Box{make_vec({-w, -(1.0 - eps_)}), make_vec({w, 1.0 - eps_})};
}

double LensPiece::volume() const { return 2.0 * (std::acos(eps_) - eps_ * std::sqrt(1.0 - eps_ * eps_)); }

Foot LensPiece::project_outside(const Norm& norm, const Vec& x) const {
  Foot best{x, kInf};
  if (upper_.level(x) > 0.0) {
    const Foot f = upper_.project_outside(norm, x);
    if (f.point(1) >= 0.0 && f.delta < best.delta) best = f;
  }
  if (lower_.level(x) > 0.0) {
    const Foot f = lower_.project_outside(norm, x);
    if (f.point(1) <= 0.0 && f.delta < best.delta) best = f;
  }
  for (const Vec& c : singular_points()) {
    const double t = norm.conjugate_eval(x - c);
    if (t < best.delta) best = Foot{c, t};
  }
  return best;
}

std::vector<Foot> LensPiece::project_inside(const Norm& norm, const Vec& x, double tol_eq) const {
  std::vector<Foot> feet = upper_.project_inside(norm, x, tol_eq);
  const std::vector<Foot> more = lower_.project_inside(norm, x, tol_eq);
  feet.insert(feet.end(), more.begin(), more.end());
  double best = kInf;
  for (const Foot& f : feet) best = std::min(best, f.delta);
  std::erase_if(feet, [&](const Foot& f) { return f.delta > best + tol_eq || !in_lens(f.point); });
  return feet;
}

std::vector<Chart> LensPiece::charts() const {
  std::vector<Chart> out;
  const double h = half_angle_;
  const double e = eps_;
  auto arc = [&](double start, double c_y) {
    Chart ch;
    ch.stratum = 1;
    ch.dims = 1;
    ch.size = 2.0 * (kPi - 2.0 * h);
    ch.map = [start, h, c_y](const std::array<double, 2>& s, Vec& a, Vec& u) {
      u = unit_circle(start + s[0] * (kPi - 2.0 * h));
      a = make_vec({u(0), c_y + u(1)});
    };
    out.push_back(std::move(ch));
  };
  arc(h, -e);
  arc(kPi + h, e);
  const auto corners = singular_points();
  const double starts[2] = {-h, kPi - h};
  for (int k = 0; k < 2; ++k) {
    Chart ch;
    ch.stratum = 0;
    ch.dims = 1;
    ch.node_cap = {24, 1};
    ch.size = 2.0 * h;
    const Vec c = corners[static_cast<std::size_t>(k)];
    const double st = starts[k];
    ch.map = [c, st, h](const std::array<double, 2>& s, Vec& a, Vec& u) {
      a = c;
      u = unit_circle(st + s[0] * 2.0 * h);
    };
    out.push_back(std::move(ch));
  }
  return out;
}

std::vector<BoundarySample> LensPiece::boundary_samples(int count, double) const {
  std::vector<BoundarySample> out;
  const double h = half_angle_;
  const double span = kPi - 2.0 * h;
  const int m = std::max(2, count / 2);
  const QuadratureRule rule = gauss_legendre(m);
  for (int side = 0; side < 2; ++side) {
    const double start = side == 0 ? h : kPi + h;
    const double cy = side == 0 ? -eps_ : eps_;
    for (int i = 0; i < m; ++i) {
      const Vec u = unit_circle(start + rule.nodes[static_cast<std::size_t>(i)] * span);
      BoundarySample b;
      b.point = make_vec({u(0), cy + u(1)});
      b.weight = span * rule.weights[static_cast<std::size_t>(i)];
      b.stratum = 1;
      b.fiber = FiberDescriptor{FiberKind::single, {u}};
      out.push_back(std::move(b));
    }
  }
  const auto corners = singular_points();
  const double starts[2] = {-h, kPi - h};
  for (int k = 0; k < 2; ++k) {
    BoundarySample b;
    b.point = corners[static_cast<std::size_t>(k)];
    b.weight = 1.0;
    b.stratum = 0;
    b.fiber = FiberDescriptor{FiberKind::arc, {unit_circle(starts[k]), unit_circle(starts[k] + 2.0 * h)}};
    out.push_back(std::move(b));
  }
  return out;
}

FiberDescriptor LensPiece::fiber_at(const Vec& a) const {
  const double tol = 1e-9;
  const auto corners = singular_points();
  const double starts[2] = {-half_angle_, kPi - half_angle_};
  for (int k = 0; k < 2; ++k)
    if ((a - corners[static_cast<std::size_t>(k)]).norm() <= tol)
      return FiberDescriptor{FiberKind::arc, {unit_circle(starts[k]), unit_circle(starts[k] + 2.0 * half_angle_)}};
  if (std::abs(level(a)) > tol) throw Error(ErrorCode::not_on_boundary, "point is not on the lens boundary");
  if (a(1) >= 0.0) return upper_.fiber_at(a);
  return lower_.fiber_at(a);
}

}  // namespace anisocurv::detail
