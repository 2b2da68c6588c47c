// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/norm.hpp"

#include "numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace anisocurv {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::invalid_argument, "norm dimension must be 2 or 3, got " + std::to_string(dim));
}

void check_nonzero(const Vec& x) {
  if (x.norm() == 0.0 || !x.allFinite()) throw Error(ErrorCode::zero_vector, "vector must be finite and nonzero");
}

constexpr int kNewtonIterations = 50;
constexpr double kNewtonTol = 1e-10;

}  // namespace

Norm Norm::euclidean(int dim) {
  check_dim(dim);
  Norm n;
  n.dim_ = dim;
  n.kind_ = NormKind::euclidean;
  n.q_ = Mat::Identity(dim, dim);
  n.q_inv_ = n.q_;
  n.gamma_ = 1.0;
  return n;
}

Norm Norm::ellipsoidal(const Mat& q) {
  check_dim(static_cast<int>(q.rows()));
  if (q.rows() != q.cols()) throw Error(ErrorCode::invalid_argument, "ellipsoidal norm needs a square matrix");
  if (!q.allFinite() || (q - q.transpose()).norm() > 1e-12 * (1.0 + q.norm()))
    throw Error(ErrorCode::invalid_argument, "ellipsoidal norm matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(q);
  if (es.eigenvalues().minCoeff() <= 0.0) throw Error(ErrorCode::invalid_argument, "ellipsoidal norm matrix must be positive definite");
  Norm n;
  n.dim_ = static_cast<int>(q.rows());
  n.kind_ = NormKind::ellipsoidal;
  n.q_ = 0.5 * (q + q.transpose());
  n.q_inv_ = n.q_.inverse();
  n.estimate_gamma();
  return n;
}

Norm Norm::smoothed_lp(int dim, double p, double smoothing) {
  check_dim(dim);
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::invalid_argument, "smoothed-lp exponent must lie in (1, inf)");
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) throw Error(ErrorCode::invalid_argument, "smoothed-lp smoothing must be >= 0");
  Norm n;
  n.dim_ = dim;
  n.kind_ = NormKind::smoothed_lp;
  n.q_ = Mat::Identity(dim, dim);
  n.q_inv_ = n.q_;
  n.p_ = p;
  n.eps_ = smoothing;
  n.estimate_gamma();
  return n;
}

bool Norm::same_as(const Norm& other) const {
  if (dim_ != other.dim_ || kind_ != other.kind_) return false;
  if (kind_ == NormKind::smoothed_lp) return p_ == other.p_ && eps_ == other.eps_;
  return (q_ - other.q_).norm() == 0.0;
}

const char* Norm::kind_name() const noexcept {
  switch (kind_) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::ellipsoidal: return "ellipsoidal";
    case NormKind::smoothed_lp: return "smoothed-lp";
  }
  return "unknown";
}

void Norm::estimate_gamma() {
  const int count = 10000;
  double g = kInf;
  for (const Vec& u : detail::sphere_points(dim_, count)) {
    const Mat e = detail::tangent_basis(u);
    const Mat t = e.transpose() * hessian(u) * e;
    Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
    g = std::min(g, es.eigenvalues().minCoeff());
  }
  gamma_ = g;
}

double Norm::eval(const Vec& x) const {
  switch (kind_) {
    case NormKind::euclidean: return x.norm();
    case NormKind::ellipsoidal: return std::sqrt(std::max(0.0, x.dot(q_ * x)));
    case NormKind::smoothed_lp: {
      const double scale = x.cwiseAbs().maxCoeff();
      if (scale == 0.0) return 0.0;
      const Vec y = x / scale;
      const double e2 = eps_ * eps_ * y.squaredNorm();
      double s = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) s += std::pow(y(i) * y(i) + e2, 0.5 * p_);
      return scale * std::pow(s, 1.0 / p_);
    }
  }
  return 0.0;
}

Vec Norm::grad(const Vec& x) const {
  check_nonzero(x);
  switch (kind_) {
    case NormKind::euclidean: return x / x.norm();
    case NormKind::ellipsoidal: return q_ * x / eval(x);
    case NormKind::smoothed_lp: {
      const Vec y = x / x.norm();
      const double e2 = eps_ * eps_;
      Vec acc = Vec::Zero(dim_);
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const double gi = std::sqrt(y(i) * y(i) + e2);
        const double w = std::pow(gi, p_ - 2.0);
        s += w * gi * gi;
        acc += w * e2 * y;
        acc(i) += w * y(i);
      }
      const double phi = std::pow(s, 1.0 / p_);
      return std::pow(phi, 1.0 - p_) * acc;
    }
  }
  return x;
}

Mat Norm::hessian(const Vec& x) const {
  check_nonzero(x);
  switch (kind_) {
    case NormKind::euclidean: {
      const double r = x.norm();
      return (Mat::Identity(dim_, dim_) - x * x.transpose() / (r * r)) / r;
    }
    case NormKind::ellipsoidal: {
      const double phi = eval(x);
      const Vec qx = q_ * x;
      return (q_ - qx * qx.transpose() / (phi * phi)) / phi;
    }
    case NormKind::smoothed_lp: {
      // Evaluate on the unit sphere and scale: the Hessian is (-1)-homogeneous.
      const double r = x.norm();
      const Vec y = x / r;
      const double e2 = eps_ * eps_;
      Vec g_sum = Vec::Zero(dim_);
      Mat dg = Mat::Zero(dim_, dim_);
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        Mat a = e2 * Mat::Identity(dim_, dim_);
        a(i, i) += 1.0;
        const Vec ay = a * y;
        const double g2 = y(i) * y(i) + e2;
        const double gi = std::sqrt(g2);
        const double w = std::pow(gi, p_ - 2.0);
        s += w * g2;
        g_sum += w * ay;
        dg += (p_ - 2.0) * (w / g2) * ay * ay.transpose() + w * a;
      }
      const double phi = std::pow(s, 1.0 / p_);
      const Mat h = std::pow(phi, 1.0 - p_) * (dg - (p_ - 1.0) / s * g_sum * g_sum.transpose());
      return 0.5 * (h + h.transpose()) / r;
    }
  }
  return Mat::Zero(dim_, dim_);
}

Vec Norm::dual_direction(const Vec& y) const {
  const Vec yhat = y / y.norm();
  const int seeds = dim_ == 2 ? 256 : 2000;
  Vec u = yhat;
  double best = -kInf;
  for (const Vec& s : detail::sphere_points(dim_, seeds)) {
    const double f = s.dot(yhat) / eval(s);
    if (f > best) {
      best = f;
      u = s;
    }
  }
  const Mat f_basis = detail::tangent_basis(yhat);
  auto residual = [&](const Vec& v) -> Vec {
    const Vec g = grad(v);
    return f_basis.transpose() * g / g.norm();
  };
  Vec r = residual(u);
  // Newton converges quadratically: keep polishing past the acceptance tolerance until it stalls.
  for (int it = 0; it < kNewtonIterations && r.norm() > 1e-15; ++it) {
    const Mat e = detail::tangent_basis(u);
    const Vec g = grad(u);
    const Mat jac = f_basis.transpose() * hessian(u) * e / g.norm();
    const Vec step = -jac.fullPivLu().solve(r);
    double t = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      Vec cand = u + t * (e * step);
      cand.normalize();
      const Vec rc = residual(cand);
      if (rc.norm() < r.norm() && grad(cand).dot(yhat) > 0.0) {
        u = cand;
        r = rc;
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;
  }
  if (r.norm() <= kNewtonTol && grad(u).dot(yhat) > 0.0) return u;

  // Fallback: projected gradient ascent of v.y / phi(v) on the sphere.
  double step = 0.1;
  for (int it = 0; it < 20000 && r.norm() > kNewtonTol; ++it) {
    const double phi = eval(u);
    Vec df = yhat / phi - u.dot(yhat) * grad(u) / (phi * phi);
    df -= df.dot(u) * u;
    Vec cand = u + step * df;
    cand.normalize();
    if (cand.dot(yhat) / eval(cand) >= u.dot(yhat) / phi) {
      u = cand;
      r = residual(u);
      step *= 1.2;
    } else {
      step *= 0.5;
      if (step < 1e-18) break;
    }
  }
  if (r.norm() > 1e2 * kNewtonTol)
    throw Error(ErrorCode::non_convergence, "gauss map solve did not converge (residual " + std::to_string(r.norm()) + ")");
  return u;
}

double Norm::conjugate_eval(const Vec& y) const {
  if (y.norm() == 0.0) return 0.0;
  switch (kind_) {
    case NormKind::euclidean: return y.norm();
    case NormKind::ellipsoidal: return std::sqrt(std::max(0.0, y.dot(q_inv_ * y)));
    case NormKind::smoothed_lp: {
      const Vec u = dual_direction(y);
      return u.dot(y) / eval(u);
    }
  }
  return 0.0;
}

Vec Norm::grad_conjugate(const Vec& y) const {
  check_nonzero(y);
  switch (kind_) {
    case NormKind::euclidean: return y / y.norm();
    case NormKind::ellipsoidal: return q_inv_ * y / conjugate_eval(y);
    case NormKind::smoothed_lp: {
      const Vec u = dual_direction(y);
      return u / eval(u);
    }
  }
  return y;
}

Vec Norm::gauss_inverse(const Vec& u) const {
  check_nonzero(u);
  return grad(u);
}

Vec Norm::gauss_map(const Vec& eta) const {
  check_nonzero(eta);
  switch (kind_) {
    case NormKind::euclidean: return eta / eta.norm();
    case NormKind::ellipsoidal: {
      const Vec v = q_inv_ * eta;
      return v / v.norm();
    }
    case NormKind::smoothed_lp: return dual_direction(eta);
  }
  return eta;
}

}  // namespace anisocurv
