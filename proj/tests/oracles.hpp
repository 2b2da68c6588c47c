// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
//
// Reference computations for the tests.  They use only elementary formulas,
// brute force or finite differences and never call into the library's
// projection, curvature or quadrature code.
#pragma once

#include "anisocurv/norm.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using anisocurv::Mat;
using anisocurv::Norm;
using anisocurv::Vec;

inline constexpr double kPi = std::numbers::pi;

inline Vec v2(double x, double y) { return anisocurv::make_vec({x, y}); }
inline Vec v3(double x, double y, double z) { return anisocurv::make_vec({x, y, z}); }

inline Vec random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Vec u(d);
  for (int i = 0; i < d; ++i) u(i) = g(rng);
  return u.normalized();
}

/// Central-difference gradient of a scalar function.
template <class F>
Vec fd_gradient(F&& f, const Vec& x, double h = 1e-6) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec e = Vec::Zero(x.size());
    e(i) = h;
    g(i) = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  return g;
}

/// sup { v.y : phi(v) = 1 } over a dense angular sweep of the plane, refined by golden-section search.
inline double brute_conjugate_2d(const Norm& norm, const Vec& y, int sweep = 1000000) {
  auto f = [&](double t) {
    const Vec v = v2(std::cos(t), std::sin(t));
    return v.dot(y) / norm.eval(v);
  };
  double best_t = 0.0, best = -1e300;
  for (int i = 0; i < sweep; ++i) {
    const double t = 2.0 * kPi * i / sweep;
    const double val = f(t);
    if (val > best) {
      best = val;
      best_t = t;
    }
  }
  double lo = best_t - 2.0 * kPi / sweep, hi = best_t + 2.0 * kPi / sweep;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 100; ++i) {
    const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    if (f(a) > f(b))
      hi = b;
    else
      lo = a;
  }
  return f(0.5 * (lo + hi));
}

/// Curvature of the ellipse (a cos t, b sin t).
inline double ellipse_curvature(double a, double b, double t) {
  const double s = std::sin(t), c = std::cos(t);
  return a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

/// Area of the union of two discs of radius r whose centres are d apart.
inline double two_disc_union_area(double r, double d) {
  const double disc = kPi * r * r;
  if (d >= 2.0 * r) return 2.0 * disc;
  const double lens = 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
  return 2.0 * disc - lens;
}

/// Area of the rho-offset of a convex polygon with perimeter p and area a.
inline double convex_offset_area(double area, double perimeter, double rho) { return area + perimeter * rho + kPi * rho * rho; }

/// Unit-ball volumes in dimension k = 0..3.
inline double ball_volume(int k) {
  static const double v[] = {1.0, 2.0, kPi, 4.0 * kPi / 3.0};
  return v[k];
}

/// Elementary symmetric polynomial S_k by expanding prod (1 + x_i t).
inline double elementary(const std::vector<double>& x, int k) {
  std::vector<double> c(x.size() + 1, 0.0);
  c[0] = 1.0;
  for (double xi : x)
    for (std::size_t j = c.size() - 1; j >= 1; --j) c[j] += xi * c[j - 1];
  return c[static_cast<std::size_t>(k)];
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Perimeter integral of phi(n) along the ellipse (a cos t, b sin t) by refined polygon (midpoint rule on edges).
inline double polygon_phi_perimeter_ellipse(const Norm& norm, double a, double b, int edges) {
  double sum = 0.0;
  for (int i = 0; i < edges; ++i) {
    const double t0 = 2.0 * kPi * i / edges, t1 = 2.0 * kPi * (i + 1) / edges;
    const Vec p0 = v2(a * std::cos(t0), b * std::sin(t0)), p1 = v2(a * std::cos(t1), b * std::sin(t1));
    const Vec e = p1 - p0;
    sum += norm.eval(v2(e(1), -e(0)));  // |e| * phi(outward unit normal)
  }
  return sum;
}

}  // namespace oracle
