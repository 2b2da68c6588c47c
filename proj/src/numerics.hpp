// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/types.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace anisocurv::detail {

/// Orthonormal basis of u^perp, returned as the columns of a d x (d-1) matrix.
Mat tangent_basis(const Vec& u);

/// Unit vector on S^1 (angle) or S^2 (polar angle theta, azimuth phi).
Vec unit_circle(double angle);
Vec unit_sphere(double theta, double phi);

/// Roughly uniform points on S^{d-1}; d = 2 gives equally spaced angles.
std::vector<Vec> sphere_points(int dim, int count);

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);
/// Shifted midpoint rule on [0, 1) for periodic integrands.
QuadratureRule periodic_rule(int n, double shift);

/// Root of a continuous f bracketed by f(lo), f(hi) of opposite sign (Illinois regula falsi).
/// Terminates when the bracket is at machine resolution.
double find_root(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi);

/// Pairwise (cascade) summation; result independent of how callers chunk work.
double pairwise_sum(std::span<const double> xs);

/// Elementary symmetric functions S_0..S_k of xs (S_0 = 1) via the product recurrence.
std::vector<double> elementary_symmetric(std::span<const double> xs, int k);

double binomial(int n, int k);

/// Square root of the Gram determinant of the columns (the k-volume they span).
double wedge_norm(const Eigen::MatrixXd& columns);

/// Runs body(i) for i in [0, n) on the configured number of threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
void set_thread_count(int threads);
int thread_count();

inline double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace anisocurv::detail
