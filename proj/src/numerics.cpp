// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace anisocurv {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::zero_vector: return "ZeroVector";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::invalid_normal: return "InvalidNormal";
    case ErrorCode::not_on_boundary: return "NotOnBoundary";
    case ErrorCode::not_alexandrov: return "NotAlexandrov";
    case ErrorCode::empty_interior: return "EmptyInterior";
    case ErrorCode::projection_noise: return "ProjectionNoise";
    case ErrorCode::invariance_violation: return "InvarianceViolation";
    case ErrorCode::strata_coverage_gap: return "StrataCoverageGap";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::precondition_failed: return "PreconditionFailed";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

void set_threads(int threads) { detail::set_thread_count(threads); }

}  // namespace anisocurv

namespace anisocurv::detail {

Mat tangent_basis(const Vec& u) {
  const Eigen::Index d = u.size();
  Mat basis(d, d - 1);
  if (d == 2) {
    basis(0, 0) = -u(1);
    basis(1, 0) = u(0);
    return basis;
  }
  // Gram-Schmidt against the coordinate axis least aligned with u.
  Eigen::Index axis = 0;
  u.cwiseAbs().minCoeff(&axis);
  Vec e = Vec::Zero(d);
  e(axis) = 1.0;
  Vec t1 = e - e.dot(u) * u;
  t1.normalize();
  Eigen::Vector3d t2 = Eigen::Vector3d(u(0), u(1), u(2)).cross(Eigen::Vector3d(t1(0), t1(1), t1(2)));
  basis.col(0) = t1;
  basis.col(1) = Vec(t2);
  return basis;
}

Vec unit_circle(double angle) { return make_vec({std::cos(angle), std::sin(angle)}); }

Vec unit_sphere(double theta, double phi) {
  return make_vec({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

std::vector<Vec> sphere_points(int dim, int count) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) pts.push_back(unit_circle(2.0 * std::numbers::pi * i / count));
    return pts;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.push_back(make_vec({rad * std::cos(phi), rad * std::sin(phi), z}));
  }
  return pts;
}

QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0, p1 = x;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const auto idx = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[idx] = 0.5 * (x + 1.0);
    rule.weights[idx] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

QuadratureRule periodic_rule(int n, double shift) {
  QuadratureRule rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back((i + shift) / n);
    rule.weights.push_back(1.0 / n);
  }
  return rule;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

std::vector<double> elementary_symmetric(std::span<const double> xs, int k) {
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double x : xs) {
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
  }
  return e;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double wedge_norm(const Eigen::MatrixXd& columns) {
  if (columns.cols() == 0) return 1.0;
  const Eigen::MatrixXd gram = columns.transpose() * columns;
  return std::sqrt(std::max(0.0, gram.determinant()));
}

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int threads) { g_threads.store(std::max(0, threads)); }

int thread_count() {
  const int t = g_threads.load();
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const auto threads = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace anisocurv::detail
