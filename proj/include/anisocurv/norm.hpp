// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/types.hpp"

namespace anisocurv {

enum class NormKind { euclidean, ellipsoidal, smoothed_lp };

/// A symmetric, uniformly convex C^2 norm phi on R^d (d = 2 or 3).
///
/// The conjugate phi* is the support function of {phi <= 1}; its unit ball
/// {phi* <= 1} is the Wulff shape.  Immutable after construction.
class Norm {
 public:
  static Norm euclidean(int dim);
  /// phi(x) = sqrt(x^T Q x); Q must be symmetric positive definite.
  static Norm ellipsoidal(const Mat& q);
  /// phi(x) = (sum_i (x_i^2 + eps^2 |x|^2)^(p/2))^(1/p).
  static Norm smoothed_lp(int dim, double p, double smoothing = 0.05);

  int dim() const noexcept { return dim_; }
  NormKind kind() const noexcept { return kind_; }
  /// Smallest tangential Hessian eigenvalue on the unit sphere (sampled).
  double gamma() const noexcept { return gamma_; }
  double exponent() const noexcept { return p_; }
  double smoothing() const noexcept { return eps_; }
  /// True for euclidean and ellipsoidal norms; quadratic_form() is then Q.
  bool is_quadratic() const noexcept { return kind_ != NormKind::smoothed_lp; }
  const Mat& quadratic_form() const noexcept { return q_; }
  bool same_as(const Norm& other) const;

  double eval(const Vec& x) const;
  double conjugate_eval(const Vec& y) const;
  Vec grad(const Vec& x) const;
  Vec grad_conjugate(const Vec& y) const;
  Mat hessian(const Vec& x) const;

  /// Inverse of gauss_inverse: the Euclidean unit normal of the Wulff shape at eta.
  Vec gauss_map(const Vec& eta) const;
  /// grad phi(u), a point of the Wulff shape boundary.
  Vec gauss_inverse(const Vec& u) const;

  const char* kind_name() const noexcept;

 private:
  Norm() = default;
  void estimate_gamma();
  /// Unit u with grad phi(u) parallel to y (same orientation).
  Vec dual_direction(const Vec& y) const;

  int dim_ = 2;
  NormKind kind_ = NormKind::euclidean;
  Mat q_;
  Mat q_inv_;
  double p_ = 2.0;
  double eps_ = 0.0;
  double gamma_ = 1.0;
};

}  // namespace anisocurv
