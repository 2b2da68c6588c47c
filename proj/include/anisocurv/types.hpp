// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace anisocurv {

// Points and small matrices in R^d with d <= 3 (or R^{2d} for bundle tangents).
// Dynamic size with a fixed upper bound keeps everything on the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;
using Vec6 = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 6, 1>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
  invalid_argument = 1,
  zero_vector,
  non_convergence,
  invalid_normal,
  not_on_boundary,
  not_alexandrov,
  empty_interior,
  projection_noise,
  invariance_violation,
  strata_coverage_gap,
  budget_exceeded,
  precondition_failed,
  config_error,
  io_error,
};

const char* to_string(ErrorCode code) noexcept;

/// Worker threads for batch computations; 0 means hardware concurrency.  Results do not depend on it.
void set_threads(int threads);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace anisocurv
