// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/theorems.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anisocurv {

struct NamedNorm {
  std::string name;
  Norm norm;
  double tolerance = 0.0;  // norm-check residual bound; 0 picks 1e-8 (analytic) or 1e-6 (smoothed-lp)
  int line = 0;
};

struct NamedShape {
  std::string name;
  Shape shape;
  int line = 0;
};

/// One entry of the check list.  Fields a check type does not use are ignored;
/// tolerance = 0 selects the per-type default documented in the README.
struct CheckSpec {
  std::string name;
  std::string type;
  std::string shape;
  std::string norm;
  int line = 0;
  bool expect_pass = true;

  int samples = 4000;
  int r = 1;
  double tolerance = 0.0;

  // tube
  std::vector<double> rho;
  double error_factor = 1.0;  // allowance in units of the reported voxel error
  int fit_degree = 0;         // > 0: least-squares tube polynomial on rho below fit_max
  double fit_max = kInf;
  std::vector<double> expect_coefficients;
  double fit_tolerance = 0.02;  // relative, per coefficient
  VoxelOptions voxel;

  // measures
  std::vector<int> indices;  // empty: all m = 0..n
  std::vector<double> expect_theta;
  std::optional<Box> window;

  // jump
  double at = 1.0;
  double step = 0.05;
  int points = 4;
  std::optional<double> expect_jump;

  // reach
  std::optional<double> expect_reach;
  int scan_points = 10000;

  // invariance
  double quota = 0.999;

  // alexandrov
  BubbleOptions bubble;
  int expect_count = 0;
  double expect_radius = 0.0;

  // heintze-karcher
  HeintzeKarcherOptions hk;

  // maclaurin
  int vectors = 100000;
  int length = 4;
  int k = 2;

  CurvatureOptions curvature;
};

struct ExperimentConfig {
  std::vector<NamedNorm> norms;
  std::vector<NamedShape> shapes;
  std::vector<CheckSpec> checks;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output_dir = "out";
  std::string source;

  const NamedNorm* find_norm(const std::string& name) const;
  const NamedShape* find_shape(const std::string& name) const;
};

/// Key/value text with nested tables and lists; JSON is accepted as well.
/// Errors are ConfigError with the offending line and field in the message.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<string>");
ExperimentConfig load_config(const std::string& path);

inline constexpr const char* kCommands[] = {"norm-check", "shape-info", "reach", "tube", "measures", "verify", "run-all"};

struct RunSummary {
  bool ok = true;  // every check met its expectation
  int checks = 0;
  int unexpected = 0;
  std::vector<std::string> files;
};

/// Runs one subcommand and writes its reports into cfg.output_dir.
RunSummary run_command(const ExperimentConfig& cfg, const std::string& command);

}  // namespace anisocurv
