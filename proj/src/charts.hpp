// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anisocurv/norm.hpp"
#include "anisocurv/shapes.hpp"
#include "pieces.hpp"

#include <array>
#include <vector>

namespace anisocurv::detail {

struct ShapeChart {
  Chart chart;
  int piece = 0;
  bool flipped = false;  // complement view: normals reversed
  void eval(const std::array<double, 2>& s, Vec& a, Vec& u) const {
    chart.map(s, a, u);
    if (flipped) u = -u;
  }
};

struct ChartNode {
  Vec a;
  Vec u;
  std::array<double, 2> s{0.0, 0.0};
  double param_weight = 0.0;  // quadrature weight in parameter space
  int chart = 0;
};

/// Charts covering the unit normal bundle.  For complements only the flipped
/// top-stratum charts remain: lower strata of the components have empty fibers there.
std::vector<ShapeChart> shape_charts(const Shape& shape);

/// Tensor quadrature nodes with the budget shared by chart size.
std::vector<ChartNode> chart_nodes(const std::vector<ShapeChart>& charts, int n_samples, double shift);

/// H^n density of (a, grad phi(u)) with respect to the chart parameters.
double bundle_density(const ShapeChart& chart, const Norm& norm, const std::array<double, 2>& s);
/// H^n density of the position a with respect to the chart parameters (zero on lower strata).
double position_density(const ShapeChart& chart, const std::array<double, 2>& s);

}  // namespace anisocurv::detail
