// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "charts.hpp"

#include "numerics.hpp"

#include <algorithm>
#include <cmath>

namespace anisocurv::detail {

std::vector<ShapeChart> shape_charts(const Shape& shape) {
  std::vector<ShapeChart> out;
  const auto& pieces = shape.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (Chart& c : pieces[i]->charts()) {
      if (shape.is_complement() && c.stratum < shape.dim() - 1) continue;
      out.push_back(ShapeChart{std::move(c), static_cast<int>(i), shape.is_complement()});
    }
  return out;
}

std::vector<ChartNode> chart_nodes(const std::vector<ShapeChart>& charts, int n_samples, double shift) {
  double total = 0.0;
  for (const auto& c : charts) total += c.chart.size;
  std::vector<ChartNode> out;
  for (std::size_t ci = 0; ci < charts.size(); ++ci) {
    const Chart& c = charts[ci].chart;
    const double share = n_samples * c.size / total;
    std::array<int, 2> n{1, 1};
    if (c.dims == 1) {
      n[0] = std::clamp(static_cast<int>(std::lround(share)), 4, c.node_cap[0]);
    } else {
      const double n0 = std::sqrt(share / c.aspect);
      n[0] = std::clamp(static_cast<int>(std::lround(n0)), 3, c.node_cap[0]);
      n[1] = std::clamp(static_cast<int>(std::lround(n0 * c.aspect)), 3, c.node_cap[1]);
    }
    std::array<QuadratureRule, 2> rules;
    for (int k = 0; k < c.dims; ++k)
      rules[static_cast<std::size_t>(k)] = c.periodic[static_cast<std::size_t>(k)] ? periodic_rule(n[static_cast<std::size_t>(k)], shift)
                                                                                    : gauss_legendre(n[static_cast<std::size_t>(k)]);
    if (c.dims == 1) rules[1] = QuadratureRule{{0.0}, {1.0}};
    for (std::size_t i = 0; i < rules[0].nodes.size(); ++i)
      for (std::size_t j = 0; j < rules[1].nodes.size(); ++j) {
        ChartNode node;
        node.s = {rules[0].nodes[i], rules[1].nodes[j]};
        node.param_weight = rules[0].weights[i] * rules[1].weights[j];
        node.chart = static_cast<int>(ci);
        charts[ci].eval(node.s, node.a, node.u);
        out.push_back(std::move(node));
      }
  }
  return out;
}

namespace {

Eigen::MatrixXd chart_jacobian(const ShapeChart& chart, const Norm* norm, const std::array<double, 2>& s) {
  const int d = static_cast<int>([&] {
    Vec a, u;
    chart.eval(s, a, u);
    return a.size();
  }());
  const int rows = norm ? 2 * d : d;
  Eigen::MatrixXd jac(rows, chart.chart.dims);
  const double h = 1e-6;
  for (int k = 0; k < chart.chart.dims; ++k) {
    auto sp = s, sm = s;
    sp[static_cast<std::size_t>(k)] += h;
    sm[static_cast<std::size_t>(k)] -= h;
    Vec ap, up, am, um;
    chart.eval(sp, ap, up);
    chart.eval(sm, am, um);
    jac.col(k).head(d) = (ap - am) / (2.0 * h);
    if (norm) jac.col(k).tail(d) = (norm->grad(up) - norm->grad(um)) / (2.0 * h);
  }
  return jac;
}

}  // namespace

double bundle_density(const ShapeChart& chart, const Norm& norm, const std::array<double, 2>& s) {
  return wedge_norm(chart_jacobian(chart, &norm, s));
}

double position_density(const ShapeChart& chart, const std::array<double, 2>& s) {
  if (chart.chart.stratum < chart.chart.dims) return 0.0;
  return wedge_norm(chart_jacobian(chart, nullptr, s));
}

}  // namespace anisocurv::detail
