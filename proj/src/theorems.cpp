// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/theorems.hpp"

#include "numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace anisocurv {

namespace {

double weighted_phi(const Norm& norm, const BundleSample& s) { return norm.eval(s.u) * s.jacobian * s.weight; }

bool top_stratum(const BundleSample& s) { return s.stratum_d == static_cast<int>(s.kappa.size()); }

int top_dim(const std::vector<BundleSample>& bundle) {
  if (bundle.empty()) throw Error(ErrorCode::invalid_argument, "empty bundle");
  return static_cast<int>(bundle.front().kappa.size());
}

double volume_of(const Shape& shape) {
  const auto v = shape.volume();
  if (!v || !(*v > 0.0)) throw Error(ErrorCode::precondition_failed, "the set needs finite positive volume");
  return *v;
}

std::vector<double> chain_values(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  const auto s = detail::elementary_symmetric(x, k);
  std::vector<double> q;
  for (int i = 1; i <= k; ++i) q.push_back(std::pow(std::max(0.0, s[static_cast<std::size_t>(i)] / detail::binomial(n, i)), 1.0 / i));
  return q;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Single-linkage clusters; `link` is the linking radius.
std::vector<std::vector<Vec>> cluster(const std::vector<Vec>& pts, double link) {
  const std::size_t n = pts.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((pts[i] - pts[j]).norm() <= link) uf.join(static_cast<int>(i), static_cast<int>(j));
  std::vector<int> label(n, -1);
  std::vector<std::vector<Vec>> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = static_cast<std::size_t>(uf.find(static_cast<int>(i)));
    if (label[root] < 0) {
      label[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(label[root])].push_back(pts[i]);
  }
  return out;
}

// Gauss-Newton fit of phi*(x - c) = rho over the points; returns (c, rho, max residual).
std::tuple<Vec, double, double> fit_wulff(const Norm& norm, const std::vector<Vec>& pts) {
  const auto d = pts.front().size();
  Vec c = Vec::Zero(d);
  for (const Vec& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double rho = 0.0;
  for (const Vec& p : pts) rho += norm.conjugate_eval(p - c);
  rho /= static_cast<double>(pts.size());
  const auto m = static_cast<Eigen::Index>(pts.size());
  for (int it = 0; it < 50; ++it) {
    Eigen::MatrixXd jac(m, d + 1);
    Eigen::VectorXd res(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Vec v = pts[static_cast<std::size_t>(i)] - c;
      res(i) = norm.conjugate_eval(v) - rho;
      jac.row(i).head(d) = -norm.grad_conjugate(v).transpose();
      jac(i, d) = -1.0;
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-res);
    c += step.head(d);
    rho += step(d);
    if (step.norm() < 1e-13 * (1.0 + std::abs(rho))) break;
  }
  double worst = 0.0;
  for (const Vec& p : pts) worst = std::max(worst, std::abs(norm.conjugate_eval(p - c) - rho));
  return {c, rho, worst};
}

}  // namespace

bool in_gamma_cone(const std::vector<double>& x, int k, double tol) {
  if (k < 1 || k > static_cast<int>(x.size())) throw Error(ErrorCode::invalid_argument, "cone index out of range");
  const auto s = detail::elementary_symmetric(x, k);
  for (int i = 1; i <= k; ++i)
    if (s[static_cast<std::size_t>(i)] < -tol) return false;
  return true;
}

TheoremVerdict maclaurin_check(const std::vector<double>& x, int k, double tol) {
  if (!in_gamma_cone(x, k)) throw Error(ErrorCode::precondition_failed, "vector outside the cone S_1..S_k >= 0");
  const auto q = chain_values(x, k);
  TheoremVerdict v;
  v.name = "maclaurin";
  v.tolerance = tol;
  v.lhs = q.front();
  v.rhs = q.back();
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) worst = std::max(worst, (q[j] - q[i]) / (1.0 + q[i]));
  v.residual = worst;
  v.pass = worst <= tol;
  return v;
}

TheoremVerdict minkowski_check(const Shape& shape, const Norm& norm, int r, const std::vector<BundleSample>& bundle, double tol) {
  const int n = top_dim(bundle);
  if (r < 1 || r > n) throw Error(ErrorCode::invalid_argument, "Minkowski index out of range");
  volume_of(shape);
  std::vector<double> left, right;
  for (const auto& s : bundle) {
    const auto h = mean_curvatures(s).H;
    left.push_back((n - r + 1) * weighted_phi(norm, s) * h[static_cast<std::size_t>(r - 1)]);
    right.push_back(r * s.a.dot(s.u) * s.jacobian * s.weight * h[static_cast<std::size_t>(r)]);
  }
  TheoremVerdict v;
  v.name = "minkowski r=" + std::to_string(r);
  v.lhs = detail::pairwise_sum(left);
  v.rhs = detail::pairwise_sum(right);
  v.residual = std::abs(v.lhs - v.rhs) / std::max({std::abs(v.lhs), std::abs(v.rhs), 1e-300});
  v.tolerance = tol;
  v.pass = v.residual <= tol;
  return v;
}

TheoremVerdict minkowski_volume_check(const Shape& shape, const Norm& norm, const std::vector<BundleSample>& bundle, double tol) {
  (void)norm;
  const int n = top_dim(bundle);
  std::vector<double> terms;
  for (const auto& s : bundle) terms.push_back(s.a.dot(s.u) * s.jacobian * s.weight * mean_curvatures(s).H[0]);
  TheoremVerdict v;
  v.name = "minkowski volume";
  v.lhs = detail::pairwise_sum(terms);
  v.rhs = (n + 1) * volume_of(shape);
  v.residual = std::abs(v.lhs - v.rhs) / v.rhs;
  v.tolerance = tol;
  v.pass = v.residual <= tol;
  return v;
}

TheoremVerdict heintze_karcher_check(const Shape& shape, const Norm& norm, const std::vector<BundleSample>& complement_bundle,
                                     const HeintzeKarcherOptions& opts) {
  const int n = top_dim(complement_bundle);
  TheoremVerdict v;
  v.name = "heintze-karcher";
  v.tolerance = opts.tol;
  std::vector<double> terms;
  for (const auto& s : complement_bundle) {
    if (!top_stratum(s)) continue;
    // The curvatures of the complement are those of the set with reversed sign.
    const double h1 = -mean_curvatures(s).H[1];
    if (h1 < -opts.tol_sign) {
      v.witnesses.push_back(s.a);
      continue;
    }
    if (h1 <= opts.tol_sign) {
      v.infinite = true;
      continue;
    }
    terms.push_back(n * weighted_phi(norm, s) / h1);
  }
  if (!v.witnesses.empty()) {
    v.error = ErrorCode::precondition_failed;
    v.note = "mean curvature negative at " + std::to_string(v.witnesses.size()) + " samples";
    return v;
  }
  v.rhs = (n + 1) * volume_of(shape);
  if (v.infinite) {
    v.lhs = kInf;
    v.residual = kInf;
    v.pass = true;
    v.note = "flat boundary part: integral diverges";
    return v;
  }
  v.lhs = detail::pairwise_sum(terms);
  v.residual = (v.lhs - v.rhs) / v.rhs;
  v.pass = v.residual >= -opts.tol;
  v.equality = std::abs(v.residual) <= opts.tol_eq;
  return v;
}

TheoremVerdict mean_convexity_ledger(const Shape& shape, const Norm& norm, int r, const std::vector<BundleSample>& bundle, double tol) {
  (void)shape;
  (void)norm;
  const int n = top_dim(bundle);
  if (r < 0 || r > n) throw Error(ErrorCode::invalid_argument, "mean convexity index out of range");
  TheoremVerdict v;
  v.name = "mean convexity r=" + std::to_string(r);
  v.tolerance = tol;
  double worst = kInf;
  for (const auto& s : bundle) {
    const auto h = mean_curvatures(s).H;
    double low = h[static_cast<std::size_t>(r)];
    if (top_stratum(s))
      for (int i = 1; i < r; ++i) low = std::min(low, h[static_cast<std::size_t>(i)]);
    if (low < -tol) v.witnesses.push_back(s.a);
    worst = std::min(worst, low);
  }
  v.lhs = worst;
  v.rhs = 0.0;
  v.residual = worst;
  v.pass = v.witnesses.empty();
  return v;
}

BubbleVerdict alexandrov_classify(const Shape& shape, const Norm& norm, int r, const std::vector<BundleSample>& bundle,
                                  const BubbleOptions& opts) {
  const int n = top_dim(bundle);
  if (r < 1 || r > n) throw Error(ErrorCode::invalid_argument, "curvature index out of range");
  BubbleVerdict out;
  const double vol = volume_of(shape);
  const double perimeter = phi_perimeter(shape, norm, opts.perimeter_samples);
  out.rho_volume = (n + 1) * vol / perimeter;

  // Lower strata whose positions are at least (n - r)-dimensional must carry negligible weight.
  std::vector<double> all, singular;
  for (const auto& s : bundle) {
    all.push_back(s.weight);
    if (!top_stratum(s) && s.chart_stratum >= n - r) singular.push_back(s.weight);
  }
  out.singular_fraction = detail::pairwise_sum(singular) / detail::pairwise_sum(all);

  std::vector<double> hr, area;
  std::vector<Vec> pts;
  for (const auto& s : bundle)
    if (top_stratum(s)) {
      hr.push_back(mean_curvatures(s).H[static_cast<std::size_t>(r)]);
      area.push_back(s.jacobian * s.weight);
      pts.push_back(s.a);
    }
  if (out.singular_fraction > opts.tol_sing || hr.empty()) {
    out.failure_reason = kSingularBudget;
    return out;
  }
  const auto [lo, hi] = std::minmax_element(hr.begin(), hr.end());
  const double mean = detail::pairwise_sum(hr) / static_cast<double>(hr.size());
  out.curvature_spread = (*hi - *lo) / std::max(std::abs(mean), 1e-300);
  out.lambda = mean / (r + 1);
  if (out.curvature_spread > opts.tol_const) {
    out.failure_reason = kNotConstant;
    return out;
  }
  if (!(out.lambda > 0.0)) {
    out.failure_reason = kNonPositive;
    return out;
  }
  out.rho_algebraic = std::pow(detail::binomial(n, r), 1.0 / r) * std::pow(out.lambda * (r + 1), -1.0 / r);
  if (std::abs(out.rho_algebraic - out.rho_volume) > opts.tol_rad * out.rho_volume) {
    out.failure_reason = kRadiusMismatch;
    return out;
  }
  std::vector<double> radii;
  // Link radius: three times the mean sample spacing on the boundary.
  const double spacing = std::pow(detail::pairwise_sum(area) / static_cast<double>(pts.size()), 1.0 / n);
  for (const auto& comp : cluster(pts, 3.0 * spacing)) {
    const auto [c, rho, worst] = fit_wulff(norm, comp);
    out.centers.push_back(c);
    radii.push_back(rho);
    out.max_fit_residual = std::max(out.max_fit_residual, worst);
  }
  out.count = static_cast<int>(out.centers.size());
  out.radius = detail::pairwise_sum(radii) / static_cast<double>(radii.size());
  out.radius_consistency_volume = std::abs(out.radius - out.rho_volume);
  out.radius_consistency_algebraic = std::abs(out.radius - out.rho_algebraic);
  bool equal_radii = true;
  for (double rho : radii) equal_radii = equal_radii && std::abs(rho - out.rho_algebraic) <= opts.tol_rad * out.rho_algebraic;
  if (out.max_fit_residual > opts.tol_fit * out.radius || !equal_radii) {
    out.failure_reason = kFitFailed;
    return out;
  }
  out.is_bubble_union = true;
  if (opts.check_reach_gap && out.count > 1) {
    const double reach = global_reach(shape, norm, 64, 1).global;
    bool ok = true;
    for (std::size_t i = 0; i < out.centers.size(); ++i)
      for (std::size_t j = i + 1; j < out.centers.size(); ++j)
        ok = ok && norm.conjugate_eval(out.centers[j] - out.centers[i]) - 2.0 * out.radius >= 2.0 * reach * (1.0 - opts.tol_rad);
    out.reach_gap_ok = ok;
  }
  return out;
}

TheoremVerdict lower_bound_rigidity(const Shape& shape, const Norm& norm, const std::vector<BundleSample>& bundle, double tol) {
  const int n = top_dim(bundle);
  TheoremVerdict v;
  v.name = "lower-bound rigidity";
  v.tolerance = tol;
  const double rho = (n + 1) * volume_of(shape) / phi_perimeter(shape, norm);
  v.rhs = n / rho;
  double low = kInf;
  for (const auto& s : bundle)
    if (top_stratum(s)) low = std::min(low, mean_curvatures(s).H[1]);
  v.lhs = low;
  v.residual = (low - v.rhs) / v.rhs;
  if (v.residual < -tol) {
    v.pass = true;
    v.note = "hypothesis fails: no rigidity claimed";
    return v;
  }
  BubbleOptions bo;
  bo.check_reach_gap = false;
  const BubbleVerdict b = alexandrov_classify(shape, norm, 1, bundle, bo);
  v.pass = b.is_bubble_union;
  v.note = b.is_bubble_union ? "hypothesis holds: bubble union confirmed" : "hypothesis holds but classifier disagrees: " + b.failure_reason;
  return v;
}

}  // namespace anisocurv
