// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/curvature.hpp"

#include "charts.hpp"
#include "numerics.hpp"
#include "pieces.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace anisocurv {

namespace {

constexpr double kKinkTol = 1e-3;

// Tangent step used when the default one drowns in round-off (very small probes).
constexpr double kWideStepRel = 1e-2;

ChiResult chi_core(const Shape& shape, const Norm& norm, const Vec& x, const Vec& u, double r, double step_rel) {
  const int d = shape.dim();
  const int n = d - 1;
  const Mat e = detail::tangent_basis(u);
  const double h = step_rel * r;
  auto central = [&](int j, double step) -> Vec {
    const ProjectionResult pp = project(shape, norm, x + step * e.col(j));
    const ProjectionResult pm = project(shape, norm, x - step * e.col(j));
    if (pp.multiplicity != Multiplicity::unique || pm.multiplicity != Multiplicity::unique || pp.delta <= 0.0 || pm.delta <= 0.0)
      throw Error(ErrorCode::projection_noise, "finite-difference stencil left the set of unique projections");
    return (pp.nu - pm.nu) / (2.0 * step);
  };
  // Richardson extrapolation of two central differences.  When the two disagree far beyond
  // their O(h^2) error the stencil straddles a change of nearest-point regime.
  Mat dnu(d, n);
  bool kink = false;
  for (int j = 0; j < n; ++j) {
    const Vec wide = central(j, h), narrow = central(j, 0.5 * h);
    kink = kink || (wide - narrow).norm() > kKinkTol * (1.0 / r + narrow.norm());
    dnu.col(j) = (4.0 * narrow - wide) / 3.0;
  }
  const Mat m = e.transpose() * dnu;
  const Mat hphi = e.transpose() * norm.hessian(u) * e;
  const Mat b = hphi.inverse();
  Mat s = b * m;
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(s, b);
  ChiResult out;
  out.kink = kink;
  // nu = (x - foot) / r carries an absolute error of about one ulp of x over r; the
  // extrapolated difference amplifies it by roughly 3 / h.
  out.noise = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + x.lpNorm<Eigen::Infinity>()) / (r * h);
  out.u = u;
  out.r = r;
  out.frame = e * ges.eigenvectors();
  for (int i = 0; i < n; ++i) out.chi.push_back(std::min(ges.eigenvalues()(i), 1.0 / r));
  return out;
}

std::vector<double> to_kappa(const ChiResult& c, double tol_inf) {
  std::vector<double> k;
  for (double chi : c.chi) k.push_back(kappa_from_chi(chi, c.r, tol_inf));
  return k;
}

bool noisy(const ChiResult& c, double tol) {
  for (double chi : c.chi)
    if (c.noise > tol * (1.0 + std::abs(chi))) return true;
  return false;
}

// chi at the default step, retried with the wide step when round-off exceeds the audit tolerance.
ChiResult chi_probe(const Shape& shape, const Norm& norm, const Vec& x, const Vec& u, double r, const CurvatureOptions& opts) {
  ChiResult c = chi_core(shape, norm, x, u, r, opts.fd_step_rel);
  if (noisy(c, opts.tol_kinv) && kWideStepRel > opts.fd_step_rel) c = chi_core(shape, norm, x, u, r, kWideStepRel);
  return c;
}

bool near_pole(const ChiResult& c, double tol_inf) {
  for (double chi : c.chi) {
    const double den = std::abs(1.0 - c.r * chi);
    if (den > 0.1 * tol_inf && den < 10.0 * tol_inf) return true;
  }
  return false;
}

double probe_offset(const Shape& shape, double reach, const CurvatureOptions& opts) {
  return std::min(opts.r_frac * reach, opts.r_cap_frac * shape.diameter());
}

// Curvatures at (a, eta) with u = n(eta), audited at twice the probe offset.
BundleSample analyze(const Shape& shape, const Norm& norm, const Vec& a, const Vec& u, double reach, const CurvatureOptions& opts) {
  BundleSample smp;
  smp.a = a;
  smp.u = u;
  smp.eta = norm.grad(u);
  smp.reach = reach;
  const double r = probe_offset(shape, reach, opts);
  smp.probe = r;
  const ChiResult c1 = chi_probe(shape, norm, a + r * smp.eta, u, r, opts);
  const ChiResult c2 = chi_probe(shape, norm, a + 2.0 * r * smp.eta, u, 2.0 * r, opts);
  smp.kappa = to_kappa(c1, opts.tol_inf);
  smp.kappa_audit = to_kappa(c2, opts.tol_inf);
  smp.tau = c1.frame;
  smp.ambiguous = near_pole(c1, opts.tol_inf) || near_pole(c2, opts.tol_inf) || c1.kink || c2.kink || noisy(c1, opts.tol_kinv) ||
                  noisy(c2, opts.tol_kinv);
  for (std::size_t i = 0; i < smp.kappa.size(); ++i) {
    const double k1 = smp.kappa[i], k2 = smp.kappa_audit[i];
    if (std::isfinite(k1) != std::isfinite(k2)) {
      smp.ambiguous = true;
      smp.invariance_violation = true;
    } else if (std::isfinite(k1) && std::abs(k1 - k2) > opts.tol_kinv * (1.0 + std::abs(k1))) {
      smp.invariance_violation = true;
    }
  }
  smp.stratum_d = static_cast<int>(std::count_if(smp.kappa.begin(), smp.kappa.end(), [](double k) { return std::isfinite(k); }));
  smp.jacobian = bundle_jacobian(smp.tau, smp.kappa);
  return smp;
}

double reach_of(const Shape& shape, const Norm& norm, const Vec& a, const Vec& eta, const CurvatureOptions& opts) {
  if (shape.is_convex()) return kInf;
  return reach_along(shape, norm, a, eta, opts.reach).value;
}

}  // namespace

double kappa_from_chi(double chi, double r, double tol_inf) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "probe offset must be positive");
  const double den = 1.0 - r * chi;
  if (den <= tol_inf) return kInf;
  return chi / den;
}

ChiResult chi_eigen(const Shape& shape, const Norm& norm, const Vec& x, const CurvatureOptions& opts) {
  const ProjectionResult p = project(shape, norm, x);
  if (p.delta <= 0.0) throw Error(ErrorCode::invalid_argument, "chi_eigen needs a point outside the set");
  if (p.multiplicity != Multiplicity::unique) throw Error(ErrorCode::projection_noise, "point has several nearest points");
  return chi_probe(shape, norm, x, norm.gauss_map(p.nu), p.delta, opts);
}

double bundle_jacobian(const Mat& tau, const std::vector<double>& kappa) {
  const auto d = tau.rows();
  const auto n = tau.cols();
  Eigen::MatrixXd zeta = Eigen::MatrixXd::Zero(2 * d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = kappa[static_cast<std::size_t>(i)];
    if (std::isfinite(k)) {
      zeta.col(i).head(d) = tau.col(i);
      zeta.col(i).tail(d) = k * tau.col(i);
    } else {
      zeta.col(i).tail(d) = tau.col(i);
    }
  }
  return detail::wedge_norm(Eigen::MatrixXd(tau)) / detail::wedge_norm(zeta);
}

std::vector<BundleSample> bundle_sample(const Shape& shape, const Norm& norm, int n_samples, std::uint64_t seed,
                                        const CurvatureOptions& opts) {
  if (norm.dim() != shape.dim()) throw Error(ErrorCode::invalid_argument, "norm and shape dimensions differ");
  std::mt19937_64 rng(seed);
  const double shift = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto charts = detail::shape_charts(shape);
  const auto nodes = detail::chart_nodes(charts, n_samples, shift);
  std::vector<BundleSample> out(nodes.size());
  detail::parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& node = nodes[i];
    const auto& chart = charts[static_cast<std::size_t>(node.chart)];
    const Vec eta = norm.grad(node.u);
    BundleSample smp = analyze(shape, norm, node.a, node.u, reach_of(shape, norm, node.a, eta, opts), opts);
    smp.weight = detail::bundle_density(chart, norm, node.s) * node.param_weight;
    smp.chart_stratum = chart.chart.stratum;
    smp.chart = node.chart;
    smp.piece = chart.piece;
    out[i] = std::move(smp);
  });
  return out;
}

CurvatureSpectrum mean_curvatures(const std::vector<double>& kappa) {
  const int n = static_cast<int>(kappa.size());
  std::vector<double> finite;
  for (double k : kappa)
    if (std::isfinite(k)) finite.push_back(k);
  const int d = static_cast<int>(finite.size());
  CurvatureSpectrum cs;
  const auto e = detail::elementary_symmetric(finite, n);
  cs.E.assign(e.begin(), e.end());
  cs.H.assign(static_cast<std::size_t>(n) + 1, 0.0);
  // H_r = sum_j E_j [d = j + n - r]: only j = r - (n - d) contributes.
  for (int r = 0; r <= n; ++r) {
    const int j = r - (n - d);
    if (j >= 0) cs.H[static_cast<std::size_t>(r)] = cs.E[static_cast<std::size_t>(j)];
  }
  return cs;
}

CurvatureSpectrum mean_curvatures(const BundleSample& sample) { return mean_curvatures(sample.kappa); }

std::vector<double> kappa_at(const Shape& shape, const Norm& norm, const Vec& a, const Vec& eta, const CurvatureOptions& opts) {
  const double reach = reach_of(shape, norm, a, eta, opts);
  const double r = probe_offset(shape, reach, opts);
  return to_kappa(chi_probe(shape, norm, a + r * eta, norm.gauss_map(eta), r, opts), opts.tol_inf);
}

std::vector<double> pointwise_h(const Shape& shape, const Norm& norm, const Vec& a) {
  const BoundaryClassification cls = classify_boundary_point(shape, norm, a);
  if (cls.cls != BoundaryClass::alexandrov) throw Error(ErrorCode::not_alexandrov, "pointwise curvature needs an Alexandrov point");
  const double diam = shape.diameter();
  const detail::Piece* piece = nullptr;
  for (const auto& p : shape.pieces())
    if (std::abs(p->level(a)) <= 1e-7 * (1.0 + diam)) piece = p.get();
  const double sgn = shape.is_complement() ? -1.0 : 1.0;
  const Vec u = cls.fiber.normals[0];
  const int d = shape.dim();
  const int n = d - 1;
  const Mat e = detail::tangent_basis(u);
  const double h = 1e-4 * diam;
  auto boundary_over = [&](const Vec& p0) {
    // The boundary is a graph over the tangent plane near a: solve along the normal line.
    auto f = [&](double t) { return piece->level(p0 + t * u); };
    double t = 4.0 * h;
    while (t < diam && (f(-t) < 0.0) == (f(t) < 0.0)) t *= 2.0;
    return Vec(p0 + detail::find_root(f, -t, t, f(-t), f(t)) * u);
  };
  Mat y(d, n), tan(d, n);
  for (int j = 0; j < n; ++j) {
    const Vec bp = boundary_over(a + h * e.col(j));
    const Vec bm = boundary_over(a - h * e.col(j));
    const Vec np = sgn * piece->fiber_at(bp).normals[0];
    const Vec nm = sgn * piece->fiber_at(bm).normals[0];
    y.col(j) = norm.grad(np) - norm.grad(nm);
    tan.col(j) = bp - bm;
  }
  const Mat l = (e.transpose() * y) * (e.transpose() * tan).inverse();
  std::vector<double> hk;
  if (n == 1) {
    hk.push_back(l(0, 0));
  } else {
    hk.push_back(l.trace());
    hk.push_back(l.determinant());
  }
  return hk;
}

}  // namespace anisocurv
