// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/measures.hpp"

#include "charts.hpp"
#include "numerics.hpp"
#include "pieces.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace anisocurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

double unit_ball_volume(int k) {
  switch (k) {
    case 0: return 1.0;
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    default: return std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
  }
}

// Solid angle of the spherical triangle a, b, c (unit vectors).
double solid_angle(const Vec& a, const Vec& b, const Vec& c) {
  const Eigen::Vector3d b3 = b, c3 = c;
  const double num = std::abs(Eigen::Vector3d(a).dot(b3.cross(c3)));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

double weighted_phi(const Norm& norm, const BundleSample& s) { return norm.eval(s.u) * s.jacobian * s.weight; }

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_from_bits(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

bool in_box(const Box& box, const Vec& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (x(k) < box.lo(k) || x(k) > box.hi(k)) return false;
  return true;
}

}  // namespace

bool Window::contains(const BundleSample& s) const {
  if (box && !in_box(*box, s.a)) return false;
  if (cap_axis && s.u.dot(*cap_axis) < std::cos(cap_angle) * cap_axis->norm()) return false;
  if (!strata.empty() && !strata.count(s.stratum_d)) return false;
  return true;
}

CurvatureReport curvature_measure(const Shape& shape, const Norm& norm, int m, const std::vector<Window>& windows,
                                  const std::vector<BundleSample>& bundle) {
  const int n = shape.dim() - 1;
  if (m < 0 || m > n) throw Error(ErrorCode::invalid_argument, "curvature measure index out of range");
  std::set<int> wanted, seen;
  for (const auto& c : detail::shape_charts(shape)) wanted.insert(c.chart.stratum);
  for (const auto& s : bundle) seen.insert(s.chart_stratum);
  for (int st : wanted)
    if (!seen.count(st)) throw Error(ErrorCode::strata_coverage_gap, "stratum " + std::to_string(st) + " has no bundle samples");

  const int j = n - m;
  const double pre = 1.0 / (n - m + 1);
  std::vector<double> terms(bundle.size()), abs_terms(bundle.size());
  for (std::size_t i = 0; i < bundle.size(); ++i) {
    const double hj = mean_curvatures(bundle[i]).H[static_cast<std::size_t>(j)];
    terms[i] = pre * weighted_phi(norm, bundle[i]) * hj;
    abs_terms[i] = std::abs(terms[i]);
  }
  CurvatureReport rep;
  rep.m = m;
  rep.theta_total = detail::pairwise_sum(terms);
  rep.abs_total = detail::pairwise_sum(abs_terms);
  rep.stratum_breakdown.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int d = 0; d <= n; ++d) {
    std::vector<double> part;
    for (std::size_t i = 0; i < bundle.size(); ++i)
      if (!bundle[i].ambiguous && bundle[i].stratum_d == d) part.push_back(terms[i]);
    rep.stratum_breakdown[static_cast<std::size_t>(d)] = detail::pairwise_sum(part);
  }
  std::vector<double> amb_w, amb_t;
  for (std::size_t i = 0; i < bundle.size(); ++i)
    if (bundle[i].ambiguous) {
      amb_w.push_back(bundle[i].weight * bundle[i].jacobian);
      amb_t.push_back(terms[i]);
    }
  rep.ambiguous_weight = detail::pairwise_sum(amb_w);
  rep.ambiguous_theta = detail::pairwise_sum(amb_t);
  for (const auto& w : windows) {
    std::vector<double> part;
    for (std::size_t i = 0; i < bundle.size(); ++i)
      if (w.contains(bundle[i])) part.push_back(terms[i]);
    rep.theta_on[w.name] = detail::pairwise_sum(part);
  }
  // Even and odd halves, each rescaled to a full estimate.
  std::vector<double> even, odd;
  for (std::size_t i = 0; i < terms.size(); ++i) (i % 2 ? odd : even).push_back(2.0 * terms[i]);
  rep.quadrature_se = 0.5 * std::abs(detail::pairwise_sum(even) - detail::pairwise_sum(odd));
  if (norm.kind() == NormKind::euclidean) {
    try {
      rep.fan_total = fan_curvature_measures(shape, norm)[static_cast<std::size_t>(m)];
    } catch (const Error&) {
    }
  }
  return rep;
}

std::vector<double> fan_curvature_measures(const Shape& shape, const Norm& norm) {
  if (norm.kind() != NormKind::euclidean) throw Error(ErrorCode::precondition_failed, "the normal-fan route needs the Euclidean norm");
  if (shape.is_complement()) throw Error(ErrorCode::precondition_failed, "the normal-fan route needs a union of polytopes");
  const int d = shape.dim();
  const int n = d - 1;
  // Per face dimension m: sum of H^m(F) times the external angle fraction of F.
  std::vector<double> theta(static_cast<std::size_t>(d), 0.0);
  for (const auto& piece : shape.pieces()) {
    if (const auto* poly = dynamic_cast<const detail::PolygonPiece*>(piece.get())) {
      const auto& v = poly->vertices();
      const std::size_t k = v.size();
      std::vector<Vec> normals(k);
      for (std::size_t i = 0; i < k; ++i) {
        const Vec e = v[(i + 1) % k] - v[i];
        theta[1] += e.norm() * 0.5;
        normals[i] = make_vec({e(1), -e(0)}).normalized();
      }
      for (std::size_t i = 0; i < k; ++i) theta[0] += detail::ccw_angle(normals[(i + k - 1) % k], normals[i]) / (2.0 * kPi);
    } else if (const auto* poly3 = dynamic_cast<const detail::PolytopePiece*>(piece.get())) {
      const auto& faces = poly3->faces();
      const auto& verts = poly3->vertices();
      for (const auto& f : faces) theta[2] += f.area * 0.5;
      for (const auto& e : poly3->edges()) {
        const double ang = std::acos(std::clamp(faces[static_cast<std::size_t>(e.f0)].normal.dot(faces[static_cast<std::size_t>(e.f1)].normal), -1.0, 1.0));
        theta[1] += (verts[static_cast<std::size_t>(e.v1)] - verts[static_cast<std::size_t>(e.v0)]).norm() * ang / (2.0 * kPi);
      }
      for (std::size_t vi = 0; vi < verts.size(); ++vi) {
        const auto& ring = poly3->vertex_faces(static_cast<int>(vi));
        double omega = 0.0;
        for (std::size_t i = 1; i + 1 < ring.size(); ++i)
          omega += solid_angle(faces[static_cast<std::size_t>(ring[0])].normal, faces[static_cast<std::size_t>(ring[i])].normal,
                               faces[static_cast<std::size_t>(ring[i + 1])].normal);
        theta[0] += omega / (4.0 * kPi);
      }
    } else {
      throw Error(ErrorCode::precondition_failed, "the normal-fan route needs polygonal pieces");
    }
  }
  for (int m = 0; m <= n; ++m) theta[static_cast<std::size_t>(m)] *= unit_ball_volume(n + 1 - m);
  return theta;
}

double phi_perimeter(const Shape& shape, const Norm& norm, int n_samples) {
  if (!shape.has_interior()) throw Error(ErrorCode::empty_interior, "perimeter needs a set with interior");
  if (norm.dim() != shape.dim()) throw Error(ErrorCode::invalid_argument, "norm and shape dimensions differ");
  std::vector<detail::ShapeChart> top;
  for (auto& c : detail::shape_charts(shape))
    if (c.chart.stratum == shape.dim() - 1) top.push_back(std::move(c));
  const auto nodes = detail::chart_nodes(top, n_samples, 0.5);
  std::vector<double> terms(nodes.size());
  detail::parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& node = nodes[i];
    terms[i] = norm.eval(node.u) * detail::position_density(top[static_cast<std::size_t>(node.chart)], node.s) * node.param_weight;
  });
  return detail::pairwise_sum(terms);
}

TubeRecord voxel_tube_volume(const Shape& shape, const Norm& norm, const std::vector<double>& rho_grid, const VoxelOptions& opts) {
  if (rho_grid.empty()) throw Error(ErrorCode::invalid_argument, "empty radius grid");
  for (double r : rho_grid)
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::invalid_argument, "radii must be positive");
  if (opts.h < 0.0) throw Error(ErrorCode::invalid_argument, "voxel size must be positive");
  const int d = shape.dim();
  const double diam = shape.diameter();
  const double h = opts.h > 0.0 ? opts.h : diam / (d == 2 ? 512.0 : 128.0);
  const double rho_max = *std::max_element(rho_grid.begin(), rho_grid.end());

  Box box = shape.bounding_box();
  if (!shape.is_complement()) {
    for (int k = 0; k < d; ++k) {
      Vec e = Vec::Zero(d);
      e(k) = 1.0;
      const double pad = rho_max * norm.eval(e) + h;
      box.lo(k) -= pad;
      box.hi(k) += pad;
    }
  }
  // Distance scale of a half voxel diagonal, and a lower bound of phi* on unit vectors.
  double dual_max = 0.0, dual_min = kInf;
  for (const Vec& v : detail::sphere_points(d, 720)) {
    const double c = norm.conjugate_eval(v);
    dual_max = std::max(dual_max, c);
    dual_min = std::min(dual_min, c);
  }
  dual_min *= 0.99;

  std::vector<std::size_t> order(rho_grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rho_grid[a] < rho_grid[b]; });
  std::vector<double> sorted(rho_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = rho_grid[order[i]];

  struct Sphere {
    Vec c;
    double r;
  };
  std::vector<Sphere> spheres;
  for (const auto& p : shape.pieces()) {
    const Box b = p->box();
    spheres.push_back({0.5 * (b.lo + b.hi), 0.5 * b.diameter()});
  }

  TubeRecord rec;
  rec.rho_grid = rho_grid;
  double cell = h;
  std::array<long long, 3> count{1, 1, 1};
  long long total = 1;
  for (int k = 0; k < d; ++k) {
    count[static_cast<std::size_t>(k)] = static_cast<long long>(std::ceil((box.hi(k) - box.lo(k)) / h));
    total *= count[static_cast<std::size_t>(k)];
  }
  bool jitter = opts.stratified;
  if (jitter) rec.method = "stratified";
  if (total > opts.voxel_cap) {
    if (!opts.monte_carlo_fallback)
      throw Error(ErrorCode::budget_exceeded, "voxel grid needs " + std::to_string(total) + " cells, cap is " + std::to_string(opts.voxel_cap));
    // Stratified Monte Carlo: one jittered point per cell of a coarser grid.
    jitter = true;
    rec.method = "monte-carlo";
    cell = h * std::pow(static_cast<double>(total) / static_cast<double>(opts.mc_points), 1.0 / d);
    total = 1;
    for (int k = 0; k < d; ++k) {
      count[static_cast<std::size_t>(k)] = static_cast<long long>(std::ceil((box.hi(k) - box.lo(k)) / cell));
      total *= count[static_cast<std::size_t>(k)];
    }
  }
  const double c_h = 0.5 * cell * std::sqrt(static_cast<double>(d)) * dual_max;
  const std::size_t kk = sorted.size();

  // Per block row along the first axis: [0, kk) cumulative bins, [kk, 2kk) band counts, 2kk near-boundary count.
  // delta is Lipschitz with constant dual_max, so a block whose distance range cannot straddle a bin edge
  // is tallied from its centre alone; the counts equal those of the cell-by-cell loop.
  constexpr long long kBlock = 32;
  std::array<long long, 3> blocks{1, 1, 1};
  for (int k = 0; k < d; ++k) blocks[static_cast<std::size_t>(k)] = (count[static_cast<std::size_t>(k)] + kBlock - 1) / kBlock;
  const auto rows = static_cast<std::size_t>(blocks[0]);
  std::vector<std::vector<long long>> tallies(rows, std::vector<long long>(2 * kk + 1, 0));
  auto tally_distance = [&](std::vector<long long>& tally, double dl, long long times) {
    if (dl <= c_h) tally[2 * kk] += times;
    const auto pos = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), dl) - sorted.begin());
    if (pos < kk) tally[pos] += times;
    const auto b0 = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), dl - c_h) - sorted.begin());
    const auto b1 = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), dl + c_h) - sorted.begin());
    for (std::size_t b = b0; b < b1; ++b) tally[kk + b] += times;
  };
  // No grid value in [lo, hi].
  auto clear_of_grid = [&](double lo, double hi) {
    return std::lower_bound(sorted.begin(), sorted.end(), lo) == std::upper_bound(sorted.begin(), sorted.end(), hi);
  };
  auto lower_bound_at = [&](const Vec& x) {
    double lb = kInf;
    for (const auto& sp : spheres) lb = std::min(lb, ((x - sp.c).norm() - sp.r) * dual_min);
    return lb;
  };
  using Index3 = std::array<long long, 3>;
  auto cell_point = [&](const Index3& idx, Vec& x) {
    std::uint64_t bits = 0;
    if (jitter) bits = splitmix(opts.seed ^ splitmix(static_cast<std::uint64_t>((idx[0] * count[1] + idx[1]) * count[2] + idx[2])));
    for (int k = 0; k < d; ++k) {
      double off = 0.5;
      if (jitter) {
        bits = splitmix(bits);
        off = unit_from_bits(bits);
      }
      x(k) = box.lo(k) + (static_cast<double>(idx[static_cast<std::size_t>(k)]) + off) * cell;
    }
  };
  auto visit_cell = [&](std::vector<long long>& tally, const Index3& idx, Vec& x) {
    cell_point(idx, x);
    if (!shape.is_complement() && lower_bound_at(x) > rho_max + c_h) return;
    double dl = 0.0;
    if (opts.foot_window) {
      const ProjectionResult pr = project(shape, norm, x);
      dl = pr.delta;
      if (dl > 0.0 && !in_box(*opts.foot_window, pr.foot)) return;
    } else {
      dl = distance(shape, norm, x);
    }
    if (dl > 0.0) tally_distance(tally, dl, 1);
  };
  // Cells [lo, hi): tallied whole when the distance range allows, else split in halves.
  auto visit_block = [&](auto&& self, std::vector<long long>& tally, const Index3& lo_idx, const Index3& hi_idx, Vec& x) -> void {
    long long cells_in = 1;
    double half_diag2 = 0.0;
    Vec xc(d);
    for (int k = 0; k < d; ++k) {
      const auto kz = static_cast<std::size_t>(k);
      const double a = static_cast<double>(lo_idx[kz]), b = static_cast<double>(hi_idx[kz]);
      xc(k) = box.lo(k) + 0.5 * (a + b) * cell;
      half_diag2 += std::pow(0.5 * (b - a) * cell, 2);
      cells_in *= hi_idx[kz] - lo_idx[kz];
    }
    if (cells_in == 1) {
      visit_cell(tally, lo_idx, x);
      return;
    }
    const double half_diag = std::sqrt(half_diag2);
    if (!shape.is_complement() && lower_bound_at(xc) - half_diag * dual_min > rho_max + c_h) return;
    if (!opts.foot_window) {
      const double dc = distance(shape, norm, xc);
      const double slack = half_diag * dual_max + 1e-12 * (1.0 + dc);
      const double lo = dc - slack, hi = dc + slack;
      if (lo > 0.0 && (lo > c_h || hi <= c_h) && clear_of_grid(lo, hi) && clear_of_grid(lo - c_h, hi - c_h) &&
          clear_of_grid(lo + c_h, hi + c_h)) {
        tally_distance(tally, dc, cells_in);
        return;
      }
    }
    // Split every axis longer than one cell.
    std::array<std::array<long long, 3>, 3> cuts{};
    std::array<int, 3> parts{1, 1, 1};
    for (int k = 0; k < 3; ++k) {
      const auto kz = static_cast<std::size_t>(k);
      cuts[kz] = {lo_idx[kz], hi_idx[kz], hi_idx[kz]};
      if (hi_idx[kz] - lo_idx[kz] > 1) {
        cuts[kz][1] = lo_idx[kz] + (hi_idx[kz] - lo_idx[kz]) / 2;
        parts[kz] = 2;
      }
    }
    for (int p0 = 0; p0 < parts[0]; ++p0)
      for (int p1 = 0; p1 < parts[1]; ++p1)
        for (int p2 = 0; p2 < parts[2]; ++p2) {
          const std::array<int, 3> p{p0, p1, p2};
          Index3 sub_lo, sub_hi;
          for (std::size_t k = 0; k < 3; ++k) {
            const auto pk = static_cast<std::size_t>(p[k]);
            sub_lo[k] = cuts[k][pk];
            sub_hi[k] = parts[k] == 1 ? hi_idx[k] : cuts[k][pk + 1];
          }
          self(self, tally, sub_lo, sub_hi, x);
        }
  };
  detail::parallel_for(rows, [&](std::size_t r0) {
    auto& tally = tallies[r0];
    Vec x(d);
    Index3 lo_idx{0, 0, 0}, hi_idx{1, 1, 1};
    lo_idx[0] = static_cast<long long>(r0) * kBlock;
    hi_idx[0] = std::min(count[0], lo_idx[0] + kBlock);
    for (long long b1 = 0; b1 < blocks[1]; ++b1)
      for (long long b2 = 0; b2 < blocks[2]; ++b2) {
        lo_idx[1] = b1 * kBlock;
        hi_idx[1] = std::min(count[1], lo_idx[1] + kBlock);
        if (d == 3) {
          lo_idx[2] = b2 * kBlock;
          hi_idx[2] = std::min(count[2], lo_idx[2] + kBlock);
        }
        visit_block(visit_block, tally, lo_idx, hi_idx, x);
      }
  });
  std::vector<long long> sum(2 * kk + 1, 0);
  for (const auto& t : tallies)
    for (std::size_t i = 0; i < t.size(); ++i) sum[i] += t[i];
  const double cell_volume = std::pow(cell, d);
  rec.h = cell;
  rec.cells = total;
  rec.voxel_volume.assign(kk, 0.0);
  rec.voxel_error.assign(kk, 0.0);
  long long running = 0;
  for (std::size_t i = 0; i < kk; ++i) {
    running += sum[i];
    rec.voxel_volume[order[i]] = static_cast<double>(running) * cell_volume;
    const double band = static_cast<double>(sum[kk + i] + 2 * sum[2 * kk]);
    rec.voxel_error[order[i]] = jitter ? cell_volume * std::sqrt(band) : 0.5 * cell_volume * band;
  }
  return rec;
}

std::vector<double> steiner_predict(const Norm& norm, const std::vector<BundleSample>& bundle, const std::vector<double>& rho_grid,
                                    bool truncate) {
  std::vector<double> out;
  std::vector<std::vector<double>> h(bundle.size());
  for (std::size_t i = 0; i < bundle.size(); ++i) h[i] = mean_curvatures(bundle[i]).H;
  for (double rho : rho_grid) {
    std::vector<double> terms(bundle.size());
    for (std::size_t i = 0; i < bundle.size(); ++i) {
      const double t = truncate ? std::min(rho, bundle[i].reach) : rho;
      double acc = 0.0, pw = t;
      for (std::size_t j = 0; j < h[i].size(); ++j, pw *= t) acc += pw / static_cast<double>(j + 1) * h[i][j];
      terms[i] = weighted_phi(norm, bundle[i]) * acc;
    }
    out.push_back(detail::pairwise_sum(terms));
  }
  return out;
}

std::vector<double> steiner_coefficients(const Norm& norm, const std::vector<BundleSample>& bundle) {
  if (bundle.empty()) return {};
  const std::size_t n1 = bundle.front().kappa.size() + 1;
  std::vector<std::vector<double>> terms(n1, std::vector<double>(bundle.size()));
  for (std::size_t i = 0; i < bundle.size(); ++i) {
    const auto h = mean_curvatures(bundle[i]).H;
    for (std::size_t j = 0; j < n1; ++j) terms[j][i] = weighted_phi(norm, bundle[i]) * h[j] / static_cast<double>(j + 1);
  }
  std::vector<double> out;
  for (const auto& t : terms) out.push_back(detail::pairwise_sum(t));
  return out;
}

std::vector<double> fit_tube_polynomial(const std::vector<double>& rho, const std::vector<double>& volume, int degree) {
  if (rho.size() != volume.size() || static_cast<int>(rho.size()) < degree || degree < 1)
    throw Error(ErrorCode::invalid_argument, "not enough radii for the polynomial fit");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rho.size()), degree);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rho.size()));
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double pw = rho[i];
    for (int j = 0; j < degree; ++j, pw *= rho[i]) a(static_cast<Eigen::Index>(i), j) = pw;
    b(static_cast<Eigen::Index>(i)) = volume[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return {c.data(), c.data() + c.size()};
}

void attach_prediction(TubeRecord& rec, const Norm& norm, const std::vector<BundleSample>& bundle) {
  rec.steiner_prediction = steiner_predict(norm, bundle, rec.rho_grid, true);
  rec.residuals.clear();
  for (std::size_t i = 0; i < rec.rho_grid.size(); ++i)
    rec.residuals.push_back(std::abs(rec.steiner_prediction[i] - rec.voxel_volume[i]) / std::max(rec.voxel_volume[i], 1e-300));
}

VolumeDerivatives volume_derivatives(const Norm& norm, const std::vector<BundleSample>& bundle, double rho, const Window& window,
                                     double reach_tol) {
  if (!(rho > 0.0)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
  const double tol = reach_tol * std::max(1.0, rho);
  std::vector<double> plus, minus;
  for (const auto& s : bundle) {
    if (!window.contains(s)) continue;
    if (s.reach < rho - tol) continue;
    const auto h = mean_curvatures(s).H;
    double acc = 0.0, pw = 1.0;
    for (double hj : h) {
      acc += pw * hj;
      pw *= rho;
    }
    const double t = weighted_phi(norm, s) * acc;
    minus.push_back(t);
    if (s.reach > rho + tol) plus.push_back(t);
  }
  VolumeDerivatives out;
  out.plus = detail::pairwise_sum(plus);
  out.minus = detail::pairwise_sum(minus);
  out.jump = out.minus - out.plus;
  return out;
}

VolumeDerivatives voxel_derivatives(const Shape& shape, const Norm& norm, double rho, double step, const VoxelOptions& opts, int points) {
  if (!(step > 0.0) || points < 2 || rho - points * step <= 0.0)
    throw Error(ErrorCode::invalid_argument, "difference stencil must stay at positive radii");
  std::vector<double> grid;
  for (int i = -points; i <= points; ++i) grid.push_back(rho + i * step);
  const TubeRecord rec = voxel_tube_volume(shape, norm, grid, opts);
  // Quadratic through each one-sided stencil; derivative at the centre.
  auto slope = [&](int sign) {
    Eigen::MatrixXd a(points + 1, 3);
    Eigen::VectorXd b(points + 1);
    for (int i = 0; i <= points; ++i) {
      const double t = sign * i * step;
      a(i, 0) = 1.0;
      a(i, 1) = t;
      a(i, 2) = t * t;
      b(i) = rec.voxel_volume[static_cast<std::size_t>(points + sign * i)];
    }
    return a.colPivHouseholderQr().solve(b)(1);
  };
  VolumeDerivatives out;
  out.plus = slope(1);
  out.minus = slope(-1);
  out.jump = out.minus - out.plus;
  return out;
}

}  // namespace anisocurv
