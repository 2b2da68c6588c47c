// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/projection.hpp"

#include "anisocurv/curvature.hpp"
#include "charts.hpp"
#include "numerics.hpp"
#include "pieces.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace anisocurv {

namespace {

void check_args(const Shape& shape, const Norm& norm, const Vec& x) {
  if (norm.dim() != shape.dim()) throw Error(ErrorCode::invalid_argument, "norm and shape dimensions differ");
  if (x.size() != shape.dim() || !x.allFinite()) throw Error(ErrorCode::invalid_argument, "query point has the wrong dimension or is not finite");
}

// Candidate feet and the index of the piece holding x in its interior (or -1).
std::vector<detail::Foot> candidate_feet(const Shape& shape, const Norm& norm, const Vec& x, double tol_eq_rel, bool& on_shape) {
  const auto& pieces = shape.pieces();
  on_shape = false;
  int holder = -1;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double l = pieces[i]->level(x);
    if (l <= 0.0) {
      holder = static_cast<int>(i);
      if (!shape.is_complement() || l < 0.0) break;
    }
  }
  std::vector<detail::Foot> feet;
  if (!shape.is_complement()) {
    if (holder >= 0) {
      on_shape = true;
      return feet;
    }
    for (const auto& p : pieces) feet.push_back(p->project_outside(norm, x));
    return feet;
  }
  if (holder < 0 || pieces[static_cast<std::size_t>(holder)]->level(x) >= 0.0) {
    on_shape = true;
    return feet;
  }
  // Inside a component: the tie tolerance is refined by the caller.
  return pieces[static_cast<std::size_t>(holder)]->project_inside(norm, x, tol_eq_rel);
}

}  // namespace

const char* to_string(BoundaryClass c) noexcept {
  switch (c) {
    case BoundaryClass::viscosity: return "viscosity";
    case BoundaryClass::non_viscosity: return "non-viscosity";
    case BoundaryClass::alexandrov: return "alexandrov";
  }
  return "unknown";
}

const char* to_string(Multiplicity m) noexcept {
  switch (m) {
    case Multiplicity::unique: return "unique";
    case Multiplicity::multiple: return "multiple";
    case Multiplicity::unresolved: return "unresolved";
  }
  return "unknown";
}

ProjectionResult project(const Shape& shape, const Norm& norm, const Vec& x, const ProjectionOptions& opts) {
  check_args(shape, norm, x);
  ProjectionResult res;
  bool on_shape = false;
  // The inside solvers need an absolute tie tolerance; the distance scale is the diameter.
  const double diam = shape.diameter();
  auto feet = candidate_feet(shape, norm, x, opts.tol_eq_rel * (1.0 + diam), on_shape);
  if (on_shape) {
    res.delta = 0.0;
    res.foot = x;
    res.nu = Vec::Zero(x.size());
    res.feet = {x};
    return res;
  }
  double best = kInf;
  for (const auto& f : feet) best = std::min(best, f.delta);
  const double tol_eq = opts.tol_eq_rel * (1.0 + best);
  const double tol_multi = opts.tol_multi_rel * diam;
  std::vector<detail::Foot> ties;
  for (const auto& f : feet)
    if (f.delta <= best + tol_eq) ties.push_back(f);
  std::sort(ties.begin(), ties.end(), [](const auto& a, const auto& b) { return a.delta < b.delta; });
  for (const auto& f : ties) {
    bool distinct = true;
    for (const Vec& g : res.feet) distinct = distinct && (f.point - g).norm() > tol_multi;
    if (distinct) res.feet.push_back(f.point);
  }
  res.delta = best;
  res.foot = ties.front().point;
  res.multiplicity = res.feet.size() > 1 ? Multiplicity::multiple : Multiplicity::unique;
  if (best > 0.0) {
    res.nu = (x - res.foot) / best;
    res.residual = std::abs(norm.conjugate_eval(x - res.foot) - best) / (1.0 + best);
  } else {
    res.nu = Vec::Zero(x.size());
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::non_convergence, "projection failed to produce a finite distance");
  return res;
}

double distance(const Shape& shape, const Norm& norm, const Vec& x) {
  check_args(shape, norm, x);
  bool on_shape = false;
  const auto feet = candidate_feet(shape, norm, x, 0.0, on_shape);
  if (on_shape) return 0.0;
  double best = kInf;
  for (const auto& f : feet) best = std::min(best, f.delta);
  return best;
}

ReachBracket reach_along(const Shape& shape, const Norm& norm, const Vec& a, const Vec& eta, const ReachOptions& opts) {
  check_args(shape, norm, a);
  const double diam = shape.diameter();
  const double s_max = opts.s_max_factor * diam;
  const double s_min = opts.s_min_factor * diam;
  auto holds = [&](double s) { return distance(shape, norm, a + s * eta) >= s * (1.0 - opts.tol_pred); };
  if (!holds(s_min)) throw Error(ErrorCode::invalid_normal, "eta is not a phi-normal at a: distance drops below s at s_min");
  ReachBracket out;
  if (holds(s_max)) return out;
  double lo = s_min, hi = s_max;
  while (hi - lo > opts.bracket_rel * s_max) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.value = 0.5 * (lo + hi);
  return out;
}

namespace {

// Compass search in chart parameters around the smallest sampled reaches; the
// discrete minimum alone overestimates the infimum by the node spacing squared.
void refine_minimum(const Shape& shape, const Norm& norm, const std::vector<detail::ShapeChart>& charts,
                    const std::vector<detail::ChartNode>& nodes, const ReachOptions& opts, std::vector<ReachSample>& samples) {
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t seeds = std::min<std::size_t>(4, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seeds), order.end(),
                    [&](std::size_t a, std::size_t b) { return samples[a].reach < samples[b].reach; });
  std::vector<ReachSample> extra;
  for (std::size_t k = 0; k < seeds; ++k) {
    const detail::ChartNode& start = nodes[order[k]];
    if (!std::isfinite(samples[order[k]].reach)) break;
    const detail::ShapeChart& chart = charts[static_cast<std::size_t>(start.chart)];
    auto evaluate = [&](const std::array<double, 2>& s, ReachSample& out) {
      Vec a, u;
      chart.eval(s, a, u);
      const Vec eta = norm.grad(u);
      try {
        out = ReachSample{a, eta, reach_along(shape, norm, a, eta, opts).value};
      } catch (const Error&) {
        return false;
      }
      return true;
    };
    ReachSample best = samples[order[k]];
    std::array<double, 2> s = start.s;
    double step = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(nodes.size(), 1)));
    while (step > 1e-9) {
      bool moved = false;
      for (int dim = 0; dim < chart.chart.dims && !moved; ++dim)
        for (double sign : {-1.0, 1.0}) {
          auto trial = s;
          double& t = trial[static_cast<std::size_t>(dim)];
          t += sign * step;
          if (chart.chart.periodic[static_cast<std::size_t>(dim)])
            t -= std::floor(t);
          else if (t < 0.0 || t > 1.0)
            continue;
          ReachSample cand;
          if (evaluate(trial, cand) && cand.reach < best.reach) {
            best = cand;
            s = trial;
            moved = true;
            break;
          }
        }
      if (!moved) step *= 0.5;
    }
    if (best.reach < samples[order[k]].reach) extra.push_back(best);
  }
  samples.insert(samples.end(), extra.begin(), extra.end());
}

}  // namespace

ReachEstimate global_reach(const Shape& shape, const Norm& norm, int n_samples, std::uint64_t seed, const ReachOptions& opts,
                           int scan_points) {
  ReachEstimate est;
  if (shape.is_convex()) {
    est.convex = true;
    return est;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto charts = detail::shape_charts(shape);
  const auto nodes = detail::chart_nodes(charts, std::max(16, n_samples), unif(rng));
  est.per_sample.resize(nodes.size());
  detail::parallel_for(nodes.size(), [&](std::size_t i) {
    const Vec eta = norm.grad(nodes[i].u);
    const ReachBracket r = reach_along(shape, norm, nodes[i].a, eta, opts);
    est.per_sample[i] = ReachSample{nodes[i].a, eta, r.value};
  });
  refine_minimum(shape, norm, charts, nodes, opts, est.per_sample);
  for (const auto& s : est.per_sample) est.global = std::min(est.global, s.reach);
  // Bracket from the bisection width at the minimizing sample.
  const double width = opts.bracket_rel * opts.s_max_factor * shape.diameter();
  est.lo = std::isfinite(est.global) ? std::max(0.0, est.global - width) : kInf;
  est.hi = std::isfinite(est.global) ? est.global + width : kInf;

  // Monte-Carlo scan of the open tube below the estimate for points with several nearest points.
  const Box box = shape.bounding_box();
  const double pad = std::isfinite(est.global) ? est.global : shape.diameter();
  Vec lo = box.lo, hi = box.hi;
  for (Eigen::Index k = 0; k < lo.size(); ++k) {
    Vec e = Vec::Zero(lo.size());
    e(k) = 1.0;
    const double reach_k = shape.is_complement() ? 0.0 : pad * norm.eval(e);
    lo(k) -= reach_k;
    hi(k) += reach_k;
  }
  const double margin = 1e-3;
  const double limit = std::isfinite(est.global) ? est.global * (1.0 - margin) : shape.diameter();
  std::vector<Vec> pts;
  for (int draws = 0; draws < 50 * scan_points && static_cast<int>(pts.size()) < scan_points; ++draws) {
    Vec x(lo.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = lo(k) + (hi(k) - lo(k)) * unif(rng);
    const double dlt = distance(shape, norm, x);
    if (dlt > 0.0 && dlt < limit) pts.push_back(x);
  }
  est.scan_points = static_cast<int>(pts.size());
  std::vector<ProjectionResult> results(pts.size());
  detail::parallel_for(pts.size(), [&](std::size_t i) { results[i] = project(shape, norm, pts[i]); });
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (results[i].multiplicity == Multiplicity::multiple) {
      est.witnesses.push_back(pts[i]);
      est.global = std::min(est.global, results[i].delta);
      est.lo = std::min(est.lo, results[i].delta);
    }
  return est;
}

BoundaryClassification classify_boundary_point(const Shape& shape, const Norm& norm, const Vec& a) {
  check_args(shape, norm, a);
  const double tol = 1e-7 * (1.0 + shape.diameter());
  for (const auto& p : shape.pieces()) {
    if (std::abs(p->level(a)) > tol) continue;
    FiberDescriptor fiber = p->fiber_at(a);
    if (shape.is_complement()) {
      if (fiber.kind == FiberKind::single)
        fiber.normals[0] = -fiber.normals[0];
      else
        fiber = FiberDescriptor{FiberKind::empty, {}};
    }
    BoundaryClassification out;
    out.fiber = fiber;
    if (fiber.kind != FiberKind::single) return out;
    out.eta = norm.grad(fiber.normals[0]);
    out.cls = BoundaryClass::viscosity;
    const auto kappa = kappa_at(shape, norm, a, out.eta);
    if (std::all_of(kappa.begin(), kappa.end(), [](double k) { return std::isfinite(k); })) out.cls = BoundaryClass::alexandrov;
    return out;
  }
  throw Error(ErrorCode::not_on_boundary, "point is not on the shape boundary");
}

}  // namespace anisocurv
