// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/anisocurv.h"

#include "anisocurv/experiment.hpp"

#include <cstring>
#include <exception>
#include <new>
#include <string>

using namespace anisocurv;

struct ac_norm {
  Norm norm;
};
struct ac_shape {
  Shape shape;
};
struct ac_bundle {
  std::vector<BundleSample> samples;
};
struct ac_experiment {
  ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

ac_status fail(ac_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <class F>
ac_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return AC_OK;
  } catch (const Error& e) {
    return fail(static_cast<ac_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AC_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(AC_INTERNAL_ERROR, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::invalid_argument, what);
}

Vec load(const double* p, int dim) {
  require(p != nullptr, "null point");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = p[i];
  return v;
}

void store(const Vec& v, double* out) {
  if (!out) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v(i);
}

template <class T>
void emit(T** out, T* value) {
  require(out != nullptr, "null output handle");
  *out = value;
}

void fill(const TheoremVerdict& v, ac_verdict* out) {
  out->lhs = v.lhs;
  out->rhs = v.rhs;
  out->residual = v.residual;
  out->tolerance = v.tolerance;
  out->pass = v.pass;
  out->infinite = v.infinite;
  out->equality = v.equality;
  out->error = v.error ? static_cast<ac_status>(static_cast<int>(*v.error)) : AC_OK;
}

}  // namespace

extern "C" {

const char* ac_version(void) { return "0.1.0"; }

const char* ac_status_name(ac_status status) {
  if (status == AC_OK) return "Ok";
  if (status == AC_INTERNAL_ERROR) return "InternalError";
  return to_string(static_cast<ErrorCode>(static_cast<int>(status)));
}

const char* ac_last_error(void) { return g_last_error.c_str(); }

void ac_set_threads(int threads) { set_threads(threads); }

ac_status ac_norm_euclidean(int dim, ac_norm** out) {
  return guarded([&] { emit(out, new ac_norm{Norm::euclidean(dim)}); });
}

ac_status ac_norm_ellipsoidal(int dim, const double* q, ac_norm** out) {
  return guarded([&] {
    require(q != nullptr && (dim == 2 || dim == 3), "ellipsoidal norm needs a 2x2 or 3x3 matrix");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = q[i * dim + j];
    emit(out, new ac_norm{Norm::ellipsoidal(m)});
  });
}

ac_status ac_norm_smoothed_lp(int dim, double p, double smoothing, ac_norm** out) {
  return guarded([&] { emit(out, new ac_norm{Norm::smoothed_lp(dim, p, smoothing)}); });
}

void ac_norm_free(ac_norm* norm) { delete norm; }

int ac_norm_dim(const ac_norm* norm) { return norm ? norm->norm.dim() : 0; }

ac_status ac_norm_eval(const ac_norm* norm, const double* x, double* value) {
  return guarded([&] {
    require(norm && value, "null argument");
    *value = norm->norm.eval(load(x, norm->norm.dim()));
  });
}

ac_status ac_norm_conjugate_eval(const ac_norm* norm, const double* y, double* value) {
  return guarded([&] {
    require(norm && value, "null argument");
    *value = norm->norm.conjugate_eval(load(y, norm->norm.dim()));
  });
}

ac_status ac_norm_grad(const ac_norm* norm, const double* x, double* grad) {
  return guarded([&] {
    require(norm && grad, "null argument");
    store(norm->norm.grad(load(x, norm->norm.dim())), grad);
  });
}

ac_status ac_norm_grad_conjugate(const ac_norm* norm, const double* y, double* grad) {
  return guarded([&] {
    require(norm && grad, "null argument");
    store(norm->norm.grad_conjugate(load(y, norm->norm.dim())), grad);
  });
}

ac_status ac_norm_hessian(const ac_norm* norm, const double* x, double* hessian) {
  return guarded([&] {
    require(norm && hessian, "null argument");
    const int d = norm->norm.dim();
    const Mat h = norm->norm.hessian(load(x, d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) hessian[i * d + j] = h(i, j);
  });
}

ac_status ac_norm_gauss_map(const ac_norm* norm, const double* eta, double* u) {
  return guarded([&] {
    require(norm && u, "null argument");
    store(norm->norm.gauss_map(load(eta, norm->norm.dim())), u);
  });
}

ac_status ac_norm_gauss_inverse(const ac_norm* norm, const double* u, double* eta) {
  return guarded([&] {
    require(norm && eta, "null argument");
    store(norm->norm.gauss_inverse(load(u, norm->norm.dim())), eta);
  });
}

ac_status ac_shape_ball(int dim, const double* center, double radius, ac_shape** out) {
  return guarded([&] { emit(out, new ac_shape{Shape::ball(load(center, dim), radius)}); });
}

ac_status ac_shape_ellipsoid(int dim, const double* center, const double* semiaxes, ac_shape** out) {
  return guarded([&] { emit(out, new ac_shape{Shape::ellipsoid(load(center, dim), load(semiaxes, dim))}); });
}

ac_status ac_shape_wulff(const ac_norm* norm, const double* center, double radius, ac_shape** out) {
  return guarded([&] {
    require(norm != nullptr, "null norm");
    emit(out, new ac_shape{Shape::wulff_body(norm->norm, load(center, norm->norm.dim()), radius)});
  });
}

ac_status ac_shape_polytope(int dim, size_t count, const double* vertices, ac_shape** out) {
  return guarded([&] {
    require(vertices != nullptr, "null vertices");
    std::vector<Vec> vs;
    for (size_t i = 0; i < count; ++i) vs.push_back(load(vertices + i * static_cast<size_t>(dim), dim));
    emit(out, new ac_shape{Shape::polytope(vs)});
  });
}

ac_status ac_shape_segments(size_t count, const double* endpoints, ac_shape** out) {
  return guarded([&] {
    require(endpoints != nullptr, "null endpoints");
    std::vector<std::pair<Vec, Vec>> segs;
    for (size_t i = 0; i < count; ++i) segs.emplace_back(load(endpoints + 4 * i, 2), load(endpoints + 4 * i + 2, 2));
    emit(out, new ac_shape{Shape::segment_union(segs)});
  });
}

ac_status ac_shape_cap_lens(double eps, ac_shape** out) {
  return guarded([&] { emit(out, new ac_shape{Shape::cap_lens(eps)}); });
}

ac_status ac_shape_union(size_t count, const ac_shape* const* parts, ac_shape** out) {
  return guarded([&] {
    require(parts != nullptr, "null parts");
    std::vector<Shape> ps;
    for (size_t i = 0; i < count; ++i) {
      require(parts[i] != nullptr, "null part");
      ps.push_back(parts[i]->shape);
    }
    emit(out, new ac_shape{Shape::disjoint_union(ps)});
  });
}

ac_status ac_shape_complement(const ac_shape* shape, ac_shape** out) {
  return guarded([&] {
    require(shape != nullptr, "null shape");
    emit(out, new ac_shape{shape->shape.complement()});
  });
}

void ac_shape_free(ac_shape* shape) { delete shape; }

int ac_shape_dim(const ac_shape* shape) { return shape ? shape->shape.dim() : 0; }

int ac_shape_is_convex(const ac_shape* shape) { return shape && shape->shape.is_convex() ? 1 : 0; }

ac_status ac_shape_volume(const ac_shape* shape, double* volume) {
  return guarded([&] {
    require(shape && volume, "null argument");
    const auto v = shape->shape.volume();
    if (!v) throw Error(ErrorCode::precondition_failed, "volume is not defined for this shape");
    *volume = *v;
  });
}

ac_status ac_phi_perimeter(const ac_shape* shape, const ac_norm* norm, int samples, double* perimeter) {
  return guarded([&] {
    require(shape && norm && perimeter, "null argument");
    *perimeter = phi_perimeter(shape->shape, norm->norm, samples);
  });
}

ac_status ac_project(const ac_shape* shape, const ac_norm* norm, const double* x, double* delta, double* foot, double* nu,
                     int* multiplicity) {
  return guarded([&] {
    require(shape && norm, "null argument");
    const ProjectionResult p = project(shape->shape, norm->norm, load(x, shape->shape.dim()));
    if (delta) *delta = p.delta;
    store(p.foot, foot);
    store(p.nu, nu);
    if (multiplicity) *multiplicity = static_cast<int>(p.multiplicity);
  });
}

ac_status ac_distance(const ac_shape* shape, const ac_norm* norm, const double* x, double* delta) {
  return guarded([&] {
    require(shape && norm && delta, "null argument");
    *delta = distance(shape->shape, norm->norm, load(x, shape->shape.dim()));
  });
}

ac_status ac_global_reach(const ac_shape* shape, const ac_norm* norm, int samples, uint64_t seed, double* reach) {
  return guarded([&] {
    require(shape && norm && reach, "null argument");
    *reach = global_reach(shape->shape, norm->norm, samples, seed).global;
  });
}

ac_status ac_bundle_sample(const ac_shape* shape, const ac_norm* norm, int samples, uint64_t seed, ac_bundle** out) {
  return guarded([&] {
    require(shape && norm, "null argument");
    emit(out, new ac_bundle{bundle_sample(shape->shape, norm->norm, samples, seed)});
  });
}

void ac_bundle_free(ac_bundle* bundle) { delete bundle; }

size_t ac_bundle_size(const ac_bundle* bundle) { return bundle ? bundle->samples.size() : 0; }

ac_status ac_bundle_get(const ac_bundle* bundle, size_t index, ac_sample* sample) {
  return guarded([&] {
    require(bundle && sample, "null argument");
    require(index < bundle->samples.size(), "sample index out of range");
    const BundleSample& s = bundle->samples[index];
    *sample = ac_sample{};
    store(s.a, sample->a);
    store(s.eta, sample->eta);
    store(s.u, sample->u);
    for (size_t i = 0; i < s.kappa.size() && i < 2; ++i) sample->kappa[i] = s.kappa[i];
    sample->weight = s.weight;
    sample->jacobian = s.jacobian;
    sample->reach = s.reach;
    sample->stratum = s.stratum_d;
    sample->ambiguous = s.ambiguous;
    sample->invariance_violation = s.invariance_violation;
  });
}

ac_status ac_curvature_measure(const ac_shape* shape, const ac_norm* norm, const ac_bundle* bundle, int m, double* theta, double* se) {
  return guarded([&] {
    require(shape && norm && bundle && theta, "null argument");
    const CurvatureReport r = curvature_measure(shape->shape, norm->norm, m, {}, bundle->samples);
    *theta = r.theta_total;
    if (se) *se = r.quadrature_se;
  });
}

ac_status ac_steiner_predict(const ac_norm* norm, const ac_bundle* bundle, size_t count, const double* rho, int truncate, double* volume) {
  return guarded([&] {
    require(norm && bundle && rho && volume, "null argument");
    const auto v = steiner_predict(norm->norm, bundle->samples, std::vector<double>(rho, rho + count), truncate != 0);
    std::copy(v.begin(), v.end(), volume);
  });
}

ac_status ac_voxel_tube_volume(const ac_shape* shape, const ac_norm* norm, size_t count, const double* rho, double h, double* volume,
                               double* error) {
  return guarded([&] {
    require(shape && norm && rho && volume, "null argument");
    VoxelOptions o;
    o.h = h > 0.0 ? h : 0.0;
    const TubeRecord rec = voxel_tube_volume(shape->shape, norm->norm, std::vector<double>(rho, rho + count), o);
    std::copy(rec.voxel_volume.begin(), rec.voxel_volume.end(), volume);
    if (error) std::copy(rec.voxel_error.begin(), rec.voxel_error.end(), error);
  });
}

ac_status ac_volume_derivatives(const ac_norm* norm, const ac_bundle* bundle, double rho, double* plus, double* minus, double* jump) {
  return guarded([&] {
    require(norm && bundle, "null argument");
    const VolumeDerivatives d = volume_derivatives(norm->norm, bundle->samples, rho);
    if (plus) *plus = d.plus;
    if (minus) *minus = d.minus;
    if (jump) *jump = d.jump;
  });
}

ac_status ac_minkowski_check(const ac_shape* shape, const ac_norm* norm, int r, const ac_bundle* bundle, double tol, ac_verdict* out) {
  return guarded([&] {
    require(shape && norm && bundle && out, "null argument");
    fill(minkowski_check(shape->shape, norm->norm, r, bundle->samples, tol > 0.0 ? tol : 5e-3), out);
  });
}

ac_status ac_heintze_karcher_check(const ac_shape* shape, const ac_norm* norm, const ac_bundle* complement_bundle, double tol,
                                   ac_verdict* out) {
  return guarded([&] {
    require(shape && norm && complement_bundle && out, "null argument");
    HeintzeKarcherOptions o;
    if (tol > 0.0) o.tol = tol;
    fill(heintze_karcher_check(shape->shape, norm->norm, complement_bundle->samples, o), out);
  });
}

ac_status ac_alexandrov_classify(const ac_shape* shape, const ac_norm* norm, int r, const ac_bundle* bundle, ac_bubble* out) {
  return guarded([&] {
    require(shape && norm && bundle && out, "null argument");
    const BubbleVerdict v = alexandrov_classify(shape->shape, norm->norm, r, bundle->samples);
    *out = ac_bubble{};
    out->is_bubble_union = v.is_bubble_union;
    out->count = v.count;
    out->radius = v.radius;
    out->lambda = v.lambda;
    out->rho_volume = v.rho_volume;
    out->rho_algebraic = v.rho_algebraic;
    out->curvature_spread = v.curvature_spread;
    out->singular_fraction = v.singular_fraction;
    std::strncpy(out->failure_reason, v.failure_reason.c_str(), sizeof out->failure_reason - 1);
  });
}

ac_status ac_experiment_load(const char* path, ac_experiment** out) {
  return guarded([&] {
    require(path != nullptr, "null path");
    emit(out, new ac_experiment{load_config(path)});
  });
}

ac_status ac_experiment_parse(const char* text, ac_experiment** out) {
  return guarded([&] {
    require(text != nullptr, "null text");
    emit(out, new ac_experiment{parse_config(text)});
  });
}

void ac_experiment_free(ac_experiment* experiment) { delete experiment; }

void ac_experiment_set_seed(ac_experiment* experiment, uint64_t seed) {
  if (experiment) experiment->config.seed = seed;
}

void ac_experiment_set_threads(ac_experiment* experiment, int threads) {
  if (experiment) experiment->config.threads = threads;
}

ac_status ac_experiment_set_output_dir(ac_experiment* experiment, const char* dir) {
  return guarded([&] {
    require(experiment && dir && *dir, "null or empty output directory");
    experiment->config.output_dir = dir;
  });
}

ac_status ac_experiment_run(ac_experiment* experiment, const char* command, int* ok) {
  return guarded([&] {
    require(experiment && command, "null argument");
    const RunSummary s = run_command(experiment->config, command);
    if (ok) *ok = s.ok ? 1 : 0;
  });
}

}  // extern "C"
