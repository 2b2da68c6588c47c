/* Copyright anisocurv contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libanisocurv.  Objects are opaque handles released with the
 * matching *_free function.  Every call returns an ac_status; on failure
 * ac_last_error() holds a message for the calling thread.  Points are passed
 * as arrays of ac_*_dim() doubles.
 */
#ifndef ANISOCURV_ANISOCURV_H
#define ANISOCURV_ANISOCURV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ANISOCURV_BUILDING)
#define AC_API __declspec(dllexport)
#else
#define AC_API __declspec(dllimport)
#endif
#else
#define AC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ac_status {
  AC_OK = 0,
  AC_INVALID_ARGUMENT = 1,
  AC_ZERO_VECTOR,
  AC_NON_CONVERGENCE,
  AC_INVALID_NORMAL,
  AC_NOT_ON_BOUNDARY,
  AC_NOT_ALEXANDROV,
  AC_EMPTY_INTERIOR,
  AC_PROJECTION_NOISE,
  AC_INVARIANCE_VIOLATION,
  AC_STRATA_COVERAGE_GAP,
  AC_BUDGET_EXCEEDED,
  AC_PRECONDITION_FAILED,
  AC_CONFIG_ERROR,
  AC_IO_ERROR,
  AC_INTERNAL_ERROR = 99
} ac_status;

typedef struct ac_norm ac_norm;
typedef struct ac_shape ac_shape;
typedef struct ac_bundle ac_bundle;
typedef struct ac_experiment ac_experiment;

AC_API const char* ac_version(void);
AC_API const char* ac_status_name(ac_status status);
AC_API const char* ac_last_error(void);
AC_API void ac_set_threads(int threads);

/* Norms. */
AC_API ac_status ac_norm_euclidean(int dim, ac_norm** out);
/* q is dim x dim, row-major, symmetric positive definite. */
AC_API ac_status ac_norm_ellipsoidal(int dim, const double* q, ac_norm** out);
AC_API ac_status ac_norm_smoothed_lp(int dim, double p, double smoothing, ac_norm** out);
AC_API void ac_norm_free(ac_norm* norm);
AC_API int ac_norm_dim(const ac_norm* norm);
AC_API ac_status ac_norm_eval(const ac_norm* norm, const double* x, double* value);
AC_API ac_status ac_norm_conjugate_eval(const ac_norm* norm, const double* y, double* value);
AC_API ac_status ac_norm_grad(const ac_norm* norm, const double* x, double* grad);
AC_API ac_status ac_norm_grad_conjugate(const ac_norm* norm, const double* y, double* grad);
/* Row-major dim x dim. */
AC_API ac_status ac_norm_hessian(const ac_norm* norm, const double* x, double* hessian);
AC_API ac_status ac_norm_gauss_map(const ac_norm* norm, const double* eta, double* u);
AC_API ac_status ac_norm_gauss_inverse(const ac_norm* norm, const double* u, double* eta);

/* Shapes. */
AC_API ac_status ac_shape_ball(int dim, const double* center, double radius, ac_shape** out);
AC_API ac_status ac_shape_ellipsoid(int dim, const double* center, const double* semiaxes, ac_shape** out);
AC_API ac_status ac_shape_wulff(const ac_norm* norm, const double* center, double radius, ac_shape** out);
/* count vertices of dimension dim, packed. */
AC_API ac_status ac_shape_polytope(int dim, size_t count, const double* vertices, ac_shape** out);
/* count planar segments, packed as (x0, y0, x1, y1). */
AC_API ac_status ac_shape_segments(size_t count, const double* endpoints, ac_shape** out);
AC_API ac_status ac_shape_cap_lens(double eps, ac_shape** out);
AC_API ac_status ac_shape_union(size_t count, const ac_shape* const* parts, ac_shape** out);
AC_API ac_status ac_shape_complement(const ac_shape* shape, ac_shape** out);
AC_API void ac_shape_free(ac_shape* shape);
AC_API int ac_shape_dim(const ac_shape* shape);
AC_API int ac_shape_is_convex(const ac_shape* shape);
/* AC_PRECONDITION_FAILED when the volume is not defined (complements). */
AC_API ac_status ac_shape_volume(const ac_shape* shape, double* volume);
AC_API ac_status ac_phi_perimeter(const ac_shape* shape, const ac_norm* norm, int samples, double* perimeter);

/* Projection.  multiplicity: 0 unique, 1 several nearest points, 2 unresolved. */
AC_API ac_status ac_project(const ac_shape* shape, const ac_norm* norm, const double* x, double* delta, double* foot, double* nu,
                            int* multiplicity);
AC_API ac_status ac_distance(const ac_shape* shape, const ac_norm* norm, const double* x, double* delta);
/* Global reach; +inf for convex shapes. */
AC_API ac_status ac_global_reach(const ac_shape* shape, const ac_norm* norm, int samples, uint64_t seed, double* reach);

/* Normal bundle samples. */
typedef struct ac_sample {
  double a[3];
  double eta[3];
  double u[3];
  double kappa[2]; /* +inf entries for dropped directions */
  double weight;
  double jacobian;
  double reach;
  int stratum;
  int ambiguous;
  int invariance_violation;
} ac_sample;

AC_API ac_status ac_bundle_sample(const ac_shape* shape, const ac_norm* norm, int samples, uint64_t seed, ac_bundle** out);
AC_API void ac_bundle_free(ac_bundle* bundle);
AC_API size_t ac_bundle_size(const ac_bundle* bundle);
AC_API ac_status ac_bundle_get(const ac_bundle* bundle, size_t index, ac_sample* sample);

/* Curvature measure of index m; se may be NULL. */
AC_API ac_status ac_curvature_measure(const ac_shape* shape, const ac_norm* norm, const ac_bundle* bundle, int m, double* theta,
                                      double* se);
AC_API ac_status ac_steiner_predict(const ac_norm* norm, const ac_bundle* bundle, size_t count, const double* rho, int truncate,
                                    double* volume);
/* h <= 0 picks the default voxel size; error may be NULL. */
AC_API ac_status ac_voxel_tube_volume(const ac_shape* shape, const ac_norm* norm, size_t count, const double* rho, double h,
                                      double* volume, double* error);
AC_API ac_status ac_volume_derivatives(const ac_norm* norm, const ac_bundle* bundle, double rho, double* plus, double* minus,
                                       double* jump);

/* Theorem checks. */
typedef struct ac_verdict {
  double lhs;
  double rhs;
  double residual;
  double tolerance;
  int pass;
  int infinite;
  int equality;
  ac_status error; /* AC_OK unless the check hit a precondition */
} ac_verdict;

AC_API ac_status ac_minkowski_check(const ac_shape* shape, const ac_norm* norm, int r, const ac_bundle* bundle, double tol,
                                    ac_verdict* out);
/* complement_bundle must be sampled on ac_shape_complement(shape). */
AC_API ac_status ac_heintze_karcher_check(const ac_shape* shape, const ac_norm* norm, const ac_bundle* complement_bundle, double tol,
                                          ac_verdict* out);

typedef struct ac_bubble {
  int is_bubble_union;
  int count;
  double radius;
  double lambda;
  double rho_volume;
  double rho_algebraic;
  double curvature_spread;
  double singular_fraction;
  char failure_reason[96];
} ac_bubble;

AC_API ac_status ac_alexandrov_classify(const ac_shape* shape, const ac_norm* norm, int r, const ac_bundle* bundle, ac_bubble* out);

/* Experiments described by a configuration file. */
AC_API ac_status ac_experiment_load(const char* path, ac_experiment** out);
AC_API ac_status ac_experiment_parse(const char* text, ac_experiment** out);
AC_API void ac_experiment_free(ac_experiment* experiment);
AC_API void ac_experiment_set_seed(ac_experiment* experiment, uint64_t seed);
AC_API void ac_experiment_set_threads(ac_experiment* experiment, int threads);
AC_API ac_status ac_experiment_set_output_dir(ac_experiment* experiment, const char* dir);
/* command: norm-check, shape-info, reach, tube, measures, verify or run-all.
 * ok is set to 1 when every check met its expectation. */
AC_API ac_status ac_experiment_run(ac_experiment* experiment, const char* command, int* ok);

#ifdef __cplusplus
}
#endif

#endif
