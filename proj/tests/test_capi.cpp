// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/anisocurv.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace {

constexpr double kPi = std::numbers::pi;

struct NormFree {
  void operator()(ac_norm* n) const { ac_norm_free(n); }
};
struct ShapeFree {
  void operator()(ac_shape* s) const { ac_shape_free(s); }
};
struct BundleFree {
  void operator()(ac_bundle* b) const { ac_bundle_free(b); }
};
struct ExperimentFree {
  void operator()(ac_experiment* e) const { ac_experiment_free(e); }
};
using NormPtr = std::unique_ptr<ac_norm, NormFree>;
using ShapePtr = std::unique_ptr<ac_shape, ShapeFree>;
using BundlePtr = std::unique_ptr<ac_bundle, BundleFree>;
using ExperimentPtr = std::unique_ptr<ac_experiment, ExperimentFree>;

NormPtr euclid() {
  ac_norm* n = nullptr;
  EXPECT_EQ(ac_norm_euclidean(2, &n), AC_OK);
  return NormPtr(n);
}

NormPtr diag41() {
  const double q[] = {4, 0, 0, 1};
  ac_norm* n = nullptr;
  EXPECT_EQ(ac_norm_ellipsoidal(2, q, &n), AC_OK);
  return NormPtr(n);
}

ShapePtr disk(double cx = 0, double r = 1) {
  const double c[] = {cx, 0};
  ac_shape* s = nullptr;
  EXPECT_EQ(ac_shape_ball(2, c, r, &s), AC_OK);
  return ShapePtr(s);
}

BundlePtr bundle(const ac_shape* s, const ac_norm* n, int samples = 400) {
  ac_bundle* b = nullptr;
  EXPECT_EQ(ac_bundle_sample(s, n, samples, 5, &b), AC_OK) << ac_last_error();
  return BundlePtr(b);
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_GT(std::strlen(ac_version()), 0u);
  EXPECT_STRNE(ac_status_name(AC_OK), ac_status_name(AC_CONFIG_ERROR));
}

TEST(CApi, NormEvaluation) {
  const NormPtr q = diag41();
  ASSERT_TRUE(q);
  EXPECT_EQ(ac_norm_dim(q.get()), 2);
  const double x[] = {1, 1};
  double v = 0, w = 0;
  ASSERT_EQ(ac_norm_eval(q.get(), x, &v), AC_OK);
  EXPECT_NEAR(v, std::sqrt(5.0), 1e-14);
  ASSERT_EQ(ac_norm_conjugate_eval(q.get(), x, &w), AC_OK);
  EXPECT_NEAR(w, std::sqrt(1.25), 1e-14);
  // grad phi*(grad phi(x)) = x / phi(x).
  double g[2], back[2];
  ASSERT_EQ(ac_norm_grad(q.get(), x, g), AC_OK);
  ASSERT_EQ(ac_norm_grad_conjugate(q.get(), g, back), AC_OK);
  EXPECT_NEAR(back[0], x[0] / v, 1e-12);
  EXPECT_NEAR(back[1], x[1] / v, 1e-12);
  double h[4];
  ASSERT_EQ(ac_norm_hessian(q.get(), x, h), AC_OK);
  EXPECT_NEAR(h[0] * x[0] + h[1] * x[1], 0.0, 1e-12);
  EXPECT_NEAR(h[1], h[2], 1e-14);

  const double zero[] = {0, 0};
  EXPECT_EQ(ac_norm_grad(q.get(), zero, g), AC_ZERO_VECTOR);
  EXPECT_GT(std::strlen(ac_last_error()), 0u);
}

TEST(CApi, NormConstructionErrors) {
  ac_norm* n = nullptr;
  EXPECT_EQ(ac_norm_euclidean(0, &n), AC_INVALID_ARGUMENT);
  EXPECT_EQ(n, nullptr);
  const double bad[] = {1, 0, 0, -1};
  EXPECT_EQ(ac_norm_ellipsoidal(2, bad, &n), AC_INVALID_ARGUMENT);
  EXPECT_EQ(ac_norm_euclidean(2, nullptr), AC_INVALID_ARGUMENT);
}

TEST(CApi, ShapesAndProjection) {
  const NormPtr e = euclid();
  const ShapePtr d = disk();
  EXPECT_EQ(ac_shape_dim(d.get()), 2);
  EXPECT_TRUE(ac_shape_is_convex(d.get()));
  double vol = 0;
  ASSERT_EQ(ac_shape_volume(d.get(), &vol), AC_OK);
  EXPECT_NEAR(vol, kPi, 1e-12);
  double per = 0;
  ASSERT_EQ(ac_phi_perimeter(d.get(), e.get(), 256, &per), AC_OK);
  EXPECT_NEAR(per, 2 * kPi, 1e-9);

  const double x[] = {0, 2};
  double delta = 0, foot[2], nu[2];
  int mult = -1;
  ASSERT_EQ(ac_project(d.get(), e.get(), x, &delta, foot, nu, &mult), AC_OK);
  EXPECT_NEAR(delta, 1.0, 1e-14);
  EXPECT_NEAR(foot[1], 1.0, 1e-14);
  EXPECT_NEAR(nu[1], 1.0, 1e-14);
  EXPECT_EQ(mult, 0);

  ac_shape* comp = nullptr;
  ASSERT_EQ(ac_shape_complement(d.get(), &comp), AC_OK);
  const ShapePtr outside(comp);
  EXPECT_EQ(ac_shape_volume(outside.get(), &vol), AC_PRECONDITION_FAILED);

  const double verts[] = {-.5, -.5, .5, -.5, .5, .5, -.5, .5};
  ac_shape* sq = nullptr;
  ASSERT_EQ(ac_shape_polytope(2, 4, verts, &sq), AC_OK);
  const ShapePtr square(sq);
  ASSERT_EQ(ac_shape_volume(square.get(), &vol), AC_OK);
  EXPECT_NEAR(vol, 1.0, 1e-14);

  EXPECT_EQ(ac_shape_ball(2, x, -1.0, &sq), AC_INVALID_ARGUMENT);
}

TEST(CApi, UnionReachAndMultiplicity) {
  const NormPtr e = euclid();
  const ShapePtr a = disk(-1.5), b = disk(1.5);
  const ac_shape* parts[] = {a.get(), b.get()};
  ac_shape* u = nullptr;
  ASSERT_EQ(ac_shape_union(2, parts, &u), AC_OK);
  const ShapePtr two(u);
  double reach = 0;
  ASSERT_EQ(ac_global_reach(two.get(), e.get(), 400, 1, &reach), AC_OK);
  EXPECT_NEAR(reach, 0.5, 1e-4);
  const double mid[] = {0, 0};
  double delta = 0, foot[2], nu[2];
  int mult = -1;
  ASSERT_EQ(ac_project(two.get(), e.get(), mid, &delta, foot, nu, &mult), AC_OK);
  EXPECT_NEAR(delta, 0.5, 1e-12);
  EXPECT_EQ(mult, 1);

  double convex_reach = 0;
  ASSERT_EQ(ac_global_reach(a.get(), e.get(), 100, 1, &convex_reach), AC_OK);
  EXPECT_TRUE(std::isinf(convex_reach));
}

TEST(CApi, BundleMeasuresAndSteiner) {
  const NormPtr e = euclid();
  const ShapePtr d = disk();
  const BundlePtr b = bundle(d.get(), e.get());
  ASSERT_GT(ac_bundle_size(b.get()), 0u);
  ac_sample s{};
  ASSERT_EQ(ac_bundle_get(b.get(), 0, &s), AC_OK);
  EXPECT_NEAR(s.kappa[0], 1.0, 1e-6);
  EXPECT_NEAR(std::hypot(s.a[0], s.a[1]), 1.0, 1e-12);
  EXPECT_EQ(ac_bundle_get(b.get(), ac_bundle_size(b.get()), &s), AC_INVALID_ARGUMENT);

  double theta0 = 0, theta1 = 0, se = -1;
  ASSERT_EQ(ac_curvature_measure(d.get(), e.get(), b.get(), 0, &theta0, &se), AC_OK);
  ASSERT_EQ(ac_curvature_measure(d.get(), e.get(), b.get(), 1, &theta1, nullptr), AC_OK);
  EXPECT_NEAR(theta0, kPi, 1e-6);
  EXPECT_NEAR(theta1, 2 * kPi, 1e-6);
  EXPECT_GE(se, 0.0);

  const double rho[] = {0.5, 1.0};
  double pred[2], vox[2], err[2];
  ASSERT_EQ(ac_steiner_predict(e.get(), b.get(), 2, rho, 0, pred), AC_OK);
  EXPECT_NEAR(pred[1], 3 * kPi, 1e-6);
  ASSERT_EQ(ac_voxel_tube_volume(d.get(), e.get(), 2, rho, 0.01, vox, err), AC_OK);
  for (int i = 0; i < 2; ++i) EXPECT_LE(std::abs(vox[i] - pred[i]), 0.01 * pred[i] + err[i]);

  double plus = 0, minus = 0, jump = 0;
  ASSERT_EQ(ac_volume_derivatives(e.get(), b.get(), 1.0, &plus, &minus, &jump), AC_OK);
  EXPECT_NEAR(plus, 4 * kPi, 1e-6);
  EXPECT_NEAR(jump, 0.0, 1e-9);
}

TEST(CApi, TheoremVerdicts) {
  const NormPtr q = diag41();
  const double c[] = {0, 0};
  ac_shape* w = nullptr;
  ASSERT_EQ(ac_shape_wulff(q.get(), c, 1.0, &w), AC_OK);
  const ShapePtr wulff(w);
  const BundlePtr b = bundle(wulff.get(), q.get());

  ac_verdict v{};
  ASSERT_EQ(ac_minkowski_check(wulff.get(), q.get(), 1, b.get(), 0, &v), AC_OK);
  EXPECT_TRUE(v.pass);
  EXPECT_LT(v.residual, 5e-3);

  ac_shape* comp = nullptr;
  ASSERT_EQ(ac_shape_complement(wulff.get(), &comp), AC_OK);
  const ShapePtr outside(comp);
  const BundlePtr cb = bundle(outside.get(), q.get());
  ASSERT_EQ(ac_heintze_karcher_check(wulff.get(), q.get(), cb.get(), 0, &v), AC_OK);
  EXPECT_EQ(v.error, AC_OK);
  EXPECT_TRUE(v.equality);
  EXPECT_NEAR(v.lhs, v.rhs, 5e-3 * v.rhs);

  ac_bubble bub{};
  ASSERT_EQ(ac_alexandrov_classify(wulff.get(), q.get(), 1, b.get(), &bub), AC_OK);
  EXPECT_TRUE(bub.is_bubble_union);
  EXPECT_EQ(bub.count, 1);
  EXPECT_NEAR(bub.radius, 1.0, 1e-2);

  const double verts[] = {-.5, -.5, .5, -.5, .5, .5, -.5, .5};
  ac_shape* sq = nullptr;
  ASSERT_EQ(ac_shape_polytope(2, 4, verts, &sq), AC_OK);
  const ShapePtr square(sq);
  const BundlePtr sb = bundle(square.get(), q.get());
  ASSERT_EQ(ac_alexandrov_classify(square.get(), q.get(), 1, sb.get(), &bub), AC_OK);
  EXPECT_FALSE(bub.is_bubble_union);
  EXPECT_GT(std::strlen(bub.failure_reason), 0u);
}

TEST(CApi, Experiments) {
  ac_experiment* raw = nullptr;
  EXPECT_EQ(ac_experiment_parse("norms: [\n", &raw), AC_CONFIG_ERROR);
  EXPECT_NE(std::string(ac_last_error()).find("<string>:2"), std::string::npos);
  EXPECT_NE(ac_experiment_load("/nonexistent.cfg", &raw), AC_OK);
  EXPECT_EQ(raw, nullptr);

  ASSERT_EQ(ac_experiment_load(ANISOCURV_SOURCE_DIR "/configs/disk.cfg", &raw), AC_OK) << ac_last_error();
  const ExperimentPtr exp(raw);
  const auto dir = std::filesystem::temp_directory_path() / "anisocurv_test_capi";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(ac_experiment_set_output_dir(exp.get(), dir.c_str()), AC_OK);
  ac_experiment_set_threads(exp.get(), 1);
  int ok = 0;
  ASSERT_EQ(ac_experiment_run(exp.get(), "verify", &ok), AC_OK) << ac_last_error();
  EXPECT_EQ(ok, 1);
  EXPECT_TRUE(std::filesystem::exists(dir / "verify.json"));
  EXPECT_EQ(ac_experiment_run(exp.get(), "bogus", &ok), AC_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);
}
