// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/norm.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace anisocurv;
using oracle::v2;
using oracle::v3;

namespace {

Mat diag2(double a, double b) {
  Mat q = Mat::Zero(2, 2);
  q(0, 0) = a;
  q(1, 1) = b;
  return q;
}

std::vector<Norm> all_norms() {
  Mat q3(3, 3);
  q3 << 3, 0.5, 0, 0.5, 2, 0.2, 0, 0.2, 1;
  return {Norm::euclidean(2), Norm::ellipsoidal(diag2(4, 1)), Norm::smoothed_lp(2, 4.0), Norm::euclidean(3), Norm::ellipsoidal(q3),
          Norm::smoothed_lp(3, 3.0)};
}

double tol_for(const Norm& n) { return n.is_quadratic() ? 1e-8 : 1e-6; }

}  // namespace

TEST(NormEval, EuclideanPythagoras) { EXPECT_DOUBLE_EQ(Norm::euclidean(2).eval(v2(3, 4)), 5.0); }

TEST(NormEval, EllipsoidalAxis) { EXPECT_DOUBLE_EQ(Norm::ellipsoidal(diag2(4, 1)).eval(v2(1, 0)), 2.0); }

TEST(NormEval, UnsmoothedLpMatchesFormula) {
  const Norm n = Norm::smoothed_lp(2, 4.0, 0.0);
  EXPECT_NEAR(n.eval(v2(1, 1)), std::pow(2.0, 0.25), 1e-14);
  EXPECT_NEAR(n.eval(v2(-2, 0.5)), std::pow(16.0 + 0.0625, 0.25), 1e-14);
}

TEST(NormEval, ZeroOnlyAtOrigin) {
  for (const Norm& n : all_norms()) {
    EXPECT_EQ(n.eval(Vec::Zero(n.dim())), 0.0);
    EXPECT_GT(n.eval(Vec::Constant(n.dim(), 1e-9)), 0.0);
  }
}

TEST(NormConstruction, RejectsBadParameters) {
  EXPECT_THROW(Norm::euclidean(4), Error);
  EXPECT_THROW(Norm::ellipsoidal(diag2(1, -1)), Error);
  Mat asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(Norm::ellipsoidal(asym), Error);
  EXPECT_THROW(Norm::smoothed_lp(2, 1.0), Error);
  EXPECT_THROW(Norm::smoothed_lp(2, 3.0, -0.1), Error);
}

TEST(NormConjugate, Examples) {
  EXPECT_DOUBLE_EQ(Norm::euclidean(2).conjugate_eval(v2(0, 2)), 2.0);
  const Norm q = Norm::ellipsoidal(diag2(4, 1));
  EXPECT_NEAR(q.conjugate_eval(v2(1, 0)), 0.5, 1e-15);
  for (const Norm& n : all_norms()) EXPECT_EQ(n.conjugate_eval(Vec::Zero(n.dim())), 0.0);
}

TEST(NormConjugate, MatchesBruteForceSupremum) {
  std::mt19937_64 rng(11);
  for (const Norm& n : {Norm::ellipsoidal(diag2(4, 1)), Norm::smoothed_lp(2, 4.0), Norm::smoothed_lp(2, 1.5, 0.1)}) {
    for (int i = 0; i < 4; ++i) {
      const Vec y = 1.7 * oracle::random_unit(rng, 2);
      EXPECT_NEAR(n.conjugate_eval(y), oracle::brute_conjugate_2d(n, y), 1e-9) << n.kind_name();
    }
  }
}

TEST(NormGrad, Examples) {
  const Vec g = Norm::euclidean(2).grad(v2(0, 3));
  EXPECT_NEAR((g - v2(0, 1)).norm(), 0.0, 1e-15);
  const Vec gq = Norm::ellipsoidal(diag2(4, 1)).grad(v2(1, 0));
  EXPECT_NEAR((gq - v2(2, 0)).norm(), 0.0, 1e-15);
  EXPECT_THROW(Norm::euclidean(2).grad(v2(0, 0)), Error);
  EXPECT_THROW(Norm::euclidean(2).hessian(v2(0, 0)), Error);
}

TEST(NormGrad, MatchesFiniteDifferencesOfEval) {
  std::mt19937_64 rng(3);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 20; ++i) {
      const Vec x = 0.7 * oracle::random_unit(rng, n.dim());
      const Vec fd = oracle::fd_gradient([&](const Vec& p) { return n.eval(p); }, x);
      EXPECT_LT((n.grad(x) - fd).norm(), 1e-6) << n.kind_name();
      const Vec fdc = oracle::fd_gradient([&](const Vec& p) { return n.conjugate_eval(p); }, x);
      EXPECT_LT((n.grad_conjugate(x) - fdc).norm(), 1e-6) << n.kind_name();
    }
  }
}

TEST(NormGrad, ZeroHomogeneousAndRoundTrip) {
  std::mt19937_64 rng(5);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 100; ++i) {
      const Vec u = oracle::random_unit(rng, n.dim());
      EXPECT_LT((n.grad(3.0 * u) - n.grad(u)).norm(), 1e-12);
      const Vec x = u / n.eval(u);  // on the unit sphere of phi
      EXPECT_LT((n.grad_conjugate(n.grad(x)) - x).norm(), tol_for(n)) << n.kind_name();
    }
  }
}

TEST(GaussMap, Examples) {
  const Norm e = Norm::euclidean(2);
  const Vec eta = v2(0.6, 0.8);
  EXPECT_LT((e.gauss_map(eta) - eta).norm(), 1e-15);
  EXPECT_LT((Norm::ellipsoidal(diag2(4, 1)).gauss_inverse(v2(1, 0)) - v2(2, 0)).norm(), 1e-15);
}

TEST(GaussMap, InverseOfGaussInverse) {
  std::mt19937_64 rng(8);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 100; ++i) {
      const Vec u = oracle::random_unit(rng, n.dim());
      const Vec eta = n.gauss_inverse(u);
      EXPECT_NEAR(n.conjugate_eval(eta), 1.0, tol_for(n));
      const Vec back = n.gauss_map(eta);
      EXPECT_LT((back - u).norm(), tol_for(n)) << n.kind_name();
      // phi(n(eta)) = n(eta) . eta
      EXPECT_NEAR(n.eval(back), back.dot(eta), tol_for(n));
      EXPECT_GT(back.dot(eta), 0.0);
    }
  }
}

TEST(Hessian, EuclideanExample) {
  const Mat h = Norm::euclidean(2).hessian(v2(1, 0));
  EXPECT_NEAR(h(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(h(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(h(1, 1), 1.0, 1e-15);
}

TEST(Hessian, SymmetricAndAnnihilatesPoint) {
  std::mt19937_64 rng(9);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 50; ++i) {
      const Vec x = 2.0 * oracle::random_unit(rng, n.dim());
      const Mat h = n.hessian(x);
      EXPECT_LT((h - h.transpose()).norm(), 1e-12);
      EXPECT_LT((h * x).norm(), 1e-9 * (1.0 + h.norm())) << n.kind_name();
    }
  }
}

TEST(Hessian, SmoothedLpMatchesDifferencesOfGradient) {
  std::mt19937_64 rng(10);
  for (const Norm& n : {Norm::smoothed_lp(2, 4.0), Norm::smoothed_lp(3, 3.0)}) {
    for (int i = 0; i < 20; ++i) {
      const Vec x = oracle::random_unit(rng, n.dim());
      const Mat h = n.hessian(x);
      Mat fd(n.dim(), n.dim());
      for (int j = 0; j < n.dim(); ++j) {
        Vec e = Vec::Zero(n.dim());
        e(j) = 1e-5;
        fd.col(j) = (n.grad(x + e) - n.grad(x - e)) / 2e-5;
      }
      EXPECT_LT((h - fd).norm(), 1e-5 * (1.0 + h.norm()));
    }
  }
}

// Properties over random samples.

TEST(NormProperties, HomogeneousAndSymmetric) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lam(-5.0, 5.0);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 200; ++i) {
      const Vec x = oracle::random_unit(rng, n.dim()) * 1.3;
      const double l = lam(rng);
      EXPECT_NEAR(n.eval(l * x), std::abs(l) * n.eval(x), 1e-12 * (1.0 + std::abs(l)));
    }
  }
}

TEST(NormProperties, DualitySandwich) {
  std::mt19937_64 rng(13);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 1000; ++i) {
      const Vec x = oracle::random_unit(rng, n.dim());
      const Vec y = oracle::random_unit(rng, n.dim()) * 2.0;
      EXPECT_LE(x.dot(y), n.eval(x) * n.conjugate_eval(y) + 1e-12);
    }
    // Equality when y is parallel to grad phi(x).
    const Vec x = oracle::random_unit(rng, n.dim());
    const Vec y = 0.4 * n.grad(x);
    EXPECT_NEAR(x.dot(y), n.eval(x) * n.conjugate_eval(y), tol_for(n));
  }
}

TEST(NormProperties, BiconjugateIsNorm) {
  // phi(x) = sup { x.y : phi*(y) = 1 }, attained at y = grad phi(x).
  std::mt19937_64 rng(14);
  for (const Norm& n : all_norms()) {
    for (int i = 0; i < 50; ++i) {
      const Vec x = oracle::random_unit(rng, n.dim());
      EXPECT_NEAR(x.dot(n.grad(x)), n.eval(x), 1e-12);
      EXPECT_NEAR(n.conjugate_eval(n.grad(x)), 1.0, tol_for(n));
    }
  }
}

TEST(NormProperties, Ellipticity) {
  std::mt19937_64 rng(15);
  for (const Norm& n : all_norms()) {
    EXPECT_GT(n.gamma(), 0.0);
    for (int i = 0; i < 500; ++i) {
      const Vec u = oracle::random_unit(rng, n.dim());
      Vec v = oracle::random_unit(rng, n.dim());
      v -= v.dot(u) * u;
      v.normalize();
      EXPECT_GE(v.dot(n.hessian(u) * v), n.gamma() - 1e-3 * n.gamma());
    }
  }
}

TEST(NormProperties, WulffShapeMembership) {
  // x in rho W iff phi*(x) <= rho; gauss_inverse lands on the boundary.
  const Norm n = Norm::ellipsoidal(diag2(4, 1));
  std::mt19937_64 rng(16);
  for (int i = 0; i < 100; ++i) {
    const Vec eta = n.gauss_inverse(oracle::random_unit(rng, 2));
    EXPECT_LT(n.conjugate_eval(0.99 * eta), 1.0);
    EXPECT_GT(n.conjugate_eval(1.01 * eta), 1.0);
  }
}
