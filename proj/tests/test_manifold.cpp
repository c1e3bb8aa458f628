#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stiefel/errors.hpp"
#include "stiefel/manifold.hpp"

namespace {

using namespace stiefel;

TEST(CheckPoint, CanonicalPointIsValid) {
  const Matrix e = Matrix::Identity(7, 3);
  EXPECT_NO_THROW(check_point(e));
  EXPECT_EQ(StiefelPoint::canonical(7, 3).matrix(), e);
}

TEST(CheckPoint, DuplicatedColumnReportsDefect) {
  Matrix u = Matrix::Zero(4, 2);
  u(0, 0) = 1.0;
  u(0, 1) = 1.0;
  try {
    check_point(u);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    // U^T U - I = [[0, 1], [1, 0]]
    EXPECT_NEAR(e.defect(), std::sqrt(2.0), 1e-15);
  }
}

TEST(CheckPoint, OrthonormalizedGaussianIsValid) {
  NormalRng rng(4);
  const Eigen::HouseholderQR<Matrix> qr(rng.matrix(20, 6));
  const Matrix q = qr.householderQ() * Matrix::Identity(20, 6);
  EXPECT_NO_THROW(check_point(q));
}

TEST(CheckPoint, RejectsBadShapesAndValues) {
  EXPECT_THROW(check_point(Matrix::Identity(2, 3)), PreconditionError);
  Matrix u = Matrix::Identity(3, 2);
  u(2, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(check_point(u), PreconditionError);
}

TEST(ProjectTangent, KeepsTangentVectors) {
  const StiefelPoint u = rand_point(10, 4, 1);
  const TangentVector xi = rand_tangent(u, 1.0, 2);
  EXPECT_LT((project_tangent(u, xi.matrix()).matrix() - xi.matrix()).norm(), 1e-14);
}

TEST(ProjectTangent, AnnihilatesBasePoint) {
  const StiefelPoint u = rand_point(10, 4, 3);
  EXPECT_LT(project_tangent(u, u.matrix()).matrix().norm(), 1e-14);
}

TEST(ProjectTangent, IdempotentAndTangent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StiefelPoint u = rand_point(15, 1 + seed % 6, seed);
    NormalRng rng(50 + seed);
    const TangentVector once = project_tangent(u, rng.matrix(u.n(), u.p()));
    const TangentVector twice = project_tangent(u, once.matrix());
    EXPECT_LT((twice.matrix() - once.matrix()).norm(), 1e-13);
    EXPECT_NO_THROW(TangentVector::check(u, once.matrix()));
  }
}

TEST(Sampling, DeterministicInSeed) {
  const StiefelPoint a = rand_point(30, 5, 77);
  const StiefelPoint b = rand_point(30, 5, 77);
  EXPECT_EQ(a.matrix(), b.matrix());
  EXPECT_EQ(rand_tangent(a, 0.7, 78).matrix(), rand_tangent(b, 0.7, 78).matrix());
  EXPECT_NE(rand_point(30, 5, 76).matrix(), a.matrix());
}

TEST(Sampling, TangentNormMatchesTarget) {
  const StiefelPoint u = rand_point(40, 8, 5);
  const TangentVector xi = rand_tangent(u, std::numbers::pi / 2, 6);
  EXPECT_NEAR(xi.frobenius_norm(), std::numbers::pi / 2, 1e-12);
  EXPECT_EQ(rand_tangent(u, 0.0, 6).matrix(), Matrix::Zero(40, 8));
}

TEST(Sampling, LargePointIsValid) {
  EXPECT_NO_THROW(check_point(rand_point(1000, 400, 9).matrix()));
}

TEST(Inner, HorizontalVectorsAgreeAcrossMetrics) {
  const StiefelPoint u = rand_point(12, 3, 10);
  const TangentVector xi = rand_tangent(u, 1.0, 11);
  const TangentVector h = TangentVector::unchecked(u, xi.horizontal());
  const double bb = h.matrix().squaredNorm();
  EXPECT_NEAR(inner(h, h, MetricParam::euclidean()), bb, 1e-14);
  EXPECT_NEAR(inner(h, h, MetricParam::canonical()), bb, 1e-14);
}

TEST(Inner, VerticalVectorsHalveUnderCanonicalMetric) {
  const StiefelPoint u = rand_point(12, 4, 12);
  const Matrix a = stiefel::testing::random_skew(4, 13);
  const TangentVector xi = TangentVector::check(u, u.matrix() * a);
  const double euclid = inner(xi, xi, MetricParam::euclidean());
  EXPECT_NEAR(euclid, a.squaredNorm(), 1e-13);
  EXPECT_NEAR(inner(xi, xi, MetricParam::canonical()), 0.5 * euclid, 1e-13);
}

TEST(Inner, SymmetricAndPositive) {
  const StiefelPoint u = rand_point(9, 4, 14);
  const TangentVector xi = rand_tangent(u, 1.3, 15);
  const TangentVector eta = rand_tangent(u, 0.4, 16);
  for (const MetricParam m : {MetricParam::euclidean(), MetricParam::canonical()}) {
    EXPECT_NEAR(inner(xi, eta, m), inner(eta, xi, m), 1e-13);
    EXPECT_GT(norm(xi, m), 0.0);
  }
}

TEST(Inner, Errors) {
  const StiefelPoint u = rand_point(9, 4, 17);
  const StiefelPoint v = rand_point(9, 4, 18);
  const TangentVector xi = rand_tangent(u, 1.0, 19);
  const TangentVector eta = rand_tangent(v, 1.0, 20);
  EXPECT_THROW(inner(xi, eta, MetricParam::euclidean()), PreconditionError);
  EXPECT_THROW(inner(xi, xi, MetricParam{0.7}), PreconditionError);
}

TEST(ExpBeta, ZeroVectorGivesBase) {
  const StiefelPoint u = rand_point(11, 4, 21);
  for (const double beta : {0.5, 1.0, 0.3}) {
    EXPECT_EQ(exp_beta(TangentVector::zero(u), {beta}).matrix(), u.matrix());
  }
}

TEST(ExpBeta, SquareCaseIsRotation) {
  const StiefelPoint u = rand_point(6, 6, 22);
  const Matrix a = stiefel::testing::random_skew(6, 23);
  const TangentVector xi = TangentVector::check(u, u.matrix() * a);
  const Matrix expected = u.matrix() * matfun::expm_skew(a);
  EXPECT_LT((exp_beta(xi, MetricParam::canonical()).matrix() - expected).norm(), 1e-10);
}

TEST(ExpBeta, SphereGreatCircle) {
  const StiefelPoint u = rand_point(8, 1, 24);
  const TangentVector xi = rand_tangent(u, 2.2, 25);
  const double len = xi.frobenius_norm();
  const Matrix expected = u.matrix() * std::cos(len) + xi.matrix() * (std::sin(len) / len);
  for (const double beta : {0.5, 1.0, 2.0}) {
    EXPECT_LT((exp_beta(xi, {beta}).matrix() - expected).norm(), 1e-10) << "beta " << beta;
  }
}

TEST(ExpBeta, ThinFormMatchesFullCompletion) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Eigen::Index n = 5 + (seed * 7) % 26;
    const Eigen::Index p = 1 + seed % std::min<Eigen::Index>(n, 8);
    const double beta = seed % 3 == 0 ? 0.5 : (seed % 3 == 1 ? 1.0 : 0.3);
    const StiefelPoint u = rand_point(n, p, 300 + seed);
    const TangentVector xi = rand_tangent(u, 1.5, 400 + seed);
    const Matrix full = stiefel::testing::exp_beta_full(u.matrix(), xi.matrix(), beta, seed);
    EXPECT_LT((exp_beta(xi, {beta}).matrix() - full).norm(), 1e-12)
        << "n=" << n << " p=" << p << " beta=" << beta;
  }
}

TEST(ExpBeta, OutputIsOnManifold) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Eigen::Index p = 1 + seed % 7;
    const StiefelPoint u = rand_point(p + 3 + seed, p, 500 + seed);
    const TangentVector xi = rand_tangent(u, 0.5 + seed, 600 + seed);
    for (const double beta : {0.5, 1.0}) {
      EXPECT_NO_THROW(check_point(exp_beta(xi, {beta}).matrix()));
    }
  }
}

TEST(ExpBeta, DerivativeAtZeroIsIdentity) {
  const StiefelPoint u = rand_point(14, 5, 26);
  const TangentVector xi = rand_tangent(u, 1.0, 27);
  const double h = 1e-5;
  for (const double beta : {0.5, 1.0}) {
    const Matrix fd = (exp_beta(xi.scaled(h), {beta}).matrix() -
                       exp_beta(xi.scaled(-h), {beta}).matrix()) /
                      (2 * h);
    EXPECT_LE((fd - xi.matrix()).norm() / xi.frobenius_norm(), 1e-6);
  }
}

TEST(ExpBeta, RotationEquivariance) {
  const Eigen::Index n = 12;
  const StiefelPoint u = rand_point(n, 4, 28);
  const TangentVector xi = rand_tangent(u, 1.1, 29);
  const Matrix phi = stiefel::testing::random_orthogonal(n, 30);
  const StiefelPoint ru = StiefelPoint::check(phi * u.matrix());
  const TangentVector rxi = TangentVector::check(ru, phi * xi.matrix());
  for (const double beta : {0.5, 1.0}) {
    const Matrix lhs = exp_beta(rxi, {beta}).matrix();
    const Matrix rhs = phi * exp_beta(xi, {beta}).matrix();
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(ExpBeta, RejectsNonPositiveBeta) {
  const StiefelPoint u = rand_point(5, 2, 31);
  EXPECT_THROW(exp_beta(TangentVector::zero(u), {0.0}), PreconditionError);
}

}  // namespace
