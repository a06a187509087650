#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "stiefel/decasteljau.hpp"
#include "stiefel/quasigeo.hpp"
#include "test_support.hpp"

using namespace stiefel;
using namespace stiefel::testing;

namespace {

CubicBoundaryData random_boundary(std::mt19937_64& rng, int n, int k, double spread,
                                  double speed) {
  const StiefelPoint s0(random_stiefel(rng, n, k));
  const StiefelPoint s3 = retraction(s0, TangentVector(s0, random_tangent(rng, s0.matrix(), spread)));
  const TangentVector v0(s0, random_tangent(rng, s0.matrix(), speed));
  const TangentVector v3(s3, random_tangent(rng, s3.matrix(), speed));
  return {s0, s3, v0, v3};
}

Matrix slerp(const Matrix& a, const Matrix& b, double t) {
  const double angle = std::acos(std::clamp(a.col(0).dot(b.col(0)), -1.0, 1.0));
  if (angle < 1e-14) return a;
  return (std::sin((1 - t) * angle) * a + std::sin(t * angle) * b) / std::sin(angle);
}

// Spherical de Casteljau with slerp on the control polygon, independent of
// the matrix-log construction.
Matrix sphere_de_casteljau(const Matrix& p0, const Matrix& p1, const Matrix& p2,
                           const Matrix& p3, double t) {
  const Matrix a = slerp(p0, p1, t);
  const Matrix b = slerp(p1, p2, t);
  const Matrix c = slerp(p2, p3, t);
  return slerp(slerp(a, b, t), slerp(b, c, t), t);
}

// Control point reached from s along the great circle with initial velocity v/3.
Matrix sphere_control(const Matrix& s, const Matrix& v) {
  const double speed = v.norm() / 3.0;
  if (speed == 0.0) return s;
  return std::cos(speed) * s + std::sin(speed) * v / v.norm();
}

}  // namespace

TEST(BuildCubic, RejectsVelocityAtWrongBase) {
  std::mt19937_64 rng(31);
  CubicBoundaryData b = random_boundary(rng, 3, 2, 0.4, 0.3);
  b.v3 = TangentVector(b.s0, random_tangent(rng, b.s0.matrix(), 0.3));
  EXPECT_THROW(build_cubic(b), NotTangent);
}

TEST(BuildCubic, RejectsMixedManifolds) {
  std::mt19937_64 rng(32);
  const StiefelPoint a(random_stiefel(rng, 3, 1));
  const StiefelPoint b(random_stiefel(rng, 3, 2));
  EXPECT_THROW(build_cubic({a, b, TangentVector::zero(a), TangentVector::zero(b)}),
               DimensionMismatch);
}

TEST(BuildCubic, FarControlPointsHaveNoLog) {
  const StiefelPoint s0(unit(3, 0));
  const StiefelPoint s3(unit(3, 1));
  EXPECT_THROW(build_cubic({s0, s3, TangentVector::zero(s0), TangentVector::zero(s3)}),
               PrincipalLogUndefined);
}

TEST(EvalCubic, InterpolatesEndpoints) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 2;
    const CubicBoundaryData b = random_boundary(rng, 3 + trial % 2, k, 0.6, 0.5);
    const CubicCurve c = build_cubic(b);
    EXPECT_LT((eval_cubic(c, 0.0).matrix() - b.s0.matrix()).norm(), 1e-8);
    EXPECT_LT((eval_cubic(c, 1.0).matrix() - b.s3.matrix()).norm(), 1e-8);
  }
}

TEST(EvalCubic, MatchesEndpointVelocities) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const CubicBoundaryData b = random_boundary(rng, 3, 1 + trial % 2, 0.6, 0.5);
    const CubicCurve c = build_cubic(b);
    EXPECT_LT((eval_cubic_velocity(c, 0.0).matrix() - b.v0.matrix()).norm(), 1e-5);
    EXPECT_LT((eval_cubic_velocity(c, 1.0).matrix() - b.v3.matrix()).norm(), 1e-5);
  }
}

TEST(EvalCubic, StaysOnTheManifold) {
  std::mt19937_64 rng(35);
  const CubicCurve c = build_cubic(random_boundary(rng, 3, 2, 0.8, 0.6));
  for (int j = 0; j <= 20; ++j) {
    EXPECT_LT(orthonormality_defect(eval_cubic(c, j / 20.0).matrix()), kOrthTol);
  }
}

TEST(EvalCubic, VelocityAgreesWithRichardsonDifferences) {
  std::mt19937_64 rng(36);
  const CubicCurve c = build_cubic(random_boundary(rng, 3, 2, 0.5, 0.4));
  auto f = [&](double t) { return eval_cubic(c, t).matrix(); };
  for (double t : {0.2, 0.5, 0.8}) {
    const double d = 1e-3;
    const Matrix coarse = (f(t + d) - f(t - d)) / (2 * d);
    const Matrix fine = (f(t + d / 2) - f(t - d / 2)) / d;
    const Matrix richardson = (4.0 * fine - coarse) / 3.0;
    EXPECT_LT((eval_cubic_velocity(c, t).matrix() - richardson).norm(), 1e-7);
  }
}

TEST(EvalCubic, ZeroVelocitiesEaseAlongTheGreatCircle) {
  std::mt19937_64 rng(37);
  const StiefelPoint s0(random_stiefel(rng, 3, 1));
  const StiefelPoint s3 = retraction(s0, TangentVector(s0, random_tangent(rng, s0.matrix(), 0.7)));
  const CubicCurve c = build_cubic({s0, s3, TangentVector::zero(s0), TangentVector::zero(s3)});
  // Control points collapse onto the ends, leaving the smoothstep 3t^2 - 2t^3.
  for (double t : {0.25, 0.5, 0.75}) {
    const double u = t * t * (3 - 2 * t);
    EXPECT_LT((eval_cubic(c, t).matrix() - slerp(s0.matrix(), s3.matrix(), u)).norm(), 1e-10);
  }
}

TEST(EvalCubic, SphereCaseMatchesSlerpDeCasteljau) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 30; ++trial) {
    const CubicBoundaryData b = random_boundary(rng, 3, 1, 0.7, 0.6);
    const CubicCurve c = build_cubic(b);
    const Matrix p1 = sphere_control(b.s0.matrix(), b.v0.matrix());
    const Matrix p2 = sphere_control(b.s3.matrix(), -b.v3.matrix());
    EXPECT_LT((c.s1.matrix() - p1).norm(), 1e-12);
    EXPECT_LT((c.s2.matrix() - p2).norm(), 1e-12);
    for (double t : {0.1, 0.4, 0.6, 0.9}) {
      const Matrix expected = sphere_de_casteljau(b.s0.matrix(), p1, p2, b.s3.matrix(), t);
      EXPECT_LT((eval_cubic(c, t).matrix() - expected).norm(), 1e-8);
    }
  }
}

TEST(SampleCubic, GridAndRefinementAgree) {
  std::mt19937_64 rng(39);
  const CubicCurve c = build_cubic(random_boundary(rng, 3, 2, 0.5, 0.5));
  const TrajectoryRecord coarse = sample_cubic(c, 51);
  const TrajectoryRecord fine = sample_cubic(c, 101);
  ASSERT_EQ(coarse.size(), 51u);
  ASSERT_EQ(fine.size(), 101u);
  EXPECT_EQ(coarse.method, "gcp");
  EXPECT_EQ(coarse.times.front(), 0.0);
  EXPECT_EQ(coarse.times.back(), 1.0);
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    EXPECT_EQ(coarse.times[j], fine.times[2 * j]);
    EXPECT_LT((coarse.points[j] - fine.points[2 * j]).norm(), 1e-14);
  }
}

TEST(SampleCubic, NeedsTwoSamples) {
  std::mt19937_64 rng(40);
  const CubicCurve c = build_cubic(random_boundary(rng, 3, 1, 0.5, 0.5));
  EXPECT_THROW(sample_cubic(c, 1), DimensionMismatch);
}

TEST(SampleCubic, ExplicitTimes) {
  std::mt19937_64 rng(41);
  const CubicCurve c = build_cubic(random_boundary(rng, 3, 2, 0.5, 0.5));
  const std::vector<double> times{0.0, 0.3, 0.35, 1.0};
  const TrajectoryRecord rec = sample_cubic_at(c, times);
  ASSERT_EQ(rec.size(), times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    EXPECT_EQ(rec.points[j], eval_cubic(c, times[j]).matrix());
  }
}
