#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stiefel/quasigeo.hpp"
#include "test_support.hpp"

using namespace stiefel;
using namespace stiefel::testing;

namespace {
constexpr double kPi = std::numbers::pi;

// A point of St(n,k) within `radius` of s along a random tangent direction.
Matrix nearby(std::mt19937_64& rng, const Matrix& s, double radius) {
  const StiefelPoint sp(s);
  return retraction(sp, TangentVector(sp, random_tangent(rng, s, radius))).matrix();
}
}  // namespace

TEST(Retraction, ZeroVectorIsIdentity) {
  std::mt19937_64 rng(21);
  const StiefelPoint s(random_stiefel(rng, 4, 2));
  EXPECT_LT((retraction(s, TangentVector::zero(s)).matrix() - s.matrix()).norm(), 1e-15);
}

TEST(Retraction, QuarterTurnOnTheSphere) {
  const StiefelPoint s(unit(3, 0));
  const TangentVector v(s, kPi / 2 * unit(3, 1));
  EXPECT_LT((retraction(s, v).matrix() - unit(3, 1)).norm(), 1e-15);
}

TEST(Retraction, StaysOnTheManifold) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 3;
    const int k = 1 + trial % 3;
    const StiefelPoint s(random_stiefel(rng, n, k));
    const TangentVector v(s, random_tangent(rng, s.matrix(), uniform(rng, 0.0, 10.0)));
    EXPECT_LT(orthonormality_defect(retraction(s, v).matrix()), kOrthTol);
  }
}

TEST(Retraction, FirstOrderAgreesWithTheVector) {
  std::mt19937_64 rng(23);
  const double eps = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const StiefelPoint s(random_stiefel(rng, 3, 2));
    const Matrix v = random_tangent(rng, s.matrix(), 1.0);
    const Matrix plus = retraction(s, TangentVector(s, eps * v)).matrix();
    const Matrix minus = retraction(s, TangentVector(s, -eps * v)).matrix();
    EXPECT_LT(((plus - minus) / (2 * eps) - v).norm(), 1e-6);
  }
}

TEST(QuasiGeodesic, GreatCircleOnTheSphere) {
  const StiefelPoint s(unit(3, 0));
  const double speed = 1.2;
  const QuasiGeodesic g = quasi_geodesic(s, TangentVector(s, speed * unit(3, 1)));
  for (double t : {0.0, 0.3, 0.7, 1.0}) {
    const Matrix expected = std::cos(speed * t) * unit(3, 0) + std::sin(speed * t) * unit(3, 1);
    EXPECT_LT((quasi_geodesic_eval(g, t).point.matrix() - expected).norm(), 1e-14);
  }
}

TEST(QuasiGeodesic, SphereAccelerationIsNormal) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const StiefelPoint s(random_stiefel(rng, 3, 1));
    const TangentVector v(s, random_tangent(rng, s.matrix(), uniform(rng, 0.1, 2.0)));
    const QuasiGeodesic g = quasi_geodesic(s, v);
    const double t = uniform(rng, 0.0, 1.0);
    const QuasiGeodesicSample q = quasi_geodesic_eval(g, t);
    const Matrix tangential = project_to_tangent(q.point.matrix(), q.acceleration);
    EXPECT_LT(tangential.norm(), 1e-12);
  }
}

TEST(QuasiGeodesic, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(25);
  const double eps = 1e-4;
  for (int trial = 0; trial < 50; ++trial) {
    const StiefelPoint s(random_stiefel(rng, 4, 2));
    const TangentVector v(s, random_tangent(rng, s.matrix(), 1.0));
    const QuasiGeodesic g = quasi_geodesic(s, v);
    const double t = uniform(rng, 0.1, 0.9);
    const Matrix p_plus = quasi_geodesic_eval(g, t + eps).point.matrix();
    const Matrix p_minus = quasi_geodesic_eval(g, t - eps).point.matrix();
    const QuasiGeodesicSample mid = quasi_geodesic_eval(g, t);
    EXPECT_LT(((p_plus - p_minus) / (2 * eps) - mid.velocity).norm(), 1e-7);
    const Matrix second = (p_plus - 2 * mid.point.matrix() + p_minus) / (eps * eps);
    EXPECT_LT((second - mid.acceleration).norm(), 1e-5);
  }
}

TEST(QuasiGeodesic, InitialVelocityIsReproduced) {
  std::mt19937_64 rng(26);
  const StiefelPoint s(random_stiefel(rng, 3, 2));
  const Matrix v = random_tangent(rng, s.matrix(), 0.8);
  const QuasiGeodesic g = quasi_geodesic(s, TangentVector(s, v));
  EXPECT_LT((quasi_geodesic_eval(g, 0.0).velocity - v).norm(), 1e-14);
}

TEST(Connect, EighthTurnOnTheSphere) {
  const StiefelPoint s0(unit(3, 0));
  const StiefelPoint s1((unit(3, 0) + unit(3, 1)) / std::sqrt(2.0));
  const QuasiGeodesic g = connect(s0, s1);
  EXPECT_LT((g.x.matrix() - kPi / 4 * gz()).norm(), 1e-14);
  EXPECT_LT(g.omega.matrix().norm(), 1e-14);
}

TEST(Connect, AntipodalQuarterTurnHasNoLog) {
  EXPECT_THROW(connect(StiefelPoint(unit(3, 0)), StiefelPoint(unit(3, 1))), PrincipalLogUndefined);
}

TEST(Connect, SamePointGivesZeroGenerators) {
  std::mt19937_64 rng(27);
  const StiefelPoint s(random_stiefel(rng, 3, 2));
  const QuasiGeodesic g = connect(s, s);
  EXPECT_LT(g.x.matrix().norm(), 1e-14);
  EXPECT_LT(g.omega.matrix().norm(), 1e-14);
}

TEST(Connect, HitsBothEndpoints) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 3;
    const int k = 1 + trial % 2;
    const Matrix s0 = random_stiefel(rng, n, k);
    const Matrix s1 = nearby(rng, s0, uniform(rng, 0.05, 0.6));
    const QuasiGeodesic g = connect(StiefelPoint(s0), StiefelPoint(s1));
    EXPECT_LT((quasi_geodesic_eval(g, 0.0).point.matrix() - s0).norm(), 1e-14);
    EXPECT_LT((quasi_geodesic_eval(g, 1.0).point.matrix() - s1).norm(), 1e-10);
    EXPECT_TRUE(in_so_p(g.x.matrix(), s0, 1e-9));
  }
}

TEST(Connect, SphereSegmentIsTheShortGreatCircle) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_stiefel(rng, 3, 1);
    const Matrix b = nearby(rng, a, uniform(rng, 0.1, 1.2));
    const double angle = std::acos(std::clamp(a.col(0).dot(b.col(0)), -1.0, 1.0));
    const QuasiGeodesic g = connect(StiefelPoint(a), StiefelPoint(b));
    const double t = uniform(rng, 0.0, 1.0);
    const Matrix slerp =
        (std::sin((1 - t) * angle) * a + std::sin(t * angle) * b) / std::sin(angle);
    EXPECT_LT((quasi_geodesic_eval(g, t).point.matrix() - slerp).norm(), 1e-10);
  }
}
