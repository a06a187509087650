#pragma once

#include <span>

#include "stiefel/matcore.hpp"
#include "stiefel/trajectory.hpp"

namespace stiefel {

/// Endpoints and endpoint velocities of the interpolation problem.
struct CubicBoundaryData {
  StiefelPoint s0;
  StiefelPoint s3;
  TangentVector v0;
  TangentVector v3;
};

/// Precomputed generators and control points of the adjusted de Casteljau
/// cubic. Immutable after build_cubic; evaluation is thread-safe.
struct CubicCurve {
  CubicBoundaryData boundary;
  SkewMatrix x0, omega0;
  SkewMatrix x2, omega2;
  StiefelPoint s1, s2;
  SkewMatrix x1, omega1;
};

/// Builds control points S1 = e^{X0} S0 e^{Omega0}, S2 = e^{X2} S3 e^{Omega2}
/// and the generators (X1, Omega1) of the quasi-geodesic S1 -> S2.
///
/// Throws NotTangent for inconsistent boundary data and PrincipalLogUndefined
/// when the control points are too far apart.
CubicCurve build_cubic(const CubicBoundaryData& b);

/// gamma(t) = e^{tX5(t)} e^{tX3(t)} e^{tX0} S0 e^{tOmega0} e^{tOmega3(t)} e^{tOmega5(t)}.
///
/// All t-dependent generators are recomputed from scratch. A failing
/// intermediate log raises PrincipalLogUndefined naming the generator and t.
StiefelPoint eval_cubic(const CubicCurve& c, double t);

/// Step of the difference stencils used by eval_cubic_velocity.
inline constexpr double kCubicVelocityStep = 1e-4;

/// Velocity of gamma by 4th-order differences (central in the interior,
/// one-sided within two steps of an endpoint), projected onto the tangent
/// space at gamma(t).
TangentVector eval_cubic_velocity(const CubicCurve& c, double t);

/// gamma at t_j = j / (N - 1), j = 0..N-1. Requires N >= 2.
TrajectoryRecord sample_cubic(const CubicCurve& c, std::size_t n_samples);

/// gamma at caller-supplied times in [0, 1].
TrajectoryRecord sample_cubic_at(const CubicCurve& c, std::span<const double> times);

}  // namespace stiefel
