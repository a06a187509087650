#pragma once

#include "stiefel/matcore.hpp"

namespace stiefel {

/// Curve t -> e^{tX} S0 e^{t Omega}.
struct QuasiGeodesic {
  StiefelPoint s0;
  SkewMatrix x;
  SkewMatrix omega;
};

struct QuasiGeodesicSample {
  StiefelPoint point;
  Matrix velocity;
  Matrix acceleration;
};

/// R_S(V) = e^X S e^Omega with (X, Omega) the decomposition of V.
StiefelPoint retraction(const StiefelPoint& s, const TangentVector& v);

/// The quasi-geodesic through S with initial velocity V.
QuasiGeodesic quasi_geodesic(const StiefelPoint& s, const TangentVector& v);

/// Point, velocity and acceleration of the curve at t, all in closed form.
QuasiGeodesicSample quasi_geodesic_eval(const QuasiGeodesic& g, double t);

/// Quasi-geodesic with beta(0) = S0 and beta(1) = S1:
///   X = 1/2 log((I - 2 S1 S1^T)(I - 2 S0 S0^T)),  Omega = log(S0^T e^{-X} S1).
///
/// Throws PrincipalLogUndefined when either logarithm does not exist (the
/// endpoints are too far apart); no subdivision is attempted.
QuasiGeodesic connect(const StiefelPoint& s0, const StiefelPoint& s1);

/// Generators of connect() on raw matrices; shared with the de Casteljau
/// evaluator which works on intermediate products.
struct Generators {
  Matrix x;
  Matrix omega;
};
Generators connect_generators(const Matrix& s0, const Matrix& s1);

}  // namespace stiefel
