#include "stiefel/quasigeo.hpp"

namespace stiefel {

StiefelPoint retraction(const StiefelPoint& s, const TangentVector& v) {
  const TangentDecomposition d = tangent_decompose(s, v);
  return StiefelPoint(expm_skew(d.x) * s.matrix() * expm_skew(d.omega));
}

QuasiGeodesic quasi_geodesic(const StiefelPoint& s, const TangentVector& v) {
  TangentDecomposition d = tangent_decompose(s, v);
  return {s, std::move(d.x), std::move(d.omega)};
}

QuasiGeodesicSample quasi_geodesic_eval(const QuasiGeodesic& g, double t) {
  const Matrix& s = g.s0.matrix();
  const Matrix& x = g.x.matrix();
  const Matrix& w = g.omega.matrix();
  const Matrix ex = expm(t * x);
  const Matrix ew = expm(t * w);
  const Matrix xs = x * s;
  const Matrix sw = s * w;
  return {StiefelPoint(ex * s * ew), ex * (xs + sw) * ew,
          ex * (x * xs + 2.0 * xs * w + sw * w) * ew};
}

Generators connect_generators(const Matrix& s0, const Matrix& s1) {
  const Eigen::Index n = s0.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix reflect0 = id - 2.0 * s0 * s0.transpose();
  const Matrix reflect1 = id - 2.0 * s1 * s1.transpose();
  Matrix x = 0.5 * logm_orthogonal(reflect1 * reflect0).matrix();
  Matrix omega = logm_orthogonal(s0.transpose() * expm(-x) * s1).matrix();
  return {std::move(x), std::move(omega)};
}

QuasiGeodesic connect(const StiefelPoint& s0, const StiefelPoint& s1) {
  if (s0.n() != s1.n() || s0.k() != s1.k()) {
    throw DimensionMismatch("connect: endpoints live on different Stiefel manifolds");
  }
  Generators g = connect_generators(s0.matrix(), s1.matrix());
  return {s0, SkewMatrix(g.x), SkewMatrix(g.omega)};
}

}  // namespace stiefel
