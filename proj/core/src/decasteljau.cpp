#include "stiefel/decasteljau.hpp"

#include <string>

#include "stiefel/quasigeo.hpp"

namespace stiefel {

namespace {

Matrix decompose_x(const Matrix& s, const Matrix& v) {
  return v * s.transpose() - s * v.transpose() + 2.0 * s * v.transpose() * s * s.transpose();
}

Matrix reflector(const Matrix& s) {
  return Matrix::Identity(s.rows(), s.rows()) - 2.0 * s * s.transpose();
}

std::string at(double t) { return " at t=" + std::to_string(t); }

// Generators of the quasi-geodesic a -> b, with errors tagged by level.
Generators level(const Matrix& a, const Matrix& b, const char* x_name, const char* w_name,
                 double t) {
  Matrix x;
  try {
    x = 0.5 * logm_orthogonal(reflector(b) * reflector(a)).matrix();
  } catch (const PrincipalLogUndefined& e) {
    throw PrincipalLogUndefined(std::string(x_name) + at(t) + ": " + e.what());
  }
  Matrix w;
  try {
    w = logm_orthogonal(a.transpose() * expm(-x) * b).matrix();
  } catch (const PrincipalLogUndefined& e) {
    throw PrincipalLogUndefined(std::string(w_name) + at(t) + ": " + e.what());
  } catch (const NotOrthogonal& e) {
    throw NotOrthogonal(std::string(w_name) + at(t) + ": " + e.what());
  }
  return {std::move(x), std::move(w)};
}

}  // namespace

CubicCurve build_cubic(const CubicBoundaryData& b) {
  const Matrix& s0 = b.s0.matrix();
  const Matrix& s3 = b.s3.matrix();
  const Matrix& v0 = b.v0.matrix();
  const Matrix& v3 = b.v3.matrix();
  if (s0.rows() != s3.rows() || s0.cols() != s3.cols()) {
    throw DimensionMismatch("build_cubic: endpoints on different manifolds");
  }
  if ((b.v0.base().matrix() - s0).norm() > kOrthTol ||
      (b.v3.base().matrix() - s3).norm() > kOrthTol) {
    throw NotTangent("build_cubic: velocity attached to the wrong base point");
  }

  const SkewMatrix x0(decompose_x(s0, v0) / 3.0);
  const SkewMatrix omega0(s0.transpose() * v0 / 3.0);
  const SkewMatrix x2(-decompose_x(s3, v3) / 3.0);
  const SkewMatrix omega2(-s3.transpose() * v3 / 3.0);

  const StiefelPoint s1(expm_skew(x0) * s0 * expm_skew(omega0));
  const StiefelPoint s2(expm_skew(x2) * s3 * expm_skew(omega2));

  const Generators g = level(s1.matrix(), s2.matrix(), "X1", "Omega1", 0.0);
  return CubicCurve{b, x0, omega0, x2, omega2, s1, s2, SkewMatrix(g.x), SkewMatrix(g.omega)};
}

StiefelPoint eval_cubic(const CubicCurve& c, double t) {
  const Matrix& s0 = c.boundary.s0.matrix();

  // First level: points on the three quasi-geodesics S0->S1, S1->S2, S2->S3.
  const Matrix b01 = expm(t * c.x0.matrix()) * s0 * expm(t * c.omega0.matrix());
  const Matrix b12 = expm(t * c.x1.matrix()) * c.s1.matrix() * expm(t * c.omega1.matrix());
  const Matrix b23 = expm(-t * c.x2.matrix()) * c.s2.matrix() * expm(-t * c.omega2.matrix());

  const Generators g3 = level(b01, b12, "X3", "Omega3", t);
  const Generators g4 = level(b12, b23, "X4", "Omega4", t);

  const Matrix b012 = expm(t * g3.x) * b01 * expm(t * g3.omega);
  const Matrix b123 = expm(t * g4.x) * b12 * expm(t * g4.omega);

  const Generators g5 = level(b012, b123, "X5", "Omega5", t);
  return StiefelPoint(expm(t * g5.x) * b012 * expm(t * g5.omega));
}

TangentVector eval_cubic_velocity(const CubicCurve& c, double t) {
  constexpr double d = kCubicVelocityStep;
  auto f = [&](double tau) { return eval_cubic(c, tau).matrix(); };

  Matrix deriv;
  if (t - 2.0 * d < 0.0) {
    deriv = (-25.0 * f(t) + 48.0 * f(t + d) - 36.0 * f(t + 2 * d) + 16.0 * f(t + 3 * d) -
             3.0 * f(t + 4 * d)) /
            (12.0 * d);
  } else if (t + 2.0 * d > 1.0) {
    deriv = (25.0 * f(t) - 48.0 * f(t - d) + 36.0 * f(t - 2 * d) - 16.0 * f(t - 3 * d) +
             3.0 * f(t - 4 * d)) /
            (12.0 * d);
  } else {
    deriv = (f(t - 2 * d) - 8.0 * f(t - d) + 8.0 * f(t + d) - f(t + 2 * d)) / (12.0 * d);
  }
  StiefelPoint base = eval_cubic(c, t);
  Matrix v = project_to_tangent(base.matrix(), deriv);
  return TangentVector(std::move(base), v);
}

TrajectoryRecord sample_cubic_at(const CubicCurve& c, std::span<const double> times) {
  TrajectoryRecord rec;
  rec.method = "gcp";
  rec.times.assign(times.begin(), times.end());
  rec.points.reserve(times.size());
  for (double t : times) rec.points.push_back(eval_cubic(c, t).matrix());
  if (times.size() >= 2) {
    rec.steps = times.size() - 1;
    rec.h = times[1] - times[0];
  }
  return rec;
}

TrajectoryRecord sample_cubic(const CubicCurve& c, std::size_t n_samples) {
  if (n_samples < 2) throw DimensionMismatch("sample_cubic needs at least two samples");
  std::vector<double> times(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    times[j] = static_cast<double>(j) / static_cast<double>(n_samples - 1);
  }
  return sample_cubic_at(c, times);
}

}  // namespace stiefel
