#pragma once

#include <array>
#include <span>
#include <string_view>

#include "stiefel/autodiff.hpp"
#include "stiefel/hamiltonian.hpp"
#include "stiefel/matcore.hpp"

namespace stiefel {

/// The two chart-backed manifolds: St(3,1) = S^2 and St(3,2).
enum class Manifold { Sphere, St32 };

std::string_view to_string(Manifold m);
/// Parses "sphere" / "st32"; throws ConfigError otherwise.
Manifold parse_manifold(std::string_view name);

/// Number of chart coordinates m (2 for the sphere, 3 for St(3,2)).
inline int chart_dim(Manifold m) { return m == Manifold::Sphere ? 2 : 3; }
/// Number of columns k of the embedded Stiefel matrix.
inline int stiefel_k(Manifold m) { return m == Manifold::Sphere ? 1 : 2; }

/// Margin kept from the open boundaries of every chart interval.
inline constexpr double kChartEps = 1e-6;

struct SphereChartPoint {
  double theta;
  double phi;
};

struct St32ChartPoint {
  double theta;
  double phi;
  double psi;
};

/// Point of T*(TQ) in chart coordinates: (q, qdot, p_q, p_qdot), each of
/// length m. pack() yields the phase vector used by the integrators, with
/// x = (q, qdot) first and its momenta p = (p_q, p_qdot) second.
struct ChartPhaseState {
  Manifold manifold = Manifold::Sphere;
  Vector q;
  Vector qdot;
  Vector p_q;
  Vector p_qdot;

  Vector pack() const;
  static ChartPhaseState unpack(Manifold m, const Vector& z);
};

/// Throws ChartOutOfBounds when q is outside the chart (with kChartEps margin)
/// or, for St(3,2), within kChartEps of theta = pi/2.
void check_chart_point(Manifold m, std::span<const double> q);
void check_chart_state(const ChartPhaseState& s);

/// (cos phi sin theta, sin phi sin theta, cos theta)^T.
StiefelPoint sphere_embed(const SphereChartPoint& p);
/// The 3 x 2 frame A(theta, phi, psi); first column is sphere_embed(theta, phi).
StiefelPoint st32_embed(const St32ChartPoint& p);
/// Dispatches on the manifold; q has chart_dim(m) entries.
StiefelPoint chart_embed(Manifold m, std::span<const double> q);

/// V = (d embed / dq) qdot, a tangent vector at embed(q).
TangentVector chart_pushforward(Manifold m, std::span<const double> q,
                                std::span<const double> qdot);

/// Embedding entries in column-major order, generic in the scalar type so the
/// chart Jacobian comes out of forward-mode differentiation.
template <class T>
std::array<T, 3> sphere_embed_entries(const T& theta, const T& phi) {
  using std::cos, std::sin;
  return {cos(phi) * sin(theta), sin(phi) * sin(theta), cos(theta)};
}

template <class T>
std::array<T, 6> st32_embed_entries(const T& theta, const T& phi, const T& psi) {
  using std::cos, std::sin;
  return {cos(phi) * sin(theta),
          sin(phi) * sin(theta),
          cos(theta),
          -sin(phi) * sin(psi) + cos(phi) * cos(psi) * cos(theta),
          sin(phi) * cos(psi) * cos(theta) + sin(psi) * cos(phi),
          -sin(theta) * cos(psi)};
}

/// Cubic-polynomial Hamiltonian on T*(TS^2).
/// z = (theta, phi, theta', phi', p_theta, p_phi, p_theta', p_phi').
template <class T>
T sphere_hamiltonian(std::span<const T> z) {
  using std::sin;
  const T& th = z[0];
  const T& dth = z[2];
  const T& dph = z[3];
  const T& p_th = z[4];
  const T& p_ph = z[5];
  const T& p_dth = z[6];
  const T& p_dph = z[7];
  const T s = sin(th);
  return 0.5 * dph * dph * p_dth * sin(2.0 * th) + dph * p_ph + dth * p_th + 0.5 * p_dth * p_dth +
         (-dph * dth * p_dph * sin(2.0 * th) + 0.5 * p_dph * p_dph) / (s * s);
}

/// Cubic-polynomial Hamiltonian on T*(T St(3,2)), transcribed term by term.
/// z = (theta, phi, psi, theta', phi', psi', p_theta, p_phi, p_psi,
///      p_theta', p_phi', p_psi').
template <class T>
T st32_hamiltonian(std::span<const T> z) {
  using std::cos, std::sin, std::tan;
  const T& th = z[0];
  const T& dth = z[3];
  const T& dph = z[4];
  const T& dps = z[5];
  const T& p_th = z[6];
  const T& p_ph = z[7];
  const T& p_ps = z[8];
  const T& p_dth = z[9];
  const T& p_dph = z[10];
  const T& p_dps = z[11];

  const T s = sin(th);
  const T c = cos(th);
  const T s2 = sin(2.0 * th);
  const T c2 = cos(2.0 * th);
  const T s4 = ipow(s, 4);
  const T weight = ipow(s, 6) * ipow(tan(th), 2);

  // (1 - cos 2theta)^3 multiplies the whole bracket over (cos 2theta + 1).
  const T bracket = -0.125 * dph * dth * p_dph * s2 + 0.25 * dph * dth * p_dps * s +
                    0.25 * dps * dth * p_dph * s - 0.125 * dps * dth * p_dps * s2 +
                    0.25 * p_dph * p_dph - 0.5 * p_dph * p_dps * c + 0.25 * p_dps * p_dps;
  const T first = ipow(1.0 - c2, 3) * bracket / (c2 + 1.0);

  const T a = -p_dph + p_dps / c;
  const T b = -p_dph / c + p_dps;
  const T second = -0.5 * a * a * s4 - 0.5 * b * b * s4 +
                   (p_dph * p_dph - p_dph * p_dps * c - p_dph * p_dps / c + p_dps * p_dps) * s4;

  const T third = (dph * p_ph + dps * p_ps + dth * p_th - 0.5 * p_dth * p_dth -
                   p_dth * (dph * dps * s - p_dth)) *
                  weight;

  return (first + second + third) / weight;
}

/// H evaluated at a chart state. Throws ChartOutOfBounds or NonFinite.
double hamiltonian(const ChartPhaseState& s);

/// Exact partial derivatives in pack() order:
/// (dH/dq, dH/dqdot, dH/dp_q, dH/dp_qdot).
Vector hamiltonian_gradient(const ChartPhaseState& s);

/// X_H = (dH/dp_q, dH/dp_qdot, -dH/dq, -dH/dqdot), i.e. the time derivative
/// of (q, qdot, p_q, p_qdot).
Vector hamiltonian_vector_field(const ChartPhaseState& s);

/// Type-erased Hamiltonian of the manifold with its chart-domain guard.
const Hamiltonian& chart_hamiltonian(Manifold m);

}  // namespace stiefel
