#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "stiefel/charts.hpp"
#include "stiefel/hamiltonian.hpp"
#include "stiefel/trajectory.hpp"

namespace stiefel {

/// Discretization maps of the Euclidean chart: initial point (q, q + v) and
/// mid-point (q - v/2, q + v/2).
enum class DiscretizationScheme { InitialPoint, MidPoint };

std::string_view to_string(DiscretizationScheme s);

inline constexpr double kNewtonTol = 1e-12;
inline constexpr int kNewtonMaxIterations = 50;
inline constexpr int kMaxHalvings = 30;
inline constexpr double kShootTol = 1e-8;
inline constexpr int kShootMaxIterations = 100;
inline constexpr double kShootFdStep = 1e-6;
inline constexpr double kJetFdStep = 1e-6;

/// Base point and displacement recovered from a pair of phase points by
/// inverting the cotangent lift of the discretization map. Here x is the
/// full configuration coordinate (q, qdot) and p its momenta.
struct LiftedPoint {
  Vector base_x;
  Vector base_p;
  Vector disp_x;
  Vector disp_p;
};

LiftedPoint lift_relations(DiscretizationScheme scheme, const Vector& x0, const Vector& p0,
                           const Vector& x1, const Vector& p1);

struct StepResult {
  Vector z1;
  double residual = 0.0;
  int iterations = 0;
};

/// One step of the symplectic scheme: solves
///   displacement(z0, z1) = h X_H(base(z0, z1))
/// for z1 by damped Newton with the exact Jacobian of X_H.
///
/// Throws ChartOutOfBounds if z0 is outside the chart and NewtonDivergence
/// if the solve does not reach kNewtonTol (inf-norm) in kNewtonMaxIterations.
StepResult step(DiscretizationScheme scheme, const Hamiltonian& ham, double h, const Vector& z0);

ChartPhaseState step(DiscretizationScheme scheme, double h, const ChartPhaseState& s0);

/// N steps from z0; returns N + 1 phase points. Failures name the step index.
std::vector<Vector> integrate_phase(DiscretizationScheme scheme, const Hamiltonian& ham,
                                    double h, std::size_t steps, const Vector& z0);

/// Chart-level integration with embedded points attached.
TrajectoryRecord integrate_ivp(DiscretizationScheme scheme, Manifold m, double h,
                               std::size_t steps, const ChartPhaseState& s0);

/// Classical RK4 on z' = X_H(z); returns N + 1 phase points.
std::vector<Vector> rk4_phase(const Hamiltonian& ham, double h, std::size_t steps,
                              const Vector& z0);

/// RK4 reference trajectory with embedded points and the discrete jet
/// (q, qdot, qddot, q3) at every recorded time. Every `stride`-th state is
/// recorded, so the record holds steps / stride + 1 samples.
TrajectoryRecord rk4_reference(Manifold m, double h, std::size_t steps,
                               const ChartPhaseState& s0, std::size_t stride = 1);

/// (q, qdot, qddot, q3) of the flow through z, read off X_H and its
/// directional derivative along X_H.
Vector jet_of_state(Manifold m, const Vector& z);

/// Momenta (p_q, p_qdot) whose flow has second and third derivatives qddot, q3.
/// p_qdot is closed form; p_q comes from Newton on the jerk condition.
std::pair<Vector, Vector> momenta_from_jet(Manifold m, const Vector& q, const Vector& qdot,
                                           const Vector& qddot, const Vector& q3);

struct ShootingResult {
  TrajectoryRecord trajectory;
  /// Converged initial momenta (p_q, p_qdot), 2m entries.
  Vector momenta;
  int iterations = 0;
  double residual = 0.0;
};

/// Newton over the initial momenta so that N steps of the scheme land on
/// (qN_target, qdotN_target) within kShootTol. Jacobian by forward
/// differences with step kShootFdStep; zero momenta unless a guess is given.
///
/// Throws ShootingDivergence after kShootMaxIterations.
ShootingResult shoot_bvp(DiscretizationScheme scheme, Manifold m, double h, std::size_t steps,
                         const Vector& q0, const Vector& qdot0, const Vector& qN_target,
                         const Vector& qdotN_target,
                         const std::optional<Vector>& guess = std::nullopt);

}  // namespace stiefel
