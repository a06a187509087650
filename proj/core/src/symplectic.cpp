#include "stiefel/symplectic.hpp"

#include <cmath>
#include <string>

namespace stiefel {

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct Split {
  Vector x;
  Vector p;
};

Split split(const Vector& z) {
  const Eigen::Index d = z.size() / 2;
  return {z.head(d), z.tail(d)};
}

Vector join(const Vector& x, const Vector& p) {
  Vector z(x.size() + p.size());
  z << x, p;
  return z;
}

// displacement - h X_H(base); also returns the base point.
Vector step_residual(DiscretizationScheme scheme, const Hamiltonian& ham, double h,
                     const Vector& z0, const Vector& z1, Vector* base_out) {
  const Split a = split(z0);
  const Split b = split(z1);
  const LiftedPoint lp = lift_relations(scheme, a.x, a.p, b.x, b.p);
  Vector base = join(lp.base_x, lp.base_p);
  Vector r = join(lp.disp_x, lp.disp_p) - h * ham.vector_field(base);
  if (base_out) *base_out = std::move(base);
  return r;
}

// d base / d z1.
Matrix base_derivative(DiscretizationScheme scheme, Eigen::Index dim) {
  Matrix d = Matrix::Zero(dim, dim);
  if (scheme == DiscretizationScheme::MidPoint) {
    d.diagonal().setConstant(0.5);
  } else {
    d.bottomRightCorner(dim / 2, dim / 2).setIdentity();
  }
  return d;
}

// Residual at a trial point, or nullopt if the trial leaves the chart or
// produces non-finite values.
std::optional<Vector> try_residual(DiscretizationScheme scheme, const Hamiltonian& ham, double h,
                                   const Vector& z0, const Vector& z1) {
  try {
    ham.check_admissible(z1);
    Vector base;
    Vector r = step_residual(scheme, ham, h, z0, z1, &base);
    ham.check_admissible(base);
    if (!r.allFinite()) return std::nullopt;
    return r;
  } catch (const ChartOutOfBounds&) {
    return std::nullopt;
  }
}

std::string at_step(std::size_t k) { return "step " + std::to_string(k) + ": "; }

}  // namespace

std::string_view to_string(DiscretizationScheme s) {
  return s == DiscretizationScheme::InitialPoint ? "initial-point" : "midpoint";
}

LiftedPoint lift_relations(DiscretizationScheme scheme, const Vector& x0, const Vector& p0,
                           const Vector& x1, const Vector& p1) {
  if (x0.size() != p0.size() || x1.size() != x0.size() || p1.size() != p0.size()) {
    throw DimensionMismatch("lift_relations: phase components have different lengths");
  }
  if (scheme == DiscretizationScheme::InitialPoint) {
    return {x0, p1, x1 - x0, p1 - p0};
  }
  return {0.5 * (x0 + x1), 0.5 * (p0 + p1), x1 - x0, p1 - p0};
}

StepResult step(DiscretizationScheme scheme, const Hamiltonian& ham, double h, const Vector& z0) {
  if (!std::isfinite(h) || h == 0.0) throw NewtonDivergence("step size must be finite and nonzero");
  if (static_cast<std::size_t>(z0.size()) != ham.dim()) {
    throw DimensionMismatch("step: state dimension does not match the Hamiltonian");
  }
  ham.check_admissible(z0);

  const Eigen::Index dim = z0.size();
  const Matrix dbase = base_derivative(scheme, dim);
  const Matrix id = Matrix::Identity(dim, dim);

  Vector z1 = z0 + h * ham.vector_field(z0);
  std::optional<Vector> r = try_residual(scheme, ham, h, z0, z1);
  if (!r) {
    z1 = z0;
    r = try_residual(scheme, ham, h, z0, z1);
    if (!r) throw NewtonDivergence("step: no admissible starting guess");
  }
  double rnorm = inf_norm(*r);

  bool converged = false;
  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    if (rnorm <= kNewtonTol) {
      if (converged) return {z1, rnorm, it};
      converged = true;  // one more iteration drives the residual to roundoff
    }
    Vector base;
    step_residual(scheme, ham, h, z0, z1, &base);
    const Matrix jac = id - h * ham.vector_field_jacobian(base) * dbase;
    const Vector dz = jac.partialPivLu().solve(-*r);

    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings; ++k, lambda *= 0.5) {
      const Vector trial = z1 + lambda * dz;
      const std::optional<Vector> rt = try_residual(scheme, ham, h, z0, trial);
      if (rt && inf_norm(*rt) < rnorm) {
        z1 = trial;
        r = rt;
        rnorm = inf_norm(*rt);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (converged) return {z1, rnorm, it};
      throw NewtonDivergence("step: line search failed at residual " + std::to_string(rnorm));
    }
  }
  if (rnorm <= kNewtonTol) return {z1, rnorm, kNewtonMaxIterations};
  throw NewtonDivergence("step: no convergence after " + std::to_string(kNewtonMaxIterations) +
                         " iterations (residual " + std::to_string(rnorm) + ")");
}

ChartPhaseState step(DiscretizationScheme scheme, double h, const ChartPhaseState& s0) {
  check_chart_state(s0);
  return ChartPhaseState::unpack(
      s0.manifold, step(scheme, chart_hamiltonian(s0.manifold), h, s0.pack()).z1);
}

std::vector<Vector> integrate_phase(DiscretizationScheme scheme, const Hamiltonian& ham,
                                    double h, std::size_t steps, const Vector& z0) {
  std::vector<Vector> out;
  out.reserve(steps + 1);
  out.push_back(z0);
  for (std::size_t k = 0; k < steps; ++k) {
    try {
      out.push_back(step(scheme, ham, h, out.back()).z1);
    } catch (const NewtonDivergence& e) {
      throw NewtonDivergence(at_step(k) + e.what());
    } catch (const ChartOutOfBounds& e) {
      throw ChartOutOfBounds(at_step(k) + e.what());
    }
  }
  return out;
}

namespace {

TrajectoryRecord record_from_states(Manifold m, std::string method, double h,
                                    std::vector<Vector> states) {
  TrajectoryRecord rec;
  rec.method = std::move(method);
  rec.h = h;
  rec.steps = states.empty() ? 0 : states.size() - 1;
  const int dm = chart_dim(m);
  rec.times.reserve(states.size());
  rec.points.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    rec.times.push_back(static_cast<double>(k) * h);
    rec.points.push_back(
        chart_embed(m, std::span<const double>(states[k].data(), static_cast<std::size_t>(dm)))
            .matrix());
  }
  rec.states = std::move(states);
  return rec;
}

}  // namespace

TrajectoryRecord integrate_ivp(DiscretizationScheme scheme, Manifold m, double h,
                               std::size_t steps, const ChartPhaseState& s0) {
  check_chart_state(s0);
  return record_from_states(m, std::string(to_string(scheme)), h,
                            integrate_phase(scheme, chart_hamiltonian(m), h, steps, s0.pack()));
}

std::vector<Vector> rk4_phase(const Hamiltonian& ham, double h, std::size_t steps,
                              const Vector& z0) {
  std::vector<Vector> out;
  out.reserve(steps + 1);
  out.push_back(z0);
  Vector z = z0;
  for (std::size_t k = 0; k < steps; ++k) {
    const Vector k1 = ham.vector_field(z);
    const Vector k2 = ham.vector_field(z + 0.5 * h * k1);
    const Vector k3 = ham.vector_field(z + 0.5 * h * k2);
    const Vector k4 = ham.vector_field(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!z.allFinite()) throw NonFinite(at_step(k) + "RK4 state is not finite");
    try {
      ham.check_admissible(z);
    } catch (const ChartOutOfBounds& e) {
      throw ChartOutOfBounds(at_step(k) + e.what());
    }
    out.push_back(z);
  }
  return out;
}

Vector jet_of_state(Manifold m, const Vector& z) {
  const Hamiltonian& ham = chart_hamiltonian(m);
  const Eigen::Index d = chart_dim(m);
  const Vector field = ham.vector_field(z);
  const Vector dfield = ham.vector_field_derivative(z, field);
  Vector jet(4 * d);
  jet << z.segment(0, d), field.segment(0, d), field.segment(d, d), dfield.segment(d, d);
  return jet;
}

TrajectoryRecord rk4_reference(Manifold m, double h, std::size_t steps,
                               const ChartPhaseState& s0, std::size_t stride) {
  check_chart_state(s0);
  if (stride == 0 || steps % stride != 0) {
    throw DimensionMismatch("rk4_reference: stride must divide the number of steps");
  }
  std::vector<Vector> all = rk4_phase(chart_hamiltonian(m), h, steps, s0.pack());
  std::vector<Vector> kept;
  kept.reserve(steps / stride + 1);
  for (std::size_t k = 0; k < all.size(); k += stride) kept.push_back(std::move(all[k]));

  TrajectoryRecord rec = record_from_states(m, "rk4", h * static_cast<double>(stride),
                                            std::move(kept));
  rec.jets.reserve(rec.states.size());
  for (const Vector& z : rec.states) rec.jets.push_back(jet_of_state(m, z));
  return rec;
}

std::pair<Vector, Vector> momenta_from_jet(Manifold m, const Vector& q, const Vector& qdot,
                                           const Vector& qddot, const Vector& q3) {
  const Eigen::Index d = chart_dim(m);
  if (q.size() != d || qdot.size() != d || qddot.size() != d || q3.size() != d) {
    throw DimensionMismatch("momenta_from_jet: jet components must have length " +
                            std::to_string(d));
  }
  check_chart_point(m, std::span<const double>(q.data(), static_cast<std::size_t>(d)));

  // qddot = geodesic acceleration + g^{-1} p_qdot.
  Vector p_qdot(d);
  const double th = q[0];
  const double s = std::sin(th);
  const double c = std::cos(th);
  if (m == Manifold::Sphere) {
    const double dth = qdot[0], dph = qdot[1];
    p_qdot[0] = qddot[0] - 0.5 * dph * dph * std::sin(2.0 * th);
    p_qdot[1] = qddot[1] * s * s + dph * dth * std::sin(2.0 * th);
  } else {
    const double dth = qdot[0], dph = qdot[1], dps = qdot[2];
    Vector geodesic(3);
    geodesic << -s * dph * dps, dth * (dps - dph * c) / s, dth * (dph - dps * c) / s;
    Matrix metric(3, 3);
    metric << 1.0, 0.0, 0.0, 0.0, 1.0, c, 0.0, c, 1.0;
    p_qdot = metric * (qddot - geodesic);
  }

  auto jerk_residual = [&](const Vector& p_q) {
    Vector z(4 * d);
    z << q, qdot, p_q, p_qdot;
    return Vector(jet_of_state(m, z).segment(3 * d, d) - q3);
  };

  // The jerk is affine in p_q, so Newton terminates in one or two iterations.
  Vector p_q = Vector::Zero(d);
  Vector r = jerk_residual(p_q);
  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    if (inf_norm(r) <= kNewtonTol) return {p_q, p_qdot};
    Matrix jac(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector pp = p_q;
      pp[j] += kJetFdStep;
      jac.col(j) = (jerk_residual(pp) - r) / kJetFdStep;
    }
    const Vector next = p_q + jac.partialPivLu().solve(-r);
    const Vector rn = jerk_residual(next);
    if (inf_norm(rn) >= inf_norm(r)) break;
    p_q = next;
    r = rn;
  }
  if (inf_norm(r) <= 1e-10) return {p_q, p_qdot};
  throw NewtonDivergence("momenta_from_jet: jerk condition not met (residual " +
                         std::to_string(inf_norm(r)) + ")");
}

ShootingResult shoot_bvp(DiscretizationScheme scheme, Manifold m, double h, std::size_t steps,
                         const Vector& q0, const Vector& qdot0, const Vector& qN_target,
                         const Vector& qdotN_target, const std::optional<Vector>& guess) {
  const Eigen::Index d = chart_dim(m);
  if (q0.size() != d || qdot0.size() != d || qN_target.size() != d || qdotN_target.size() != d) {
    throw DimensionMismatch("shoot_bvp: boundary data must have length " + std::to_string(d));
  }
  if (guess && guess->size() != 2 * d) {
    throw DimensionMismatch("shoot_bvp: momentum guess must have length " +
                            std::to_string(2 * d));
  }
  check_chart_point(m, std::span<const double>(q0.data(), static_cast<std::size_t>(d)));
  const Hamiltonian& ham = chart_hamiltonian(m);

  Vector target(2 * d);
  target << qN_target, qdotN_target;

  auto start = [&](const Vector& momenta) {
    Vector z(4 * d);
    z << q0, qdot0, momenta;
    return z;
  };
  auto terminal = [&](const Vector& momenta) -> std::optional<Vector> {
    try {
      const std::vector<Vector> traj = integrate_phase(scheme, ham, h, steps, start(momenta));
      return Vector(traj.back().head(2 * d) - target);
    } catch (const NewtonDivergence&) {
      return std::nullopt;
    } catch (const ChartOutOfBounds&) {
      return std::nullopt;
    }
  };

  Vector u = guess ? *guess : Vector::Zero(2 * d);
  std::optional<Vector> f = terminal(u);
  if (!f) throw ShootingDivergence("shoot_bvp: integration from the initial guess failed");
  double fnorm = inf_norm(*f);

  int it = 0;
  for (; it < kShootMaxIterations && fnorm > kShootTol; ++it) {
    Matrix jac(2 * d, 2 * d);
    for (Eigen::Index j = 0; j < 2 * d; ++j) {
      Vector up = u;
      up[j] += kShootFdStep;
      const std::optional<Vector> fp = terminal(up);
      if (!fp) throw ShootingDivergence("shoot_bvp: Jacobian probe left the chart");
      jac.col(j) = (*fp - *f) / kShootFdStep;
    }
    const Vector du = jac.partialPivLu().solve(-*f);
    if (!du.allFinite()) throw ShootingDivergence("shoot_bvp: singular shooting Jacobian");

    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings; ++k, lambda *= 0.5) {
      const Vector trial = u + lambda * du;
      const std::optional<Vector> ft = terminal(trial);
      if (ft && inf_norm(*ft) < fnorm) {
        u = trial;
        f = ft;
        fnorm = inf_norm(*ft);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ShootingDivergence("shoot_bvp: line search failed at residual " +
                               std::to_string(fnorm));
    }
  }
  if (fnorm > kShootTol) {
    throw ShootingDivergence("shoot_bvp: residual " + std::to_string(fnorm) + " after " +
                             std::to_string(kShootMaxIterations) + " iterations");
  }

  ChartPhaseState s0 = ChartPhaseState::unpack(m, start(u));
  ShootingResult out{integrate_ivp(scheme, m, h, steps, s0), u, it, fnorm};
  return out;
}

}  // namespace stiefel
