#include "stiefel/charts.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace stiefel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_interval(const char* name, double v, double hi) {
  if (!std::isfinite(v) || v < kChartEps || v > hi - kChartEps) {
    throw ChartOutOfBounds(std::string(name) + " = " + std::to_string(v) +
                           " outside the chart interval (0, " + std::to_string(hi) + ")");
  }
}

template <std::size_t N>
Matrix to_matrix(const std::array<double, N>& e, Eigen::Index k) {
  Matrix m(3, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) m(i, j) = e[static_cast<std::size_t>(j * 3 + i)];
  return m;
}

}  // namespace

std::string_view to_string(Manifold m) { return m == Manifold::Sphere ? "sphere" : "st32"; }

Manifold parse_manifold(std::string_view name) {
  if (name == "sphere" || name == "st31") return Manifold::Sphere;
  if (name == "st32") return Manifold::St32;
  throw ConfigError("unknown manifold '" + std::string(name) + "' (expected sphere or st32)");
}

Vector ChartPhaseState::pack() const {
  const Eigen::Index m = q.size();
  if (qdot.size() != m || p_q.size() != m || p_qdot.size() != m || m != chart_dim(manifold)) {
    throw DimensionMismatch("chart state components must all have length " +
                            std::to_string(chart_dim(manifold)));
  }
  Vector z(4 * m);
  z << q, qdot, p_q, p_qdot;
  return z;
}

ChartPhaseState ChartPhaseState::unpack(Manifold mf, const Vector& z) {
  const Eigen::Index m = chart_dim(mf);
  if (z.size() != 4 * m) {
    throw DimensionMismatch("phase vector of length " + std::to_string(z.size()) + " for " +
                            std::string(to_string(mf)));
  }
  return {mf, z.segment(0, m), z.segment(m, m), z.segment(2 * m, m), z.segment(3 * m, m)};
}

void check_chart_point(Manifold m, std::span<const double> q) {
  if (static_cast<int>(q.size()) != chart_dim(m)) {
    throw DimensionMismatch("chart point needs " + std::to_string(chart_dim(m)) + " coordinates");
  }
  check_interval("theta", q[0], kPi);
  check_interval("phi", q[1], 2.0 * kPi);
  if (m == Manifold::St32) {
    check_interval("psi", q[2], 2.0 * kPi);
    if (std::abs(q[0] - 0.5 * kPi) <= kChartEps) {
      throw ChartOutOfBounds("theta = " + std::to_string(q[0]) +
                             " is inside the St(3,2) exclusion band around pi/2");
    }
  }
}

void check_chart_state(const ChartPhaseState& s) {
  const Vector z = s.pack();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i])) throw NonFinite("chart state has a non-finite entry");
  }
  check_chart_point(s.manifold, std::span<const double>(s.q.data(), s.q.size()));
}

StiefelPoint sphere_embed(const SphereChartPoint& p) {
  const std::array<double, 2> q{p.theta, p.phi};
  check_chart_point(Manifold::Sphere, q);
  return StiefelPoint(to_matrix(sphere_embed_entries(p.theta, p.phi), 1));
}

StiefelPoint st32_embed(const St32ChartPoint& p) {
  const std::array<double, 3> q{p.theta, p.phi, p.psi};
  check_chart_point(Manifold::St32, q);
  return StiefelPoint(to_matrix(st32_embed_entries(p.theta, p.phi, p.psi), 2));
}

StiefelPoint chart_embed(Manifold m, std::span<const double> q) {
  check_chart_point(m, q);
  if (m == Manifold::Sphere) return sphere_embed({q[0], q[1]});
  return st32_embed({q[0], q[1], q[2]});
}

TangentVector chart_pushforward(Manifold m, std::span<const double> q,
                                std::span<const double> qdot) {
  check_chart_point(m, q);
  if (qdot.size() != q.size()) throw DimensionMismatch("chart velocity has wrong length");
  // One forward-mode pass seeded with qdot gives the Jacobian-vector product.
  std::vector<Dual1> x(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) x[i] = Dual1(q[i], qdot[i]);
  Matrix v;
  if (m == Manifold::Sphere) {
    const auto e = sphere_embed_entries(x[0], x[1]);
    v.resize(3, 1);
    for (int i = 0; i < 3; ++i) v(i, 0) = e[static_cast<std::size_t>(i)].d;
  } else {
    const auto e = st32_embed_entries(x[0], x[1], x[2]);
    v.resize(3, 2);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 3; ++i) v(i, j) = e[static_cast<std::size_t>(j * 3 + i)].d;
  }
  return TangentVector(chart_embed(m, q), v);
}

const Hamiltonian& chart_hamiltonian(Manifold m) {
  static const Hamiltonian sphere(
      8, [](auto z) { return sphere_hamiltonian(z); },
      [](const Vector& z) {
        check_chart_point(Manifold::Sphere, std::span<const double>(z.data(), 2));
      });
  static const Hamiltonian st32(
      12, [](auto z) { return st32_hamiltonian(z); },
      [](const Vector& z) {
        check_chart_point(Manifold::St32, std::span<const double>(z.data(), 3));
      });
  return m == Manifold::Sphere ? sphere : st32;
}

double hamiltonian(const ChartPhaseState& s) {
  check_chart_state(s);
  const double h = chart_hamiltonian(s.manifold).value(s.pack());
  if (!std::isfinite(h)) throw NonFinite("Hamiltonian evaluated to a non-finite value");
  return h;
}

Vector hamiltonian_gradient(const ChartPhaseState& s) {
  check_chart_state(s);
  Vector g = chart_hamiltonian(s.manifold).gradient(s.pack());
  if (!g.allFinite()) throw NonFinite("Hamiltonian gradient is not finite");
  return g;
}

Vector hamiltonian_vector_field(const ChartPhaseState& s) {
  return apply_symplectic_j(hamiltonian_gradient(s));
}

}  // namespace stiefel
