#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "stiefel/autodiff.hpp"
#include "stiefel/matcore.hpp"

namespace stiefel {

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

/// Hamiltonian on a 2d-dimensional phase space z = (x, p), with x the
/// configuration-like half and p its conjugate momenta.
///
/// Built from a generic callable `f(std::span<const S>) -> S` that is
/// instantiated for double, Dual1 and Dual2; gradients, Hessians and
/// Hessian-vector products are exact forward-mode derivatives of `f`.
class Hamiltonian {
 public:
  using Admissible = std::function<void(const Vector&)>;

  template <class F>
  Hamiltonian(std::size_t dim, F f, Admissible admissible = {})
      : dim_(dim),
        f0_([f](std::span<const double> z) { return f(z); }),
        f1_([f](std::span<const Dual1> z) { return f(z); }),
        f2_([f](std::span<const Dual2> z) { return f(z); }),
        admissible_(std::move(admissible)) {}

  /// Phase-space dimension 2d.
  std::size_t dim() const { return dim_; }
  std::size_t half() const { return dim_ / 2; }

  double value(const Vector& z) const;
  Vector gradient(const Vector& z) const;
  Matrix hessian(const Vector& z) const;
  /// Hess(H)(z) * v.
  Vector hessian_vector(const Vector& z, const Vector& v) const;

  /// X_H = (dH/dp, -dH/dx).
  Vector vector_field(const Vector& z) const;
  /// D X_H = Jsym * Hess(H).
  Matrix vector_field_jacobian(const Vector& z) const;
  /// Directional derivative D X_H(z)[v].
  Vector vector_field_derivative(const Vector& z, const Vector& v) const;

  /// Throws ChartOutOfBounds if z leaves the domain of the chart.
  void check_admissible(const Vector& z) const {
    if (admissible_) admissible_(z);
  }

 private:
  void check_dim(const Vector& z) const;

  std::size_t dim_;
  std::function<double(std::span<const double>)> f0_;
  std::function<Dual1(std::span<const Dual1>)> f1_;
  std::function<Dual2(std::span<const Dual2>)> f2_;
  Admissible admissible_;
};

/// Applies the canonical symplectic matrix J = [[0, I], [-I, 0]] to v.
Vector apply_symplectic_j(const Vector& v);
/// The 2d x 2d canonical symplectic matrix.
Matrix symplectic_j(std::size_t dim);

}  // namespace stiefel
