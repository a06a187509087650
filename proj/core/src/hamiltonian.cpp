#include "stiefel/hamiltonian.hpp"

#include <string>

namespace stiefel {

void Hamiltonian::check_dim(const Vector& z) const {
  if (static_cast<std::size_t>(z.size()) != dim_) {
    throw DimensionMismatch("phase vector has dimension " + std::to_string(z.size()) +
                            ", Hamiltonian expects " + std::to_string(dim_));
  }
}

double Hamiltonian::value(const Vector& z) const {
  check_dim(z);
  return f0_(std::span<const double>(z.data(), dim_));
}

Vector Hamiltonian::gradient(const Vector& z) const {
  check_dim(z);
  std::vector<Dual1> arg(dim_);
  for (std::size_t k = 0; k < dim_; ++k) arg[k] = Dual1(z[k], 0.0);
  Vector g(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    arg[i].d = 1.0;
    g[i] = f1_(arg).d;
    arg[i].d = 0.0;
  }
  return g;
}

Matrix Hamiltonian::hessian(const Vector& z) const {
  check_dim(z);
  std::vector<Dual2> arg(dim_);
  for (std::size_t k = 0; k < dim_; ++k) arg[k] = Dual2(Dual1(z[k], 0.0), Dual1(0.0, 0.0));
  Matrix hess(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    arg[i].v.d = 1.0;
    for (std::size_t j = i; j < dim_; ++j) {
      arg[j].d.v = 1.0;
      const double hij = f2_(arg).d.d;
      arg[j].d.v = 0.0;
      hess(i, j) = hij;
      hess(j, i) = hij;
    }
    arg[i].v.d = 0.0;
  }
  return hess;
}

Vector Hamiltonian::hessian_vector(const Vector& z, const Vector& v) const {
  check_dim(z);
  check_dim(v);
  std::vector<Dual2> arg(dim_);
  for (std::size_t k = 0; k < dim_; ++k) arg[k] = Dual2(Dual1(z[k], 0.0), Dual1(v[k], 0.0));
  Vector hv(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    arg[i].v.d = 1.0;
    hv[i] = f2_(arg).d.d;
    arg[i].v.d = 0.0;
  }
  return hv;
}

Vector Hamiltonian::vector_field(const Vector& z) const { return apply_symplectic_j(gradient(z)); }

Matrix Hamiltonian::vector_field_jacobian(const Vector& z) const {
  return symplectic_j(dim_) * hessian(z);
}

Vector Hamiltonian::vector_field_derivative(const Vector& z, const Vector& v) const {
  return apply_symplectic_j(hessian_vector(z, v));
}

Vector apply_symplectic_j(const Vector& v) {
  const Eigen::Index d = v.size() / 2;
  Vector out(v.size());
  out.head(d) = v.tail(d);
  out.tail(d) = -v.head(d);
  return out;
}

Matrix symplectic_j(std::size_t dim) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim / 2);
  Matrix j = Matrix::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d).setIdentity();
  j.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return j;
}

}  // namespace stiefel
