#pragma once

#include <cmath>
#include <random>

#include "stiefel/matcore.hpp"

namespace stiefel::testing {

inline Matrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Haar-like random point of St(n,k) from the QR factor of a Gaussian matrix.
inline Matrix random_stiefel(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, n, k));
  return qr.householderQ() * Matrix::Identity(n, k);
}

// Random skew matrix with Frobenius norm `scale`.
inline Matrix random_skew(std::mt19937_64& rng, Eigen::Index m, double scale) {
  const Matrix g = gaussian(rng, m, m);
  Matrix a = g - g.transpose();
  if (a.norm() > 0) a *= scale / a.norm();
  return a;
}

// Random tangent vector at s with Frobenius norm `scale`.
inline Matrix random_tangent(std::mt19937_64& rng, const Matrix& s, double scale) {
  Matrix v = project_to_tangent(s, gaussian(rng, s.rows(), s.cols()));
  return v * (scale / v.norm());
}

inline double spectral_norm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

// sum_{i < terms} A^i / i!, independent of the library kernel.
inline Matrix taylor_exp(const Matrix& a, int terms = 30) {
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  Matrix term = result;
  for (int i = 1; i < terms; ++i) {
    term = term * a / static_cast<double>(i);
    result += term;
  }
  return result;
}

// z-plane rotation generator.
inline Matrix gz() {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 1) = -1.0;
  g(1, 0) = 1.0;
  return g;
}

inline Matrix unit(Eigen::Index n, Eigen::Index i) {
  Matrix e = Matrix::Zero(n, 1);
  e(i, 0) = 1.0;
  return e;
}

}  // namespace stiefel::testing
