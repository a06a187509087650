#pragma once

#include <Eigen/Dense>

#include "stiefel/errors.hpp"

namespace stiefel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Orthonormality / skewness / tangency tolerance (Frobenius norm).
inline constexpr double kOrthTol = 1e-10;
// Distance of an eigenvalue from -1 below which the principal log is refused.
inline constexpr double kLogEps = 1e-8;
// Orthogonality slack accepted by logm_orthogonal.
inline constexpr double kLogOrthTol = 1e-8;

/// Real m x m matrix with A + A^T = 0. The stored value is exactly skew.
class SkewMatrix {
 public:
  SkewMatrix() = default;
  /// Throws NotSkew if ||A + A^T||_F > kOrthTol (or A is not square).
  explicit SkewMatrix(const Matrix& a);

  static SkewMatrix zero(Eigen::Index m);

  const Matrix& matrix() const { return a_; }
  Eigen::Index size() const { return a_.rows(); }

  SkewMatrix operator*(double s) const;
  SkewMatrix operator-() const;

 private:
  Matrix a_;
};

class GrassmannProjector;

/// Point of St(n,k): an n x k matrix with orthonormal columns.
class StiefelPoint {
 public:
  StiefelPoint() = default;
  /// Throws NotOrthogonal if ||S^T S - I_k||_F > kOrthTol or k > n.
  explicit StiefelPoint(const Matrix& s);

  const Matrix& matrix() const { return s_; }
  Eigen::Index n() const { return s_.rows(); }
  Eigen::Index k() const { return s_.cols(); }

  GrassmannProjector projector() const;
  /// I_n - 2 S S^T, a symmetric involution.
  Matrix reflector() const;

 private:
  Matrix s_;
};

/// Rank-k orthogonal projector P = P^T = P^2.
class GrassmannProjector {
 public:
  explicit GrassmannProjector(const Matrix& p);

  const Matrix& matrix() const { return p_; }
  Eigen::Index rank() const;

 private:
  Matrix p_;
};

/// Tangent vector V at a base point, V^T S + S^T V = 0.
class TangentVector {
 public:
  TangentVector() = default;
  /// Throws NotTangent if the membership residual exceeds kOrthTol and
  /// DimensionMismatch if shapes disagree.
  TangentVector(StiefelPoint base, const Matrix& v);

  static TangentVector zero(const StiefelPoint& base);

  const Matrix& matrix() const { return v_; }
  const StiefelPoint& base() const { return base_; }

 private:
  StiefelPoint base_;
  Matrix v_;
};

/// The (X, Omega) parametrization V = X S + S Omega, X in so_P(n).
struct TangentDecomposition {
  SkewMatrix x;
  SkewMatrix omega;
};

/// Frobenius norm of S^T S - I.
double orthonormality_defect(const Matrix& s);

/// True when ||S^T S - I||_F <= tol.
bool is_orthonormal(const Matrix& s, double tol = kOrthTol);

/// Exponential of a square matrix by scaling and squaring of a Taylor
/// polynomial. Accurate to a few ulps for the small matrices used here.
Matrix expm(const Matrix& a);

/// e^A for skew A: orthogonal with determinant +1.
Matrix expm_skew(const SkewMatrix& a);

/// Principal logarithm of a rotation via its real Schur form.
///
/// Throws NotOrthogonal if ||Q^T Q - I||_F > kLogOrthTol and
/// PrincipalLogUndefined if some eigenvalue lies within kLogEps of -1
/// (this includes every orthogonal matrix with det = -1).
SkewMatrix logm_orthogonal(const Matrix& q);

/// X = V S^T - S V^T + 2 S V^T S S^T,  Omega = S^T V.
TangentDecomposition tangent_decompose(const StiefelPoint& s, const TangentVector& v);

/// V = X S + S Omega.
TangentVector tangent_compose(const StiefelPoint& s, const TangentDecomposition& d);

/// tr(V1^T (I - S S^T / 2) V2).
double canonical_inner(const StiefelPoint& s, const TangentVector& v1, const TangentVector& v2);

/// Projection of an arbitrary n x k matrix onto T_S St(n,k).
Matrix project_to_tangent(const Matrix& s, const Matrix& v);

/// Checks X P + P X = X for P = S S^T.
bool in_so_p(const Matrix& x, const Matrix& s, double tol = kOrthTol);

}  // namespace stiefel
