#include "stiefel/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <utility>

namespace stiefel {

namespace {

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

SkewMatrix::SkewMatrix(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw NotSkew("skew matrix must be square, got " + shape(a));
  }
  if ((a + a.transpose()).norm() > kOrthTol) {
    throw NotSkew("matrix is not skew-symmetric");
  }
  a_ = 0.5 * (a - a.transpose());
}

SkewMatrix SkewMatrix::zero(Eigen::Index m) { return SkewMatrix(Matrix::Zero(m, m)); }

SkewMatrix SkewMatrix::operator*(double s) const {
  SkewMatrix r;
  r.a_ = s * a_;
  return r;
}

SkewMatrix SkewMatrix::operator-() const { return *this * -1.0; }

StiefelPoint::StiefelPoint(const Matrix& s) : s_(s) {
  if (s.cols() < 1 || s.rows() < s.cols()) {
    throw NotOrthogonal("Stiefel point needs 1 <= k <= n, got " + shape(s));
  }
  if (!is_orthonormal(s)) {
    throw NotOrthogonal("columns are not orthonormal (defect " +
                        std::to_string(orthonormality_defect(s)) + ")");
  }
}

GrassmannProjector StiefelPoint::projector() const {
  return GrassmannProjector(s_ * s_.transpose());
}

Matrix StiefelPoint::reflector() const {
  return Matrix::Identity(n(), n()) - 2.0 * s_ * s_.transpose();
}

GrassmannProjector::GrassmannProjector(const Matrix& p) : p_(p) {
  if (p.rows() != p.cols()) throw DimensionMismatch("projector must be square");
  if ((p - p.transpose()).norm() > kOrthTol || (p * p - p).norm() > kOrthTol) {
    throw NotOrthogonal("matrix is not an orthogonal projector");
  }
  const double tr = p.trace();
  if (std::abs(tr - std::round(tr)) > kOrthTol) {
    throw NotOrthogonal("projector trace is not an integer");
  }
}

Eigen::Index GrassmannProjector::rank() const {
  return static_cast<Eigen::Index>(std::lround(p_.trace()));
}

TangentVector::TangentVector(StiefelPoint base, const Matrix& v)
    : base_(std::move(base)), v_(v) {
  const Matrix& s = base_.matrix();
  if (v.rows() != s.rows() || v.cols() != s.cols()) {
    throw DimensionMismatch("tangent vector " + shape(v) + " at base " + shape(s));
  }
  const Matrix sym = v.transpose() * s + s.transpose() * v;
  if (sym.norm() > kOrthTol) {
    throw NotTangent("V^T S + S^T V = " + std::to_string(sym.norm()));
  }
}

TangentVector TangentVector::zero(const StiefelPoint& base) {
  return TangentVector(base, Matrix::Zero(base.n(), base.k()));
}

double orthonormality_defect(const Matrix& s) {
  return (s.transpose() * s - Matrix::Identity(s.cols(), s.cols())).norm();
}

bool is_orthonormal(const Matrix& s, double tol) { return orthonormality_defect(s) <= tol; }

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("expm of non-square " + shape(a));
  const Eigen::Index m = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  const Matrix b = a / std::ldexp(1.0, squarings);

  // ||b||_1 <= 1/4, so 18 terms leave a remainder below 1e-25.
  Matrix result = Matrix::Identity(m, m);
  Matrix term = Matrix::Identity(m, m);
  for (int i = 1; i <= 18; ++i) {
    term = term * b / static_cast<double>(i);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Matrix expm_skew(const SkewMatrix& a) { return expm(a.matrix()); }

SkewMatrix logm_orthogonal(const Matrix& q) {
  if (q.rows() != q.cols()) throw DimensionMismatch("logm of non-square " + shape(q));
  const Eigen::Index n = q.rows();
  if (orthonormality_defect(q) > kLogOrthTol) {
    throw NotOrthogonal("logm_orthogonal: Q^T Q deviates from I by " +
                        std::to_string(orthonormality_defect(q)));
  }

  Eigen::RealSchur<Matrix> schur(q);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();

  Matrix log_t = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i + 1, i) - t(i, i + 1));
      const double angle = std::atan2(s, c);
      if (2.0 * std::abs(std::cos(0.5 * angle)) < kLogEps) {
        throw PrincipalLogUndefined("eigenvalue pair at angle " + std::to_string(angle) +
                                    " is next to -1");
      }
      log_t(i, i + 1) = -angle;
      log_t(i + 1, i) = angle;
      i += 2;
    } else {
      if (t(i, i) < 0.0 || std::abs(t(i, i) + 1.0) < kLogEps) {
        throw PrincipalLogUndefined("real eigenvalue " + std::to_string(t(i, i)) +
                                    " has no real principal logarithm");
      }
      i += 1;
    }
  }
  const Matrix l = u * log_t * u.transpose();
  return SkewMatrix(0.5 * (l - l.transpose()));
}

TangentDecomposition tangent_decompose(const StiefelPoint& s, const TangentVector& v) {
  const Matrix& sm = s.matrix();
  const Matrix& vm = v.matrix();
  if (vm.rows() != sm.rows() || vm.cols() != sm.cols()) {
    throw DimensionMismatch("tangent_decompose: shapes differ");
  }
  if ((vm.transpose() * sm + sm.transpose() * vm).norm() > kOrthTol) {
    throw NotTangent("tangent_decompose: V is not tangent at S");
  }
  const Matrix x = vm * sm.transpose() - sm * vm.transpose() +
                   2.0 * sm * vm.transpose() * sm * sm.transpose();
  const Matrix omega = sm.transpose() * vm;
  return {SkewMatrix(x), SkewMatrix(omega)};
}

TangentVector tangent_compose(const StiefelPoint& s, const TangentDecomposition& d) {
  if (d.x.size() != s.n() || d.omega.size() != s.k()) {
    throw DimensionMismatch("tangent_compose: X must be n x n and Omega k x k");
  }
  return TangentVector(s, d.x.matrix() * s.matrix() + s.matrix() * d.omega.matrix());
}

double canonical_inner(const StiefelPoint& s, const TangentVector& v1, const TangentVector& v2) {
  const Matrix& sm = s.matrix();
  for (const TangentVector* v : {&v1, &v2}) {
    const Matrix& vm = v->matrix();
    if (vm.rows() != sm.rows() || vm.cols() != sm.cols()) {
      throw DimensionMismatch("canonical_inner: shapes differ");
    }
    if ((vm.transpose() * sm + sm.transpose() * vm).norm() > kOrthTol) {
      throw NotTangent("canonical_inner: argument is not tangent at S");
    }
  }
  const Matrix w = Matrix::Identity(s.n(), s.n()) - 0.5 * sm * sm.transpose();
  return (v1.matrix().transpose() * w * v2.matrix()).trace();
}

Matrix project_to_tangent(const Matrix& s, const Matrix& v) {
  const Matrix stv = s.transpose() * v;
  return v - s * (0.5 * (stv + stv.transpose()));
}

bool in_so_p(const Matrix& x, const Matrix& s, double tol) {
  const Matrix p = s * s.transpose();
  return (x * p + p * x - x).norm() <= tol;
}

}  // namespace stiefel
