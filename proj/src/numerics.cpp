#include "colligate/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace colligate {

namespace {

// Residual norm below which a padding candidate counts as dependent.
constexpr double kPaddingThreshold = 1e-6;

void normalize_phase(Eigen::Ref<ComplexVector> v) {
  Eigen::Index k = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // strict comparison keeps the first of equal-magnitude entries
    if (std::abs(v(i)) > best + 1e-12) {
      best = std::abs(v(i));
      k = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(k)) / best;
}

}  // namespace

Tolerance::Tolerance(double a) : atol(a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw InvariantError("tolerance must be a finite nonnegative number, got " +
                         std::to_string(a));
  }
}

void require_finite(const ComplexMatrix& M, const char* what) {
  if (!M.allFinite()) {
    throw InvariantError(std::string(what) + ": matrix has a non-finite entry");
  }
}

double max_abs(const ComplexMatrix& M) {
  if (M.size() == 0) return 0.0;
  return M.cwiseAbs().maxCoeff();
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix hermitian_part(const ComplexMatrix& M) {
  return (M + M.adjoint()) / 2.0;
}

Eigen::VectorXd singular_values(const ComplexMatrix& M) {
  if (M.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return svd.singularValues();
}

double smallest_singular_value(const ComplexMatrix& M) {
  if (M.cols() == 0) return std::numeric_limits<double>::infinity();
  if (M.rows() < M.cols()) return 0.0;
  return singular_values(M).minCoeff();
}

Eigen::Index numerical_rank(const ComplexMatrix& M, Tolerance tol) {
  if (M.size() == 0) return 0;
  const Eigen::VectorXd s = singular_values(M);
  const double cutoff = tol.atol * std::max(s(0), 1.0);
  return (s.array() > cutoff).count();
}

ComplexMatrix range_basis(const ComplexMatrix& M, Tolerance tol) {
  if (M.size() == 0) return ComplexMatrix(M.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol.atol * std::max(s(0), 1.0);
  const Eigen::Index r = (s.array() > cutoff).count();
  ComplexMatrix Q = svd.matrixU().leftCols(r);
  for (Eigen::Index c = 0; c < r; ++c) normalize_phase(Q.col(c));
  return Q;
}

bool is_isometry(const ComplexMatrix& M, Tolerance tol) {
  if (M.rows() < M.cols()) {
    throw DimensionError("is_isometry: " + std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()) + " has fewer rows than columns");
  }
  return max_abs(M.adjoint() * M - identity(M.cols())) <= tol.atol;
}

double min_hermitian_eigenvalue(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("min_hermitian_eigenvalue: matrix not square");
  if (M.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(M), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool is_psd(const ComplexMatrix& M, Tolerance tol) {
  if (M.rows() != M.cols()) {
    throw DimensionError("is_psd: " + std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()) + " is not square");
  }
  if (max_abs(M - M.adjoint()) > tol.atol) return false;
  return min_hermitian_eigenvalue(M) >= -tol.atol;
}

IsometricFactor isometric_factor(const ComplexMatrix& D2, Eigen::Index target_dim,
                                 const std::optional<ComplexMatrix>& orthogonal_to,
                                 Tolerance tol) {
  const Eigen::Index n = D2.rows();
  if (orthogonal_to && orthogonal_to->rows() != n) {
    throw DimensionError("isometric_factor: orthogonal_to has " +
                         std::to_string(orthogonal_to->rows()) + " rows, D2 has " +
                         std::to_string(n));
  }
  const ComplexMatrix Q = range_basis(D2, tol);
  if (Q.cols() > target_dim) {
    throw RankError("isometric_factor: rank of D2 is " + std::to_string(Q.cols()) +
                    " > target dimension " + std::to_string(target_dim));
  }

  ComplexMatrix avoid(n, 0);
  if (orthogonal_to) {
    const double overlap = max_abs(Q.adjoint() * *orthogonal_to);
    if (overlap > tol.atol) {
      throw OrthogonalityError("isometric_factor: range(D2) is not orthogonal to range(D1), |Q* D1| = " +
                               std::to_string(overlap));
    }
    avoid = range_basis(*orthogonal_to, tol);
  }

  // Working basis: avoid columns first, then the accepted L columns.
  ComplexMatrix basis(n, avoid.cols() + target_dim);
  basis.leftCols(avoid.cols()) = avoid;
  basis.middleCols(avoid.cols(), Q.cols()) = Q;
  Eigen::Index filled = avoid.cols() + Q.cols();
  const Eigen::Index wanted = avoid.cols() + target_dim;

  for (Eigen::Index k = 0; k < n && filled < wanted; ++k) {
    ComplexVector v = ComplexVector::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      const auto B = basis.leftCols(filled);
      v -= B * (B.adjoint() * v);
    }
    const double nrm = v.norm();
    if (nrm > kPaddingThreshold) basis.col(filled++) = v / nrm;
  }
  if (filled < wanted) {
    throw PaddingError("isometric_factor: complement has dimension " +
                       std::to_string(filled - avoid.cols() - Q.cols()) + ", need " +
                       std::to_string(target_dim - Q.cols()) + " padding columns");
  }

  IsometricFactor out;
  out.L = basis.middleCols(avoid.cols(), target_dim);
  out.Y = out.L.adjoint() * D2;
  return out;
}

bool injective_on_range(const ComplexMatrix& Mstar, const ComplexMatrix& R, Tolerance tol) {
  if (Mstar.cols() != R.rows()) {
    throw DimensionError("injective_on_range: operator has " + std::to_string(Mstar.cols()) +
                         " columns but range space has dimension " + std::to_string(R.rows()));
  }
  const ComplexMatrix Q = range_basis(R, tol);
  if (Q.cols() == 0) return true;
  return smallest_singular_value(Mstar * Q) > tol.atol;
}

ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  if (rows < cols || cols < 0) {
    throw DimensionError("random_isometry: need rows >= cols, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix G(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      G(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  // Fix the phase ambiguity of QR against the diagonal of R.
  const ComplexMatrix& R = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex r = R(j, j);
    if (std::abs(r) > 0.0) Q.col(j) *= r / std::abs(r);
  }
  return Q;
}

ComplexMatrix unitary_completion(const ComplexMatrix& Q) {
  const Eigen::Index n = Q.rows();
  const Eigen::Index k = Q.cols();
  if (k > n) throw DimensionError("unitary_completion: more columns than rows");
  if (k == 0) return identity(n);
  Eigen::HouseholderQR<ComplexMatrix> qr(Q);
  ComplexMatrix full = qr.householderQ() * identity(n);
  return full.rightCols(n - k);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("psd_sqrt: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(M));
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix& V = eig.eigenvectors();
  return V * root.cast<Complex>().asDiagonal() * V.adjoint();
}

ComplexMatrix right_solve(const ComplexMatrix& B, const ComplexMatrix& A) {
  if (A.rows() != A.cols() || B.cols() != A.rows()) {
    throw DimensionError("right_solve: incompatible shapes");
  }
  // X A = B  <=>  A* X* = B*
  return Eigen::PartialPivLU<ComplexMatrix>(A.adjoint()).solve(B.adjoint()).adjoint();
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& M, Tolerance tol) {
  if (M.size() == 0) return ComplexMatrix::Zero(M.cols(), M.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol.atol * std::max(s(0), 1.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) inv(k) = 1.0 / s(k);
  }
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

ComplexMatrix kron(const ComplexMatrix& X, const ComplexMatrix& Y) {
  ComplexMatrix K(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      K.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y;
    }
  }
  return K;
}

}  // namespace colligate
