#pragma once

// Dense complex linear algebra used by every other module: isometry and
// positivity predicates, numerical rank, range bases and the small
// factorizations the block conditions need.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>

#include "colligate/errors.hpp"

namespace colligate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Absolute tolerance shared by all comparisons.
struct Tolerance {
  double atol = 1e-9;

  constexpr Tolerance() = default;
  explicit Tolerance(double a);

  Tolerance scaled(double factor) const { return Tolerance(atol * factor); }
};

/// Throws InvariantError if any entry of M is NaN or infinite.
void require_finite(const ComplexMatrix& M, const char* what);

/// Largest absolute value over all entries; 0 for an empty matrix.
double max_abs(const ComplexMatrix& M);

ComplexMatrix identity(Eigen::Index n);

/// Hermitian part (M + M*)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& M);

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const ComplexMatrix& M);

/// Smallest singular value counting the "missing" ones of a wide/tall
/// matrix: a k x n matrix with n > k has smallest singular value 0 as a map
/// on C^n.
double smallest_singular_value(const ComplexMatrix& M);

/// Number of singular values above atol * max(sigma_max, 1).
Eigen::Index numerical_rank(const ComplexMatrix& M, Tolerance tol = {});

/// Orthonormal basis of range(M) at the numerical rank. Each column is
/// phase-normalized so its first largest-magnitude entry is real positive.
ComplexMatrix range_basis(const ComplexMatrix& M, Tolerance tol = {});

/// M*M = I within atol. Throws DimensionError when rows < cols.
bool is_isometry(const ComplexMatrix& M, Tolerance tol = {});

/// M = M* within atol and lambda_min((M+M*)/2) >= -atol. Throws
/// DimensionError for a non-square M.
bool is_psd(const ComplexMatrix& M, Tolerance tol = {});

/// Smallest eigenvalue of the Hermitian part.
double min_hermitian_eigenvalue(const ComplexMatrix& M);

struct IsometricFactor {
  ComplexMatrix L;  ///< h1 x target_dim, L*L = I
  ComplexMatrix Y;  ///< target_dim x h2, D2 = L Y
};

/// Factor D2 = L Y through an isometry L whose range contains range(D2) and
/// is orthogonal to range(orthogonal_to). The basis of range(D2) is padded
/// with standard basis vectors orthonormalized in index order.
///
/// Throws RankError if rank(D2) > target_dim, OrthogonalityError if range(D2)
/// meets range(orthogonal_to), and PaddingError if the orthogonal complement
/// is too small.
IsometricFactor isometric_factor(const ComplexMatrix& D2, Eigen::Index target_dim,
                                 const std::optional<ComplexMatrix>& orthogonal_to,
                                 Tolerance tol = {});

/// True iff Mstar is injective on range(R): sigma_min(Mstar Q) > atol for an
/// orthonormal basis Q of range(R). Vacuously true when R is numerically 0.
bool injective_on_range(const ComplexMatrix& Mstar, const ComplexMatrix& R,
                        Tolerance tol = {});

/// Deterministic rows x cols isometry from a seeded complex Gaussian matrix.
ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Columns spanning the orthogonal complement of range(Q) for an isometry Q,
/// so that [Q, complement(Q)] is unitary.
ComplexMatrix unitary_completion(const ComplexMatrix& Q);

/// Principal square root of a Hermitian PSD matrix (negative eigenvalues
/// from rounding are clamped to zero).
ComplexMatrix psd_sqrt(const ComplexMatrix& M);

/// Solves X * A = B for X (right division) by LU on A*.
ComplexMatrix right_solve(const ComplexMatrix& B, const ComplexMatrix& A);

/// Moore-Penrose pseudo-inverse, dropping singular values at or below the
/// numerical-rank cutoff.
ComplexMatrix pseudo_inverse(const ComplexMatrix& M, Tolerance tol = {});

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix& X, const ComplexMatrix& Y);

}  // namespace colligate
