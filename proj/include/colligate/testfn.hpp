#pragma once

// Finite test-function families on finite point sets, Hermitian kernels
// sampled on those points, and the positivity checks built on them.

#include <functional>
#include <string>
#include <vector>

#include "colligate/numerics.hpp"

namespace colligate {

/// Distinct point labels; index 0 is the base point where every test
/// function vanishes.
class PointSet {
 public:
  explicit PointSet(std::vector<std::string> labels);

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Eigen::Index i) const;

  bool operator==(const PointSet& other) const = default;

 private:
  std::vector<std::string> labels_;
};

/// values(j, i) = psi_j(x_i). Construction checks shapes and finiteness
/// only; validate_test_family reports on the family axioms.
class TestFunctionTable {
 public:
  TestFunctionTable(PointSet points, ComplexMatrix values);

  const PointSet& points() const { return points_; }
  const ComplexMatrix& values() const { return values_; }
  Eigen::Index num_functions() const { return values_.rows(); }
  Eigen::Index num_points() const { return values_.cols(); }

  bool operator==(const TestFunctionTable& other) const;

 private:
  PointSet points_;
  ComplexMatrix values_;
};

struct FamilyDiagnostics {
  bool contractive = true;
  bool base_point_normalized = true;
  bool separating = true;

  /// Point indices i with max_j |psi_j(x_i)| >= 1.
  std::vector<Eigen::Index> non_contractive_points;
  /// Test function indices j with psi_j(x_0) != 0.
  std::vector<Eigen::Index> nonzero_at_base;
  /// Point pairs (i, i') no test function tells apart.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> unseparated_pairs;

  bool ok() const { return contractive && base_point_normalized && separating; }
  std::string summary() const;
};

/// Checks strict contractivity, vanishing at the base point and point
/// separation. Never throws on a bad family.
FamilyDiagnostics validate_test_family(const TestFunctionTable& t, Tolerance tol = {});

/// Throws InvariantError carrying the diagnostics summary if the family fails.
void require_valid_family(const TestFunctionTable& t, Tolerance tol = {});

/// (psi_1(x_i), ..., psi_m(x_i)); exactly zero at the base point.
ComplexVector eval_map(const TestFunctionTable& t, Eigen::Index i);

/// Kernel sampled on a point set: block(i, j) = S(x_i, x_j), each
/// block_dim x block_dim, stored as the assembled Hermitian matrix.
class HermitianKernel {
 public:
  HermitianKernel(PointSet points, Eigen::Index block_dim, ComplexMatrix assembled,
                  Tolerance tol = {});

  /// Builds the assembly from a block function S(i, j).
  static HermitianKernel from_blocks(
      PointSet points, Eigen::Index block_dim,
      const std::function<ComplexMatrix(Eigen::Index, Eigen::Index)>& block, Tolerance tol = {});

  const PointSet& points() const { return points_; }
  Eigen::Index block_dim() const { return block_dim_; }
  const ComplexMatrix& assembled() const { return assembled_; }
  ComplexMatrix block(Eigen::Index i, Eigen::Index j) const;

  /// Restriction to a subset of point indices (in the given order).
  HermitianKernel restrict_to(const std::vector<Eigen::Index>& indices) const;

 private:
  PointSet points_;
  Eigen::Index block_dim_;
  ComplexMatrix assembled_;
};

/// Admissibility via positivity of (1 - psi(x_i) conj(psi(x_j))) S(x_i, x_j)
/// for every test function psi.
bool is_admissible(const HermitianKernel& S, const TestFunctionTable& t, Tolerance tol = {});

/// k(i, j, g): the operator k(x_i, x_j)(g) on F for g in C_b(Psi), given by
/// its values on the test functions.
using CompletelyPositiveKernel =
    std::function<ComplexMatrix(Eigen::Index, Eigen::Index, const ComplexVector&)>;

struct CpSample {
  std::vector<Eigen::Index> points;
  std::vector<ComplexMatrix> T;  ///< each F-dim square
  std::vector<ComplexVector> f;  ///< each of length m
};

/// Sampled necessary condition for complete positivity: for every sample,
/// the assembly with (i, j) block T_j* k(x_i, x_j)(conj(f_j) f_i) T_i is PSD.
bool cp_kernel_check(const CompletelyPositiveKernel& k, const TestFunctionTable& t,
                     const std::vector<CpSample>& samples, Tolerance tol = {});

/// Values f(x_i), one d x d matrix per point.
using FunctionValues = std::vector<ComplexMatrix>;

/// PSD test of the assembly with (i, j) block
///   (C^2 I - f(x_j)* f(x_i))^T kron S(x_i, x_j).
/// The transpose keeps row index i on x in both factors; it is a no-op for d = 1.
bool schur_agler_witness_check(const FunctionValues& fvals, const HermitianKernel& S,
                               double c, Tolerance tol = {});

/// Smallest C passing schur_agler_witness_check for every kernel, by
/// bisection on C^2 to width atol. A lower bound on the Agler norm. Returns
/// +infinity when no finite C passes on the sampled kernels.
double agler_norm_lower_bound(const FunctionValues& fvals, const std::vector<HermitianKernel>& kernels,
                              Tolerance tol = {});

/// Sample tables and kernels for polydisc coordinate functions.
namespace disc {

/// psi_j(x_i) = coords(i, j) for the coordinate functions of the m-disc;
/// row 0 of coords must be the origin.
TestFunctionTable coordinate_table(std::vector<std::string> labels,
                                   const ComplexMatrix& coords);

/// Scalar disc table, psi(z) = z, at the given points (first must be 0).
TestFunctionTable disc_table(const std::vector<Complex>& zs);

/// Szego kernel 1/(1 - z conj(w)) raised to `power`, scaled by the PSD
/// block `weight`, sampled at zs.
HermitianKernel szego_kernel(const PointSet& points, const std::vector<Complex>& zs, int power = 1,
                             const ComplexMatrix& weight = ComplexMatrix::Identity(1, 1));

}  // namespace disc

}  // namespace colligate
