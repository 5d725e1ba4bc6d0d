#pragma once

// Representations of C_b(Psi) as projection families, isometric
// colligations and their transfer functions
//
//   f(x) = A + B rho(E(x)) (I - D rho(E(x)))^{-1} C.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "colligate/testfn.hpp"

namespace colligate {

/// Dimensions (N1, N2) of a state space split H = H1 + H2.
struct StateSplit {
  Eigen::Index first = 0;
  Eigen::Index second = 0;

  bool operator==(const StateSplit&) const = default;
};

/// Unital *-representation of C^m: mutually orthogonal projections P_j
/// summing to the identity on C^N, so that rho(g) = sum_j g_j P_j.
class Representation {
 public:
  Representation(std::vector<ComplexMatrix> projections, std::optional<StateSplit> split = std::nullopt,
                 Tolerance tol = {});

  /// Diagonal projections: basis vector k belongs to test function assignment[k].
  static Representation coordinate(Eigen::Index num_functions, const std::vector<Eigen::Index>& assignment);

  /// rho1 (+) rho2 with the split recorded.
  static Representation direct_sum(const Representation& first, const Representation& second,
                                   Tolerance tol = {});

  Eigen::Index state_dim() const { return state_dim_; }
  Eigen::Index num_functions() const { return static_cast<Eigen::Index>(projections_.size()); }
  const std::vector<ComplexMatrix>& projections() const { return projections_; }
  const std::optional<StateSplit>& split() const { return split_; }

  /// Same projections with a split attached (or replaced).
  Representation with_split(StateSplit split, Tolerance tol = {}) const;

  /// Compression of every projection to the diagonal block [offset, offset+size).
  Representation restrict_to(Eigen::Index offset, Eigen::Index size, Tolerance tol = {}) const;

  /// W P_j W* for a unitary W.
  Representation conjugated(const ComplexMatrix& W, Tolerance tol = {}) const;

 private:
  Eigen::Index state_dim_ = 0;
  std::vector<ComplexMatrix> projections_;
  std::optional<StateSplit> split_;
};

/// rho(g) = sum_j g_j P_j.
ComplexMatrix rep_apply(const Representation& rep, const ComplexVector& g);

/// True iff every projection is block diagonal w.r.t. the recorded split.
bool rep_is_reducible(const Representation& rep, Tolerance tol = {});

/// An isometry U = [[A, B], [C, D]] on E (+) H together with the
/// representation on H and the test table it is evaluated over.
class Colligation {
 public:
  Colligation(Eigen::Index value_dim, Representation rep, ComplexMatrix A, ComplexMatrix B,
              ComplexMatrix C, ComplexMatrix D, std::shared_ptr<const TestFunctionTable> table,
              Tolerance tol = {});

  /// Partitions U with the leading value_dim rows/columns as the A block.
  static Colligation from_unitary(Eigen::Index value_dim, Representation rep, const ComplexMatrix& U,
                                  std::shared_ptr<const TestFunctionTable> table, Tolerance tol = {});

  Eigen::Index value_dim() const { return A_.rows(); }
  Eigen::Index state_dim() const { return rep_.state_dim(); }
  const Representation& rep() const { return rep_; }
  const ComplexMatrix& A() const { return A_; }
  const ComplexMatrix& B() const { return B_; }
  const ComplexMatrix& C() const { return C_; }
  const ComplexMatrix& D() const { return D_; }
  const TestFunctionTable& table() const { return *table_; }
  const std::shared_ptr<const TestFunctionTable>& table_ptr() const { return table_; }

  /// The assembled (d + N) square matrix U.
  ComplexMatrix unitary() const;

 private:
  Representation rep_;
  ComplexMatrix A_, B_, C_, D_;
  std::shared_ptr<const TestFunctionTable> table_;
};

/// Transfer function value at point i. Exactly A at the base point.
ComplexMatrix evaluate(const Colligation& col, Eigen::Index i);

/// Values at every point of the table.
FunctionValues evaluate_all(const Colligation& col);

/// Realization of the pointwise product f1 * f2:
///   U = [[A1 A2, B1, A1 B2], [C1 A2, D1, C1 B2], [C2, 0, D2]]
/// with rho = rho1 (+) rho2 and split (N1, N2).
Colligation product(const Colligation& first, const Colligation& second, Tolerance tol = {});

/// max over point pairs of
///   |(I - f_j* f_i) - G_j* (I - L_j* L_i) G_i|,  G_i = (I - D L_i)^{-1} C.
/// Zero for an exact isometry.
double gramian_identity_check(const Colligation& col);

/// U = random_isometry(d + N, d + N, seed) partitioned into blocks.
Colligation random_colligation(Eigen::Index value_dim, const Representation& rep,
                               std::shared_ptr<const TestFunctionTable> table, std::uint64_t seed);

/// Same tables, same value dimension; throws MismatchError otherwise.
void require_compatible(const Colligation& a, const Colligation& b, const char* what);

}  // namespace colligate
