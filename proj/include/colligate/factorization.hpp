#pragma once

// Factorization theta = psi1 * psi2 of a transfer function through block
// conditions on a single colligation over a reducible representation
//
//       [ A  | B1  B2 ]
//   U = [ C1 | D1  D2 ]      rho = rho1 (+) rho2 on H1 (+) H2.
//       [ C2 | 0   D3 ]
//
// Three variants are supported:
//   vanishing-selfadjoint  psi1(x0) = 0, psi2(x0) = A self-adjoint invertible
//   both-vanishing         psi1(x0) = psi2(x0) = 0
//   general                theta(x0) = A1 A2, no normalization
// For each: a checker producing a certificate, a witness solver where one
// exists, and an extraction returning the two factor colligations.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "colligate/realization.hpp"

namespace colligate {

enum class Variant { VanishingSelfadjoint, BothVanishing, General };

std::string_view to_string(Variant v);
/// Parses "vanishing-selfadjoint", "both-vanishing" or "general".
Variant parse_variant(std::string_view name);

/// Block view of a colligation whose state space carries a split.
struct SplitColligation {
  Colligation parent;
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
  ComplexMatrix A, B1, B2, C1, C2, D1, D2, D21, D3;
};

/// Reads off the blocks. Throws PreconditionError without a split,
/// InvariantError if the lower-left D block exceeds atol or rho is not
/// reducible w.r.t. the split.
SplitColligation split_blocks(const Colligation& col, Tolerance tol = {});

struct Residual {
  std::string name;         ///< "r1" ... "r6"
  std::string description;  ///< the condition, e.g. "C1* C1 - A^2"
  double value = 0.0;
};

struct FactorizationCertificate {
  Variant variant = Variant::General;
  std::vector<std::pair<std::string, ComplexMatrix>> witnesses;
  std::vector<Residual> residuals;
  Tolerance tol;
  bool verdict = false;

  double residual(std::string_view name) const;
  const ComplexMatrix& witness(std::string_view name) const;
  std::string summary() const;
};

/// Raised by witness solvers when the best candidate fails the checker.
class NoWitnessError : public Error {
 public:
  explicit NoWitnessError(FactorizationCertificate best);
  const FactorizationCertificate& best() const { return best_; }

 private:
  FactorizationCertificate best_;
};

// -- psi1(x0) = 0, psi2(x0) = A self-adjoint invertible ----------------------

/// r1 |A_parent|, r2 |B2|, r3 |A - A*|, r4 max(0, atol - sigma_min(A)),
/// r5 |C1* C1 - A^2|, r6 |C1 A^-2 C1* D2 - D2|.
FactorizationCertificate check_vanishing_selfadjoint(const SplitColligation& s, const ComplexMatrix& A,
                                                     Tolerance tol = {});

/// Positive square root of C1* C1. The conditions only involve A^2, so this
/// is a valid witness whenever any self-adjoint witness exists.
ComplexMatrix solve_selfadjoint_witness(const SplitColligation& s);

/// U1 = [[0, B1], [C1 A^-1, D1]] on H1 and U2 = [[A, A^-1 C1* D2], [C2, D3]] on H2.
std::pair<Colligation, Colligation> extract_vanishing_selfadjoint(const SplitColligation& s,
                                                                  const ComplexMatrix& A, Tolerance tol = {});

// -- psi1(x0) = psi2(x0) = 0 --------------------------------------------------

struct LYWitness {
  ComplexMatrix L;  ///< N1 x d isometry, L* D1 = 0
  ComplexMatrix Y;  ///< d x N2, D2 = L Y
};

/// Requires A = 0, C1 = 0, B2 = 0; factors D2 through an isometry
/// orthogonal to range(D1).
LYWitness find_LY_witness(const SplitColligation& s, Tolerance tol = {});

/// r1 |A|, r2 |C1|, r3 |B2|, r4 |L*L - I|, r5 |L* D1|, r6 |D2 - L Y|.
FactorizationCertificate check_both_vanishing(const SplitColligation& s, const ComplexMatrix& L,
                                              const ComplexMatrix& Y, Tolerance tol = {});

/// U1 = [[0, B1], [L, D1]] on H1 and U2 = [[0, Y], [C2, D3]] on H2.
std::pair<Colligation, Colligation> extract_both_vanishing(const SplitColligation& s, const ComplexMatrix& L,
                                                           const ComplexMatrix& Y, Tolerance tol = {});

// -- general: theta(x0) = A1 A2 -----------------------------------------------

struct GeneralWitness {
  ComplexMatrix A1, A2, X1, Y2;
};

/// r1 |A - A1 A2|, r2 |B2 - A1 Y2|, r3 |C1 - X1 A2|, r4 |D2 - X1 Y2|,
/// r5 |A1* A1 + X1* X1 - I|, r6 = 0 if A2* is injective on
/// range(A1* B1 + X1* D1), else 1.
FactorizationCertificate check_general(const SplitColligation& s, const GeneralWitness& w, Tolerance tol = {});

/// Least-squares X1 = C1 A2^+, Y2 = A1^+ B2, accepted only if every
/// condition then holds. Incomplete when A1 or A2 is singular.
GeneralWitness solve_general_witnesses(const SplitColligation& s, const ComplexMatrix& A1,
                                       const ComplexMatrix& A2, Tolerance tol = {});

/// U1 = [[A1, B1], [X1, D1]] on H1 and U2 = [[A2, Y2], [C2, D3]] on H2.
std::pair<Colligation, Colligation> extract_general(const SplitColligation& s, const GeneralWitness& w,
                                                    Tolerance tol = {});

/// max over points of |theta(x) - psi1(x) psi2(x)|.
double verify_factorization(const Colligation& parent, const Colligation& first, const Colligation& second);

}  // namespace colligate
