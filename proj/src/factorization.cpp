#include "colligate/factorization.hpp"

#include <algorithm>
#include <sstream>

namespace colligate {

namespace {

void expect_shape(const ComplexMatrix& M, Eigen::Index r, Eigen::Index c, const char* what) {
  if (M.rows() != r || M.cols() != c) {
    throw DimensionError(std::string(what) + " is " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                         ", expected " + std::to_string(r) + "x" + std::to_string(c));
  }
  require_finite(M, what);
}

FactorizationCertificate make_certificate(Variant v, Tolerance tol,
                                          std::vector<std::pair<std::string, ComplexMatrix>> witnesses,
                                          std::vector<Residual> residuals) {
  FactorizationCertificate c;
  c.variant = v;
  c.tol = tol;
  c.witnesses = std::move(witnesses);
  c.residuals = std::move(residuals);
  c.verdict = std::all_of(c.residuals.begin(), c.residuals.end(),
                          [&](const Residual& r) { return r.value <= tol.atol; });
  return c;
}

void require_verdict(const FactorizationCertificate& c, const char* what) {
  if (!c.verdict) throw PreconditionError(std::string(what) + ": conditions not satisfied (" + c.summary() + ")");
}

// Extracted factors are held to a looser isometry tolerance than the checker:
// the extraction formulas amplify rounding by up to ||A^-1||.
constexpr double kExtractionSlack = 10.0;

std::pair<Colligation, Colligation> build_factors(const SplitColligation& s, ComplexMatrix A1, ComplexMatrix B1,
                                                  ComplexMatrix C1, ComplexMatrix D1, ComplexMatrix A2,
                                                  ComplexMatrix B2, ComplexMatrix C2, ComplexMatrix D3,
                                                  Tolerance tol) {
  const Tolerance loose = tol.scaled(kExtractionSlack);
  const Eigen::Index d = s.A.rows();
  const Representation& rep = s.parent.rep();
  try {
    Colligation first(d, rep.restrict_to(0, s.n1, loose), std::move(A1), std::move(B1), std::move(C1),
                      std::move(D1), s.parent.table_ptr(), loose);
    Colligation second(d, rep.restrict_to(s.n1, s.n2, loose), std::move(A2), std::move(B2), std::move(C2),
                       std::move(D3), s.parent.table_ptr(), loose);
    return {std::move(first), std::move(second)};
  } catch (const InvariantError& e) {
    throw InvariantError(std::string("extraction produced an invalid factor, witness inconsistent: ") + e.what());
  }
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::VanishingSelfadjoint:
      return "vanishing-selfadjoint";
    case Variant::BothVanishing:
      return "both-vanishing";
    case Variant::General:
      return "general";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "vanishing-selfadjoint") return Variant::VanishingSelfadjoint;
  if (name == "both-vanishing") return Variant::BothVanishing;
  if (name == "general") return Variant::General;
  throw PreconditionError("unknown variant '" + std::string(name) +
                          "' (expected vanishing-selfadjoint, both-vanishing or general)");
}

double FactorizationCertificate::residual(std::string_view name) const {
  for (const auto& r : residuals) {
    if (r.name == name) return r.value;
  }
  throw PreconditionError("certificate has no residual '" + std::string(name) + "'");
}

const ComplexMatrix& FactorizationCertificate::witness(std::string_view name) const {
  for (const auto& [n, M] : witnesses) {
    if (n == name) return M;
  }
  throw PreconditionError("certificate has no witness '" + std::string(name) + "'");
}

std::string FactorizationCertificate::summary() const {
  std::ostringstream os;
  os << to_string(variant) << ' ' << (verdict ? "accepted" : "rejected");
  for (const auto& r : residuals) {
    if (r.value > tol.atol) os << "; " << r.name << " [" << r.description << "] = " << r.value;
  }
  return os.str();
}

NoWitnessError::NoWitnessError(FactorizationCertificate best)
    : Error("no witness found: " + best.summary()), best_(std::move(best)) {}

SplitColligation split_blocks(const Colligation& col, Tolerance tol) {
  const auto& split = col.rep().split();
  if (!split) throw PreconditionError("split_blocks: colligation has no state split");
  const Eigen::Index n1 = split->first;
  const Eigen::Index n2 = split->second;
  SplitColligation s{col, n1, n2, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  s.A = col.A();
  s.B1 = col.B().leftCols(n1);
  s.B2 = col.B().rightCols(n2);
  s.C1 = col.C().topRows(n1);
  s.C2 = col.C().bottomRows(n2);
  s.D1 = col.D().topLeftCorner(n1, n1);
  s.D2 = col.D().topRightCorner(n1, n2);
  s.D21 = col.D().bottomLeftCorner(n2, n1);
  s.D3 = col.D().bottomRightCorner(n2, n2);
  if (max_abs(s.D21) > tol.atol) {
    throw InvariantError("split_blocks: lower-left D block is nonzero (|D21| = " + std::to_string(max_abs(s.D21)) +
                         ")");
  }
  if (!rep_is_reducible(col.rep(), tol)) {
    throw InvariantError("split_blocks: representation is not reducible w.r.t. the split");
  }
  return s;
}

FactorizationCertificate check_vanishing_selfadjoint(const SplitColligation& s, const ComplexMatrix& A,
                                                     Tolerance tol) {
  const Eigen::Index d = s.A.rows();
  expect_shape(A, d, d, "witness A");
  const double sigma = smallest_singular_value(A);
  const bool invertible = sigma > tol.atol;
  const ComplexMatrix A2 = A * A;
  // A^-2 X by two solves against A; pseudo-inverse when A is singular so the
  // residual stays finite.
  const ComplexMatrix X = s.C1.adjoint() * s.D2;
  ComplexMatrix Ainv2X;
  if (invertible) {
    Eigen::PartialPivLU<ComplexMatrix> lu(A);
    Ainv2X = lu.solve(lu.solve(X));
  } else {
    const ComplexMatrix P = pseudo_inverse(A, tol);
    Ainv2X = P * (P * X);
  }
  return make_certificate(
      Variant::VanishingSelfadjoint, tol, {{"A", A}},
      {
          {"r1", "theta(x0) = A_parent", max_abs(s.A)},
          {"r2", "B2", max_abs(s.B2)},
          {"r3", "A - A*", max_abs(A - A.adjoint())},
          {"r4", "max(0, atol - sigma_min(A))", std::max(0.0, tol.atol - sigma)},
          {"r5", "C1* C1 - A^2", max_abs(s.C1.adjoint() * s.C1 - A2)},
          {"r6", "C1 A^-2 C1* D2 - D2", max_abs(s.C1 * Ainv2X - s.D2)},
      });
}

ComplexMatrix solve_selfadjoint_witness(const SplitColligation& s) { return psd_sqrt(s.C1.adjoint() * s.C1); }

std::pair<Colligation, Colligation> extract_vanishing_selfadjoint(const SplitColligation& s,
                                                                  const ComplexMatrix& A, Tolerance tol) {
  require_verdict(check_vanishing_selfadjoint(s, A, tol), "extract_vanishing_selfadjoint");
  const Eigen::Index d = s.A.rows();
  Eigen::PartialPivLU<ComplexMatrix> lu(A);
  ComplexMatrix B2 = lu.solve(s.C1.adjoint() * s.D2);
  return build_factors(s, ComplexMatrix::Zero(d, d), s.B1, right_solve(s.C1, A), s.D1, A, std::move(B2), s.C2,
                       s.D3, tol);
}

LYWitness find_LY_witness(const SplitColligation& s, Tolerance tol) {
  if (max_abs(s.A) > tol.atol || max_abs(s.C1) > tol.atol || max_abs(s.B2) > tol.atol) {
    throw PreconditionError("find_LY_witness: colligation needs A = 0, C1 = 0 and B2 = 0 (|A| = " +
                            std::to_string(max_abs(s.A)) + ", |C1| = " + std::to_string(max_abs(s.C1)) +
                            ", |B2| = " + std::to_string(max_abs(s.B2)) + ")");
  }
  auto f = isometric_factor(s.D2, s.A.rows(), s.D1, tol);
  return {std::move(f.L), std::move(f.Y)};
}

FactorizationCertificate check_both_vanishing(const SplitColligation& s, const ComplexMatrix& L,
                                              const ComplexMatrix& Y, Tolerance tol) {
  const Eigen::Index d = s.A.rows();
  expect_shape(L, s.n1, d, "witness L");
  expect_shape(Y, d, s.n2, "witness Y");
  return make_certificate(Variant::BothVanishing, tol, {{"L", L}, {"Y", Y}},
                          {
                              {"r1", "A", max_abs(s.A)},
                              {"r2", "C1", max_abs(s.C1)},
                              {"r3", "B2", max_abs(s.B2)},
                              {"r4", "L* L - I", max_abs(L.adjoint() * L - identity(d))},
                              {"r5", "L* D1", max_abs(L.adjoint() * s.D1)},
                              {"r6", "D2 - L Y", max_abs(s.D2 - L * Y)},
                          });
}

std::pair<Colligation, Colligation> extract_both_vanishing(const SplitColligation& s, const ComplexMatrix& L,
                                                           const ComplexMatrix& Y, Tolerance tol) {
  require_verdict(check_both_vanishing(s, L, Y, tol), "extract_both_vanishing");
  const Eigen::Index d = s.A.rows();
  return build_factors(s, ComplexMatrix::Zero(d, d), s.B1, L, s.D1, ComplexMatrix::Zero(d, d), Y, s.C2, s.D3,
                       tol);
}

FactorizationCertificate check_general(const SplitColligation& s, const GeneralWitness& w, Tolerance tol) {
  const Eigen::Index d = s.A.rows();
  expect_shape(w.A1, d, d, "witness A1");
  expect_shape(w.A2, d, d, "witness A2");
  expect_shape(w.X1, s.n1, d, "witness X1");
  expect_shape(w.Y2, d, s.n2, "witness Y2");
  const ComplexMatrix R = w.A1.adjoint() * s.B1 + w.X1.adjoint() * s.D1;
  const bool injective = injective_on_range(w.A2.adjoint(), R, tol);
  return make_certificate(
      Variant::General, tol, {{"A1", w.A1}, {"A2", w.A2}, {"X1", w.X1}, {"Y2", w.Y2}},
      {
          {"r1", "A - A1 A2", max_abs(s.A - w.A1 * w.A2)},
          {"r2", "B2 - A1 Y2", max_abs(s.B2 - w.A1 * w.Y2)},
          {"r3", "C1 - X1 A2", max_abs(s.C1 - w.X1 * w.A2)},
          {"r4", "D2 - X1 Y2", max_abs(s.D2 - w.X1 * w.Y2)},
          {"r5", "A1* A1 + X1* X1 - I", max_abs(w.A1.adjoint() * w.A1 + w.X1.adjoint() * w.X1 - identity(d))},
          {"r6", "A2* injective on range(A1* B1 + X1* D1)", injective ? 0.0 : 1.0},
      });
}

GeneralWitness solve_general_witnesses(const SplitColligation& s, const ComplexMatrix& A1, const ComplexMatrix& A2,
                                       Tolerance tol) {
  const Eigen::Index d = s.A.rows();
  expect_shape(A1, d, d, "witness A1");
  expect_shape(A2, d, d, "witness A2");
  if (max_abs(s.A - A1 * A2) > tol.atol) {
    throw PreconditionError("solve_general_witnesses: A != A1 A2 (|A - A1 A2| = " +
                            std::to_string(max_abs(s.A - A1 * A2)) + ")");
  }
  GeneralWitness w{A1, A2, s.C1 * pseudo_inverse(A2, tol), pseudo_inverse(A1, tol) * s.B2};
  auto cert = check_general(s, w, tol);
  if (!cert.verdict) throw NoWitnessError(std::move(cert));
  return w;
}

std::pair<Colligation, Colligation> extract_general(const SplitColligation& s, const GeneralWitness& w,
                                                    Tolerance tol) {
  require_verdict(check_general(s, w, tol), "extract_general");
  return build_factors(s, w.A1, s.B1, w.X1, s.D1, w.A2, w.Y2, s.C2, s.D3, tol);
}

double verify_factorization(const Colligation& parent, const Colligation& first, const Colligation& second) {
  require_compatible(parent, first, "verify_factorization");
  require_compatible(parent, second, "verify_factorization");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < parent.table().num_points(); ++i) {
    worst = std::max(worst, max_abs(evaluate(parent, i) - evaluate(first, i) * evaluate(second, i)));
  }
  return worst;
}

}  // namespace colligate
