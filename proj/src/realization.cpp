#include "colligate/realization.hpp"

#include <algorithm>
#include <string>

namespace colligate {

namespace {

constexpr double kResolventRcondFloor = 1e-14;

std::string shape(const ComplexMatrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

}  // namespace

Representation::Representation(std::vector<ComplexMatrix> projections, std::optional<StateSplit> split,
                               Tolerance tol)
    : projections_(std::move(projections)), split_(split) {
  if (projections_.empty()) throw InvariantError("Representation: need at least one projection");
  state_dim_ = projections_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(state_dim_, state_dim_);
  for (std::size_t j = 0; j < projections_.size(); ++j) {
    const ComplexMatrix& P = projections_[j];
    const std::string name = "Representation: P" + std::to_string(j);
    if (P.rows() != state_dim_ || P.cols() != state_dim_) {
      throw DimensionError(name + " is " + shape(P) + ", expected " + std::to_string(state_dim_) + " square");
    }
    require_finite(P, name.c_str());
    if (max_abs(P - P.adjoint()) > tol.atol) throw InvariantError(name + " is not Hermitian");
    if (max_abs(P * P - P) > tol.atol) throw InvariantError(name + " is not idempotent");
    for (std::size_t k = 0; k < j; ++k) {
      if (max_abs(P * projections_[k]) > tol.atol) {
        throw InvariantError(name + " is not orthogonal to P" + std::to_string(k));
      }
    }
    sum += P;
  }
  if (max_abs(sum - identity(state_dim_)) > tol.atol) {
    throw InvariantError("Representation: projections do not sum to the identity");
  }
  if (split_ && (split_->first < 0 || split_->second < 0 || split_->first + split_->second != state_dim_)) {
    throw DimensionError("Representation: split (" + std::to_string(split_->first) + "," +
                         std::to_string(split_->second) + ") does not add up to " + std::to_string(state_dim_));
  }
}

Representation Representation::coordinate(Eigen::Index num_functions, const std::vector<Eigen::Index>& assignment) {
  const auto n = static_cast<Eigen::Index>(assignment.size());
  std::vector<ComplexMatrix> P(static_cast<std::size_t>(num_functions), ComplexMatrix::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = assignment[static_cast<std::size_t>(k)];
    if (j < 0 || j >= num_functions) throw DimensionError("Representation::coordinate: assignment out of range");
    P[static_cast<std::size_t>(j)](k, k) = 1.0;
  }
  return Representation(std::move(P));
}

Representation Representation::direct_sum(const Representation& first, const Representation& second,
                                          Tolerance tol) {
  if (first.num_functions() != second.num_functions()) {
    throw MismatchError("Representation::direct_sum: representations of different algebras");
  }
  const Eigen::Index n1 = first.state_dim();
  const Eigen::Index n2 = second.state_dim();
  std::vector<ComplexMatrix> P;
  for (std::size_t j = 0; j < first.projections_.size(); ++j) {
    ComplexMatrix M = ComplexMatrix::Zero(n1 + n2, n1 + n2);
    M.topLeftCorner(n1, n1) = first.projections_[j];
    M.bottomRightCorner(n2, n2) = second.projections_[j];
    P.push_back(std::move(M));
  }
  return Representation(std::move(P), StateSplit{n1, n2}, tol);
}

Representation Representation::with_split(StateSplit split, Tolerance tol) const {
  return Representation(projections_, split, tol);
}

Representation Representation::restrict_to(Eigen::Index offset, Eigen::Index size, Tolerance tol) const {
  if (offset < 0 || size < 0 || offset + size > state_dim_) {
    throw DimensionError("Representation::restrict_to: block out of range");
  }
  std::vector<ComplexMatrix> P;
  for (const auto& p : projections_) P.push_back(p.block(offset, offset, size, size));
  return Representation(std::move(P), std::nullopt, tol);
}

Representation Representation::conjugated(const ComplexMatrix& W, Tolerance tol) const {
  std::vector<ComplexMatrix> P;
  for (const auto& p : projections_) P.push_back(W * p * W.adjoint());
  return Representation(std::move(P), split_, tol);
}

ComplexMatrix rep_apply(const Representation& rep, const ComplexVector& g) {
  if (g.size() != rep.num_functions()) {
    throw DimensionError("rep_apply: vector of length " + std::to_string(g.size()) + " for " +
                         std::to_string(rep.num_functions()) + " projections");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rep.state_dim(), rep.state_dim());
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    if (g(j) != Complex(0.0)) out += g(j) * rep.projections()[static_cast<std::size_t>(j)];
  }
  return out;
}

bool rep_is_reducible(const Representation& rep, Tolerance tol) {
  if (!rep.split()) throw PreconditionError("rep_is_reducible: representation has no split");
  const Eigen::Index n1 = rep.split()->first;
  const Eigen::Index n2 = rep.split()->second;
  return std::all_of(rep.projections().begin(), rep.projections().end(), [&](const ComplexMatrix& P) {
    return max_abs(P.topRightCorner(n1, n2)) <= tol.atol && max_abs(P.bottomLeftCorner(n2, n1)) <= tol.atol;
  });
}

Colligation::Colligation(Eigen::Index value_dim, Representation rep, ComplexMatrix A, ComplexMatrix B,
                         ComplexMatrix C, ComplexMatrix D, std::shared_ptr<const TestFunctionTable> table,
                         Tolerance tol)
    : rep_(std::move(rep)), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)),
      table_(std::move(table)) {
  if (!table_) throw PreconditionError("Colligation: no test table");
  const Eigen::Index d = value_dim;
  const Eigen::Index n = rep_.state_dim();
  if (d < 1) throw DimensionError("Colligation: value dimension must be positive");
  auto expect = [](const ComplexMatrix& M, Eigen::Index r, Eigen::Index c, const char* name) {
    if (M.rows() != r || M.cols() != c) {
      throw DimensionError(std::string("Colligation: block ") + name + " is " + shape(M) + ", expected " +
                           std::to_string(r) + "x" + std::to_string(c));
    }
    require_finite(M, name);
  };
  expect(A_, d, d, "A");
  expect(B_, d, n, "B");
  expect(C_, n, d, "C");
  expect(D_, n, n, "D");
  if (rep_.num_functions() != table_->num_functions()) {
    throw MismatchError("Colligation: representation has " + std::to_string(rep_.num_functions()) +
                        " projections but the table has " + std::to_string(table_->num_functions()) +
                        " test functions");
  }
  const ComplexMatrix U = unitary();
  const double defect = max_abs(U.adjoint() * U - identity(U.cols()));
  if (defect > tol.atol) {
    throw InvariantError("Colligation: U is not an isometry (|U*U - I| = " + std::to_string(defect) + ")");
  }
}

Colligation Colligation::from_unitary(Eigen::Index value_dim, Representation rep, const ComplexMatrix& U,
                                      std::shared_ptr<const TestFunctionTable> table, Tolerance tol) {
  const Eigen::Index d = value_dim;
  const Eigen::Index n = rep.state_dim();
  if (U.rows() != d + n || U.cols() != d + n) {
    throw DimensionError("Colligation::from_unitary: U is " + shape(U) + ", expected " +
                         std::to_string(d + n) + " square");
  }
  return Colligation(d, std::move(rep), U.topLeftCorner(d, d), U.topRightCorner(d, n),
                     U.bottomLeftCorner(n, d), U.bottomRightCorner(n, n), std::move(table), tol);
}

ComplexMatrix Colligation::unitary() const {
  const Eigen::Index d = A_.rows();
  const Eigen::Index n = D_.rows();
  ComplexMatrix U(d + n, d + n);
  U.topLeftCorner(d, d) = A_;
  U.topRightCorner(d, n) = B_;
  U.bottomLeftCorner(n, d) = C_;
  U.bottomRightCorner(n, n) = D_;
  return U;
}

namespace {

struct PointState {
  ComplexMatrix lambda;  // rho(E(x_i))
  ComplexMatrix G;       // (I - D lambda)^{-1} C
  ComplexMatrix f;
};

PointState point_state(const Colligation& col, Eigen::Index i) {
  PointState s;
  s.lambda = rep_apply(col.rep(), eval_map(col.table(), i));
  if (i == 0) {
    s.G = col.C();
    s.f = col.A();
    return s;
  }
  const Eigen::Index n = col.state_dim();
  Eigen::PartialPivLU<ComplexMatrix> lu(identity(n) - col.D() * s.lambda);
  if (n > 0 && lu.rcond() < kResolventRcondFloor) {
    throw SingularResolventError("evaluate: I - D rho(E(x)) is singular at point " + std::to_string(i) + " ('" +
                                 col.table().points().label(i) + "')");
  }
  s.G = n > 0 ? ComplexMatrix(lu.solve(col.C())) : ComplexMatrix(0, col.value_dim());
  s.f = col.A() + col.B() * s.lambda * s.G;
  return s;
}

}  // namespace

ComplexMatrix evaluate(const Colligation& col, Eigen::Index i) {
  if (i < 0 || i >= col.table().num_points()) {
    throw DimensionError("evaluate: point index " + std::to_string(i) + " out of range");
  }
  return point_state(col, i).f;
}

FunctionValues evaluate_all(const Colligation& col) {
  FunctionValues out;
  for (Eigen::Index i = 0; i < col.table().num_points(); ++i) out.push_back(evaluate(col, i));
  return out;
}

void require_compatible(const Colligation& a, const Colligation& b, const char* what) {
  if (a.value_dim() != b.value_dim()) {
    throw MismatchError(std::string(what) + ": value dimensions " + std::to_string(a.value_dim()) + " and " +
                        std::to_string(b.value_dim()) + " differ");
  }
  if (a.table_ptr() != b.table_ptr() && !(a.table() == b.table())) {
    throw MismatchError(std::string(what) + ": colligations use different test tables");
  }
}

Colligation product(const Colligation& first, const Colligation& second, Tolerance tol) {
  require_compatible(first, second, "product");
  const Eigen::Index d = first.value_dim();
  const Eigen::Index n1 = first.state_dim();
  const Eigen::Index n2 = second.state_dim();
  const Eigen::Index n = n1 + n2;

  ComplexMatrix B(d, n);
  B.leftCols(n1) = first.B();
  B.rightCols(n2) = first.A() * second.B();
  ComplexMatrix C(n, d);
  C.topRows(n1) = first.C() * second.A();
  C.bottomRows(n2) = second.C();
  ComplexMatrix D = ComplexMatrix::Zero(n, n);
  D.topLeftCorner(n1, n1) = first.D();
  D.topRightCorner(n1, n2) = first.C() * second.B();
  D.bottomRightCorner(n2, n2) = second.D();

  return Colligation(d, Representation::direct_sum(first.rep(), second.rep(), tol), first.A() * second.A(),
                     std::move(B), std::move(C), std::move(D), first.table_ptr(), tol);
}

double gramian_identity_check(const Colligation& col) {
  const Eigen::Index n = col.table().num_points();
  const Eigen::Index d = col.value_dim();
  const Eigen::Index N = col.state_dim();
  std::vector<PointState> states;
  for (Eigen::Index i = 0; i < n; ++i) states.push_back(point_state(col, i));
  double worst = 0.0;
  for (const auto& si : states) {
    for (const auto& sj : states) {
      const ComplexMatrix lhs = identity(d) - sj.f.adjoint() * si.f;
      const ComplexMatrix rhs = sj.G.adjoint() * (identity(N) - sj.lambda.adjoint() * si.lambda) * si.G;
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  }
  return worst;
}

Colligation random_colligation(Eigen::Index value_dim, const Representation& rep,
                               std::shared_ptr<const TestFunctionTable> table, std::uint64_t seed) {
  if (!table || rep.num_functions() != table->num_functions()) {
    throw MismatchError("random_colligation: representation and table disagree on the number of test functions");
  }
  const Eigen::Index n = value_dim + rep.state_dim();
  return Colligation::from_unitary(value_dim, rep, random_isometry(n, n, seed), std::move(table));
}

}  // namespace colligate
