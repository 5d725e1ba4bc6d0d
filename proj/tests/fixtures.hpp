#pragma once

// Hand-built colligations with closed-form transfer functions, plus
// generators of random isometric factors in each normalization.

#include <cmath>
#include <memory>
#include <random>

#include "colligate/factorization.hpp"

namespace colligate::testing {

inline const double kSqrt3Half = std::sqrt(3.0) / 2.0;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  ComplexMatrix M(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index k = 0;
    for (const auto& v : row) M(i, k++) = v;
    ++i;
  }
  return M;
}

inline ComplexMatrix scalar(Complex v) { return ComplexMatrix::Constant(1, 1, v); }

/// psi(z) = z on {0, 1/2, -1/3, i/2}.
inline std::shared_ptr<const TestFunctionTable> disc4() {
  return std::make_shared<const TestFunctionTable>(
      disc::disc_table({0.0, 0.5, -1.0 / 3.0, Complex(0.0, 0.5)}));
}

/// Coordinate functions z1, z2 on {(0,0), (1/2,1/3), (-1/4, i/5)}.
inline std::shared_ptr<const TestFunctionTable> bidisc3() {
  return std::make_shared<const TestFunctionTable>(disc::coordinate_table(
      {"origin", "p", "q"}, mat({{0.0, 0.0}, {0.5, 1.0 / 3.0}, {-0.25, Complex(0.0, 0.2)}})));
}

inline Representation single(Eigen::Index m, Eigen::Index j) { return Representation::coordinate(m, {j}); }

/// U = [[0,1],[1,0]] with rho = coordinate j: evaluates to z_j.
inline Colligation coordinate_colligation(std::shared_ptr<const TestFunctionTable> t, Eigen::Index j = 0) {
  const auto m = t->num_functions();
  return Colligation::from_unitary(1, single(m, j), mat({{0.0, 1.0}, {1.0, 0.0}}), std::move(t));
}

/// Disc automorphism with U = [[1/2, s], [s, -1/2]], s = sqrt(3)/2:
/// psi2(z) = (1/2 + z)/(1 + z/2).
inline Colligation blaschke_factor(std::shared_ptr<const TestFunctionTable> t) {
  return Colligation::from_unitary(1, single(1, 0), mat({{0.5, kSqrt3Half}, {kSqrt3Half, -0.5}}), std::move(t));
}

/// U = [[0,1,0],[1/2,0,s],[s,0,-1/2]] with split (1,1): z (1/2 + z)/(1 + z/2).
inline Colligation blaschke_product(std::shared_ptr<const TestFunctionTable> t) {
  const Representation rep = Representation::direct_sum(single(1, 0), single(1, 0));
  return Colligation::from_unitary(
      1, rep, mat({{0.0, 1.0, 0.0}, {0.5, 0.0, kSqrt3Half}, {kSqrt3Half, 0.0, -0.5}}), std::move(t));
}

// -- random generators ---------------------------------------------------------

/// Random representation of dimension n over m functions: random index
/// assignment conjugated by a random unitary.
inline Representation random_rep(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<Eigen::Index> pick(0, m - 1);
  std::vector<Eigen::Index> assignment;
  for (Eigen::Index k = 0; k < n; ++k) assignment.push_back(pick(gen));
  const Representation base = Representation::coordinate(m, assignment);
  if (n == 0) return base;
  return base.conjugated(random_isometry(n, n, seed + 17), Tolerance(1e-12));
}

/// Polydisc coordinate table with m functions and n points (origin first),
/// coordinates drawn in the disc of radius 0.8.
inline std::shared_ptr<const TestFunctionTable> random_polydisc_table(Eigen::Index m, Eigen::Index n,
                                                                      std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> radius(0.05, 0.8), angle(0.0, 2.0 * M_PI);
  ComplexMatrix coords = ComplexMatrix::Zero(n, m);
  std::vector<std::string> labels{"origin"};
  for (Eigen::Index i = 1; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (Eigen::Index j = 0; j < m; ++j) coords(i, j) = std::polar(radius(gen), angle(gen));
  }
  return std::make_shared<const TestFunctionTable>(disc::coordinate_table(labels, coords));
}

/// Unitary with prescribed first block column Q (an isometry).
inline ComplexMatrix complete_with(const ComplexMatrix& Q, std::uint64_t seed) {
  const Eigen::Index n = Q.rows();
  const Eigen::Index k = Q.cols();
  ComplexMatrix U(n, n);
  U.leftCols(k) = Q;
  U.rightCols(n - k) = unitary_completion(Q) * random_isometry(n - k, n - k, seed);
  return U;
}

/// Factor with A = 0 (needs n >= d).
inline Colligation random_vanishing_factor(Eigen::Index d, Eigen::Index n, const Representation& rep,
                                           std::shared_ptr<const TestFunctionTable> t, std::uint64_t seed) {
  ComplexMatrix Q = ComplexMatrix::Zero(d + n, d);
  Q.bottomRows(n) = random_isometry(n, d, seed);
  return Colligation::from_unitary(d, rep, complete_with(Q, seed + 1), std::move(t));
}

/// Factor with A self-adjoint, eigenvalues of modulus in [0.3, 0.95] with
/// random signs (needs n >= d).
inline Colligation random_selfadjoint_factor(Eigen::Index d, Eigen::Index n, const Representation& rep,
                                             std::shared_ptr<const TestFunctionTable> t, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> mag(0.3, 0.95);
  std::bernoulli_distribution sign(0.5);
  Eigen::VectorXd a(d);
  for (Eigen::Index k = 0; k < d; ++k) a(k) = (sign(gen) ? 1.0 : -1.0) * mag(gen);
  const ComplexMatrix V = random_isometry(d, d, seed + 3);
  const ComplexMatrix A = V * a.cast<Complex>().asDiagonal() * V.adjoint();
  const Eigen::VectorXd c = (1.0 - a.array().square()).sqrt();
  const ComplexMatrix C = random_isometry(n, d, seed + 5) * c.cast<Complex>().asDiagonal() * V.adjoint();
  ComplexMatrix Q(d + n, d);
  Q.topRows(d) = A;
  Q.bottomRows(n) = C;
  return Colligation::from_unitary(d, rep, complete_with(Q, seed + 7), std::move(t));
}

/// Unrestricted random isometric factor.
inline Colligation random_factor(Eigen::Index d, const Representation& rep,
                                 std::shared_ptr<const TestFunctionTable> t, std::uint64_t seed) {
  return random_colligation(d, rep, std::move(t), seed);
}

}  // namespace colligate::testing
