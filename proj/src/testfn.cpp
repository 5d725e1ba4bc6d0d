#include "colligate/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace colligate {

PointSet::PointSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvariantError("PointSet: at least the base point is required");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw InvariantError("PointSet: duplicate label '" + l + "'");
  }
}

const std::string& PointSet::label(Eigen::Index i) const {
  if (i < 0 || i >= size()) throw DimensionError("PointSet: index " + std::to_string(i) + " out of range");
  return labels_[static_cast<std::size_t>(i)];
}

TestFunctionTable::TestFunctionTable(PointSet points, ComplexMatrix values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (values_.rows() < 1) throw InvariantError("TestFunctionTable: need at least one test function");
  if (values_.cols() != points_.size()) {
    throw DimensionError("TestFunctionTable: " + std::to_string(values_.cols()) + " value columns for " +
                         std::to_string(points_.size()) + " points");
  }
  require_finite(values_, "TestFunctionTable");
}

bool TestFunctionTable::operator==(const TestFunctionTable& other) const {
  return points_ == other.points_ && values_.rows() == other.values_.rows() &&
         values_.cols() == other.values_.cols() && values_ == other.values_;
}

std::string FamilyDiagnostics::summary() const {
  std::ostringstream os;
  if (ok()) return "test family ok";
  if (!contractive) {
    os << "contractivity fails at points";
    for (auto i : non_contractive_points) os << ' ' << i;
    os << "; ";
  }
  if (!base_point_normalized) {
    os << "test functions nonzero at base point:";
    for (auto j : nonzero_at_base) os << ' ' << j;
    os << "; ";
  }
  if (!separating) {
    os << "points not separated:";
    for (auto [a, b] : unseparated_pairs) os << " (" << a << ',' << b << ')';
    os << "; ";
  }
  std::string s = os.str();
  return s.substr(0, s.size() - 2);
}

FamilyDiagnostics validate_test_family(const TestFunctionTable& t, Tolerance tol) {
  FamilyDiagnostics d;
  const ComplexMatrix& v = t.values();
  const Eigen::Index m = v.rows();
  const Eigen::Index n = v.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v.col(i).cwiseAbs().maxCoeff() >= 1.0) d.non_contractive_points.push_back(i);
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(v(j, 0)) > tol.atol) d.nonzero_at_base.push_back(j);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      if ((v.col(i) - v.col(k)).cwiseAbs().maxCoeff() <= tol.atol) d.unseparated_pairs.emplace_back(i, k);
    }
  }
  d.contractive = d.non_contractive_points.empty();
  d.base_point_normalized = d.nonzero_at_base.empty();
  d.separating = d.unseparated_pairs.empty();
  return d;
}

void require_valid_family(const TestFunctionTable& t, Tolerance tol) {
  const auto d = validate_test_family(t, tol);
  if (!d.ok()) throw InvariantError(d.summary());
}

ComplexVector eval_map(const TestFunctionTable& t, Eigen::Index i) {
  if (i < 0 || i >= t.num_points()) {
    throw DimensionError("eval_map: point index " + std::to_string(i) + " out of range [0, " +
                         std::to_string(t.num_points()) + ")");
  }
  if (i == 0) return ComplexVector::Zero(t.num_functions());
  return t.values().col(i);
}

HermitianKernel::HermitianKernel(PointSet points, Eigen::Index block_dim, ComplexMatrix assembled,
                                 Tolerance tol)
    : points_(std::move(points)), block_dim_(block_dim), assembled_(std::move(assembled)) {
  const Eigen::Index n = points_.size() * block_dim_;
  if (block_dim_ < 1 || assembled_.rows() != n || assembled_.cols() != n) {
    throw DimensionError("HermitianKernel: assembly must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  require_finite(assembled_, "HermitianKernel");
  if (max_abs(assembled_ - assembled_.adjoint()) > tol.atol) {
    throw InvariantError("HermitianKernel: S(x_i, x_j) != S(x_j, x_i)*");
  }
}

HermitianKernel HermitianKernel::from_blocks(
    PointSet points, Eigen::Index block_dim,
    const std::function<ComplexMatrix(Eigen::Index, Eigen::Index)>& block, Tolerance tol) {
  const Eigen::Index n = points.size();
  ComplexMatrix M(n * block_dim, n * block_dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const ComplexMatrix b = block(i, j);
      if (b.rows() != block_dim || b.cols() != block_dim) {
        throw DimensionError("HermitianKernel::from_blocks: block has wrong shape");
      }
      M.block(i * block_dim, j * block_dim, block_dim, block_dim) = b;
    }
  }
  return HermitianKernel(std::move(points), block_dim, std::move(M), tol);
}

ComplexMatrix HermitianKernel::block(Eigen::Index i, Eigen::Index j) const {
  const Eigen::Index n = points_.size();
  if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("HermitianKernel::block: index out of range");
  return assembled_.block(i * block_dim_, j * block_dim_, block_dim_, block_dim_);
}

HermitianKernel HermitianKernel::restrict_to(const std::vector<Eigen::Index>& indices) const {
  std::vector<std::string> labels;
  for (auto i : indices) labels.push_back(points_.label(i));
  const auto d = block_dim_;
  const auto k = static_cast<Eigen::Index>(indices.size());
  ComplexMatrix M(k * d, k * d);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      M.block(a * d, b * d, d, d) = block(indices[static_cast<std::size_t>(a)], indices[static_cast<std::size_t>(b)]);
    }
  }
  return HermitianKernel(PointSet(std::move(labels)), d, std::move(M), Tolerance(0.0));
}

namespace {

void require_same_points(const PointSet& a, const PointSet& b, const char* what) {
  if (!(a == b)) throw MismatchError(std::string(what) + ": kernel and table use different point sets");
}

}  // namespace

bool is_admissible(const HermitianKernel& S, const TestFunctionTable& t, Tolerance tol) {
  require_same_points(S.points(), t.points(), "is_admissible");
  const Eigen::Index n = t.num_points();
  const Eigen::Index d = S.block_dim();
  for (Eigen::Index j = 0; j < t.num_functions(); ++j) {
    ComplexMatrix M = S.assembled();
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        const Complex w = 1.0 - t.values()(j, a) * std::conj(t.values()(j, b));
        M.block(a * d, b * d, d, d) *= w;
      }
    }
    if (!is_psd(M, tol)) return false;
  }
  return true;
}

bool cp_kernel_check(const CompletelyPositiveKernel& k, const TestFunctionTable& t,
                     const std::vector<CpSample>& samples, Tolerance tol) {
  const Eigen::Index m = t.num_functions();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const CpSample& sample = samples[s];
    const std::size_t N = sample.points.size();
    if (sample.T.size() != N || sample.f.size() != N) {
      throw DimensionError("cp_kernel_check: sample " + std::to_string(s) +
                           " needs one T and one f per point");
    }
    if (N == 0) continue;
    const Eigen::Index dF = sample.T[0].rows();
    for (std::size_t i = 0; i < N; ++i) {
      if (sample.T[i].rows() != dF || sample.T[i].cols() != dF) {
        throw DimensionError("cp_kernel_check: sample " + std::to_string(s) + " has a non-square or mis-sized T");
      }
      if (sample.f[i].size() != m) {
        throw DimensionError("cp_kernel_check: sample " + std::to_string(s) + " has f of wrong length");
      }
      if (sample.points[i] < 0 || sample.points[i] >= t.num_points()) {
        throw DimensionError("cp_kernel_check: sample " + std::to_string(s) + " has a point index out of range");
      }
    }
    const auto n = static_cast<Eigen::Index>(N);
    ComplexMatrix M(n * dF, n * dF);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        const ComplexVector g = sample.f[uj].conjugate().cwiseProduct(sample.f[ui]);
        const ComplexMatrix kij = k(sample.points[ui], sample.points[uj], g);
        if (kij.rows() != dF || kij.cols() != dF) {
          throw DimensionError("cp_kernel_check: kernel value has wrong shape");
        }
        M.block(i * dF, j * dF, dF, dF) = sample.T[uj].adjoint() * kij * sample.T[ui];
      }
    }
    if (!is_psd(M, tol)) return false;
  }
  return true;
}

namespace {

Eigen::Index check_values(const FunctionValues& fvals, const PointSet& points, const char* what) {
  if (static_cast<Eigen::Index>(fvals.size()) != points.size()) {
    throw MismatchError(std::string(what) + ": " + std::to_string(fvals.size()) +
                        " function values for " + std::to_string(points.size()) + " kernel points");
  }
  const Eigen::Index d = fvals.front().rows();
  for (const auto& f : fvals) {
    if (f.rows() != d || f.cols() != d || d < 1) {
      throw DimensionError(std::string(what) + ": function values must be square of one common size");
    }
  }
  return d;
}

// The witness assembly at C^2 = c2. The d x d factor is transposed,
// (C^2 I - f_j* f_i)^T = C^2 I - f_i^T conj(f_j), so that row index i carries
// x for both factors. For scalar f this is the plain product; for d > 1 the
// untransposed pairing is not PSD even for realized functions.
ComplexMatrix witness_assembly(const FunctionValues& fvals, const HermitianKernel& S, double c2) {
  const Eigen::Index n = S.points().size();
  const Eigen::Index d = fvals.front().rows();
  const Eigen::Index dF = S.block_dim();
  const Eigen::Index b = d * dF;
  ComplexMatrix M(n * b, n * b);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& fi = fvals[static_cast<std::size_t>(i)];
      const auto& fj = fvals[static_cast<std::size_t>(j)];
      const ComplexMatrix left = c2 * identity(d) - fi.transpose() * fj.conjugate();
      M.block(i * b, j * b, b, b) = kron(left, S.block(i, j));
    }
  }
  return M;
}

}  // namespace

bool schur_agler_witness_check(const FunctionValues& fvals, const HermitianKernel& S, double c,
                               Tolerance tol) {
  if (!(c >= 0.0)) throw PreconditionError("schur_agler_witness_check: constant must be nonnegative");
  check_values(fvals, S.points(), "schur_agler_witness_check");
  return is_psd(witness_assembly(fvals, S, c * c), tol);
}

double agler_norm_lower_bound(const FunctionValues& fvals, const std::vector<HermitianKernel>& kernels,
                              Tolerance tol) {
  if (kernels.empty()) throw PreconditionError("agler_norm_lower_bound: no kernels supplied");
  for (const auto& S : kernels) check_values(fvals, S.points(), "agler_norm_lower_bound");

  auto passes = [&](double c2) {
    return std::all_of(kernels.begin(), kernels.end(), [&](const HermitianKernel& S) {
      return is_psd(witness_assembly(fvals, S, c2), tol);
    });
  };

  if (passes(0.0)) return 0.0;
  double norm = 0.0;
  for (const auto& f : fvals) norm = std::max(norm, f.size() ? singular_values(f)(0) : 0.0);
  double hi = 2.0 * norm + 1.0;
  double hi2 = hi * hi;
  int grow = 0;
  while (!passes(hi2)) {
    // Non-admissible samples can make the bound infinite.
    if (++grow > 60) return std::numeric_limits<double>::infinity();
    hi2 *= 4.0;
  }
  double lo2 = 0.0;
  while (hi2 - lo2 > tol.atol) {
    const double mid = 0.5 * (lo2 + hi2);
    if (mid <= lo2 || mid >= hi2) break;
    (passes(mid) ? hi2 : lo2) = mid;
  }
  return std::sqrt(hi2);
}

namespace disc {

TestFunctionTable coordinate_table(std::vector<std::string> labels, const ComplexMatrix& coords) {
  if (coords.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw DimensionError("coordinate_table: one coordinate row per label required");
  }
  return TestFunctionTable(PointSet(std::move(labels)), coords.transpose());
}

TestFunctionTable disc_table(const std::vector<Complex>& zs) {
  std::vector<std::string> labels;
  ComplexMatrix coords(static_cast<Eigen::Index>(zs.size()), 1);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    labels.push_back("z" + std::to_string(i));
    coords(static_cast<Eigen::Index>(i), 0) = zs[i];
  }
  return coordinate_table(std::move(labels), coords);
}

HermitianKernel szego_kernel(const PointSet& points, const std::vector<Complex>& zs, int power,
                             const ComplexMatrix& weight) {
  if (static_cast<Eigen::Index>(zs.size()) != points.size()) {
    throw DimensionError("szego_kernel: one sample point per label required");
  }
  return HermitianKernel::from_blocks(points, weight.rows(), [&](Eigen::Index i, Eigen::Index j) {
    const Complex s = 1.0 / (1.0 - zs[static_cast<std::size_t>(i)] * std::conj(zs[static_cast<std::size_t>(j)]));
    return ComplexMatrix(std::pow(s, power) * weight);
  });
}

}  // namespace disc

}  // namespace colligate
