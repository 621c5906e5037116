#include "bprt/operators.hpp"

#include <cmath>
#include <string>

#include "bprt/criteria.hpp"

namespace bprt {

namespace {

void check_level(Index level, Index count) {
  if (level < 1 || level > count) {
    throw BadLevel("level must satisfy 1 <= n <= " + std::to_string(count) + ", got " + std::to_string(level));
  }
}

// out += sum_{i in [begin, end)} left_i right_i^T, entry by entry.
void accumulate_outer(Matrix& out, const Matrix& left, const Matrix& right, Index begin, Index end) {
  const Index d = out.rows();
  for (Index i = begin; i < end; ++i) {
    for (Index c = 0; c < d; ++c) {
      const double rc = right(c, i);
      for (Index r = 0; r < d; ++r) out(r, c) += left(r, i) * rc;
    }
  }
}

double power_iteration_norm(const Matrix& m) {
  Vector v = Vector::Ones(m.cols()) / std::sqrt(static_cast<double>(m.cols()));
  double estimate = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    Vector w = m.transpose() * (m * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double next = std::sqrt(norm);
    if (std::abs(next - estimate) <= 1e-8 * next) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace

Matrix truncated_perturbation(const BasisFamily& basis, const PerturbedFamily& family, Index level) {
  check_level(level, basis.count());
  Matrix k = Matrix::Zero(basis.dim(), basis.dim());
  accumulate_outer(k, basis.matrix(), family.deltas(), 0, level);
  return k;
}

OperatorBundle build_bundle(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family,
                            Index level) {
  require_consistent(basis, dual, family);
  check_level(level, basis.count());
  const Index d = basis.dim();

  OperatorBundle bundle;
  bundle.level = level;
  bundle.count = basis.count();
  bundle.K = Matrix::Zero(d, d);
  bundle.A = Matrix::Zero(d, d);
  bundle.A_star = Matrix::Zero(d, d);
  accumulate_outer(bundle.K, basis.matrix(), family.deltas(), 0, level);
  accumulate_outer(bundle.A, basis.matrix(), family.matrix(), 0, level);
  accumulate_outer(bundle.A_star, family.matrix(), basis.matrix(), 0, level);
  bundle.basis_columns = basis.matrix().leftCols(level);
  bundle.perturbed_columns = family.matrix().leftCols(level);

  if (level == basis.count() && basis.count() == d) {
    bundle.identity_defect = max_abs(bundle.A - (Matrix::Identity(d, d) + bundle.K));
  }
  return bundle;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() > kDenseSvdLimit) return power_iteration_norm(m);
  return singular_values(m)(0);
}

double operator_gap(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family, Index l,
                    Index j) {
  require_consistent(basis, dual, family);
  if (l < 0 || j > basis.count() || l >= j) {
    throw BadRange("gap range requires 0 <= l < j <= " + std::to_string(basis.count()) + ", got l=" +
                   std::to_string(l) + " j=" + std::to_string(j));
  }
  Matrix diff = Matrix::Zero(basis.dim(), basis.dim());
  accumulate_outer(diff, basis.matrix(), family.deltas(), l, j);
  return spectral_norm(diff);
}

}  // namespace bprt
