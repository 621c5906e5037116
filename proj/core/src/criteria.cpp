#include "bprt/criteria.hpp"

#include <cmath>
#include <string>

namespace bprt {

void require_consistent(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family) {
  if (basis.dim() != dual.dim() || basis.dim() != family.dim() || basis.count() != dual.count() ||
      basis.count() != family.count()) {
    throw DimensionMismatch("families disagree: basis " + std::to_string(basis.dim()) + "x" +
                            std::to_string(basis.count()) + ", dual " + std::to_string(dual.dim()) + "x" +
                            std::to_string(dual.count()) + ", perturbed " + std::to_string(family.dim()) + "x" +
                            std::to_string(family.count()));
  }
}

std::vector<double> generalized_partial_sums(const Matrix& gram_matrix, const Vector& weights) {
  const Index n = weights.size();
  if (gram_matrix.rows() != n || gram_matrix.cols() != n) {
    throw DimensionMismatch("Gram matrix and weight vector sizes differ");
  }
  const bool compensated = n > kCompensationThreshold;
  std::vector<double> partial(static_cast<std::size_t>(n));
  double running = 0.0;
  for (Index m = 0; m < n; ++m) {
    Accumulator shell(compensated);
    for (Index i = 0; i < m; ++i) shell.add(std::abs(gram_matrix(i, m)) * weights(i) * weights(m));
    for (Index j = 0; j <= m; ++j) shell.add(std::abs(gram_matrix(m, j)) * weights(m) * weights(j));
    // Compensation can push a shell of tiny terms fractionally below zero.
    running += std::max(shell.value(), 0.0);
    partial[static_cast<std::size_t>(m)] = running;
  }
  return partial;
}

ClosenessReport generalized_sum(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family) {
  require_consistent(basis, dual, family);
  ClosenessReport report;
  report.partial_sums = generalized_partial_sums(gram(basis), family.delta_norms());
  report.generalized_sum = report.partial_sums.back();
  report.banach_sum = banach_sum(basis, dual, family);
  if (is_orthonormal(basis)) report.quadratic_sum = quadratic_sum(basis, family);
  return report;
}

double quadratic_sum(const BasisFamily& basis, const PerturbedFamily& family) {
  if (basis.dim() != family.dim() || basis.count() != family.count()) {
    throw DimensionMismatch("basis and perturbed family shapes differ");
  }
  const double defect = orthonormality_defect(basis);
  if (defect > kOrthonormalTol) {
    throw NotOrthonormal("basis is not orthonormal: max|E^T E - I| = " + std::to_string(defect));
  }
  Accumulator acc(basis.count() > kCompensationThreshold);
  for (Index i = 0; i < basis.count(); ++i) acc.add((family.vector(i) - basis.vector(i)).squaredNorm());
  return acc.value();
}

std::vector<double> banach_partial_sums(const BasisFamily& basis, const PerturbedFamily& family) {
  if (basis.dim() != family.dim() || basis.count() != family.count()) {
    throw DimensionMismatch("basis and perturbed family shapes differ");
  }
  std::vector<double> partial(static_cast<std::size_t>(basis.count()));
  double running = 0.0;
  for (Index i = 0; i < basis.count(); ++i) {
    running += basis.vector(i).norm() * family.delta_norms()(i);
    partial[static_cast<std::size_t>(i)] = running;
  }
  return partial;
}

double banach_sum(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family) {
  require_consistent(basis, dual, family);
  Accumulator acc(basis.count() > kCompensationThreshold);
  for (Index i = 0; i < basis.count(); ++i) acc.add(basis.vector(i).norm() * family.delta_norms()(i));
  return acc.value();
}

double tail_bound(const Matrix& gram_matrix, const Vector& weights, Index l, Index j) {
  const Index n = weights.size();
  if (l < 0 || j > n || l >= j) {
    throw BadRange("tail range requires 0 <= l < j <= " + std::to_string(n) + ", got l=" + std::to_string(l) +
                   " j=" + std::to_string(j));
  }
  Accumulator acc(j - l > kCompensationThreshold);
  for (Index i = l; i < j; ++i) {
    for (Index k = l; k < j; ++k) acc.add(std::abs(gram_matrix(i, k)) * weights(i) * weights(k));
  }
  return acc.value();
}

double tail_bound(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family, Index l, Index j) {
  require_consistent(basis, dual, family);
  return tail_bound(gram(basis), family.delta_norms(), l, j);
}

bool plateau_reached(const std::vector<double>& partial_sums, std::size_t n, double tol) {
  if (n == 0 || n > partial_sums.size()) throw BadRange("plateau level out of range");
  const double current = partial_sums[n - 1];
  const std::size_t half = n / 2;
  const double previous = half == 0 ? 0.0 : partial_sums[half - 1];
  return current - previous <= tol * (1.0 + current);
}

}  // namespace bprt
