#include "bprt/expansion.hpp"

#include <cmath>
#include <string>

namespace bprt {

ExpansionSolver::ExpansionSolver(const OperatorBundle& bundle, double inv_tol)
    : bundle_(std::make_shared<const OperatorBundle>(bundle)) {
  const InvertibilityReport inv = invertibility(*bundle_, inv_tol);
  if (!(inv.sigma_min > inv_tol * inv.sigma_max)) {
    throw SingularOperator("operator A is numerically singular: sigma_min = " + std::to_string(inv.sigma_min) +
                           ", sigma_max = " + std::to_string(inv.sigma_max));
  }
  cond_ = inv.cond;
  if (bundle_->level == bundle_->dim()) {
    factor_.emplace<Eigen::PartialPivLU<Matrix>>(bundle_->A);
  } else {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(bundle_->A);
    cod.setThreshold(inv_tol);
    factor_ = std::move(cod);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod_star(bundle_->A_star);
    cod_star.setThreshold(inv_tol);
    adjoint_factor_ = std::move(cod_star);
  }
}

Vector ExpansionSolver::solve(const Vector& rhs) const {
  if (rhs.size() != bundle_->dim()) throw DimensionMismatch("right-hand side has wrong length");
  return std::visit([&](const auto& f) -> Vector { return f.solve(rhs); }, factor_);
}

Vector ExpansionSolver::solve_adjoint(const Vector& rhs) const {
  if (rhs.size() != bundle_->dim()) {
    throw DimensionMismatch("vector has length " + std::to_string(rhs.size()) + ", expected " +
                            std::to_string(bundle_->dim()));
  }
  if (adjoint_factor_) return adjoint_factor_->solve(rhs);
  return std::get<Eigen::PartialPivLU<Matrix>>(factor_).transpose().solve(rhs);
}

DualPerturbedFamily dual_system(const ExpansionSolver& solver, const BasisFamily& basis) {
  const OperatorBundle& bundle = solver.bundle();
  if (basis.dim() != bundle.dim() || basis.count() != bundle.level) {
    throw DimensionMismatch("basis does not match operator bundle");
  }
  DualPerturbedFamily dual;
  dual.vectors.resize(basis.dim(), basis.count());
  for (Index i = 0; i < basis.count(); ++i) dual.vectors.col(i) = solver.solve(basis.vector(i));
  const Index n = basis.count();
  dual.bio_residual = max_abs(dual.vectors.transpose() * bundle.perturbed_columns - Matrix::Identity(n, n));
  return dual;
}

DualPerturbedFamily dual_system(const OperatorBundle& bundle, const BasisFamily& basis, double inv_tol) {
  return dual_system(ExpansionSolver(bundle, inv_tol), basis);
}

Expansion expand(const ExpansionSolver& solver, const BasisFamily& basis, const Vector& y) {
  const OperatorBundle& bundle = solver.bundle();
  if (basis.dim() != bundle.dim() || basis.count() != bundle.level) {
    throw DimensionMismatch("basis does not match operator bundle");
  }
  const Vector x = solver.solve_adjoint(y);
  Expansion result;
  result.coefficients = basis.matrix().transpose() * x;
  result.residual = (reconstruct(bundle.perturbed_columns, result.coefficients) - y).norm();
  return result;
}

Expansion expand(const OperatorBundle& bundle, const BasisFamily& basis, const Vector& y, double inv_tol) {
  return expand(ExpansionSolver(bundle, inv_tol), basis, y);
}

Vector reconstruct(const Matrix& family_columns, const Vector& coefficients) {
  if (coefficients.size() != family_columns.cols()) {
    throw DimensionMismatch("expected " + std::to_string(family_columns.cols()) + " coefficients, got " +
                            std::to_string(coefficients.size()));
  }
  Vector out = Vector::Zero(family_columns.rows());
  for (Index i = 0; i < coefficients.size(); ++i) out += coefficients(i) * family_columns.col(i);
  return out;
}

Vector reconstruct(const PerturbedFamily& family, const Vector& coefficients) {
  return reconstruct(family.matrix(), coefficients);
}

bool uniqueness_check(const PerturbedFamily& family, const Vector& y, const Vector& coefficients, double tol) {
  if (y.size() != family.dim() || coefficients.size() != family.count()) return false;
  const Eigen::ColPivHouseholderQR<Matrix> qr(family.matrix());
  if (qr.rank() < family.count()) return false;
  const Vector least_squares = qr.solve(y);
  const double scale = std::max(1.0, max_abs(least_squares));
  return max_abs(least_squares - coefficients) <= tol * scale;
}

}  // namespace bprt
