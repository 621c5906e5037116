#pragma once

// Expansions in the perturbed family: y = sum_i (e_i, (A*)^{-1} y) f_i.
// The coefficient functional y -> (e_i, (A*)^{-1} y) is represented by the
// dual vector f'_i = A^{-1} e_i.

#include <memory>
#include <variant>

#include "bprt/certification.hpp"

namespace bprt {

inline constexpr double kDefaultExpansionTol = 1e-10;

struct DualPerturbedFamily {
  Matrix vectors;
  /// max-abs of (f'_i, f_j) - delta_ij.
  double bio_residual = 0.0;
};

struct Expansion {
  Vector coefficients;
  /// ||sum c_i f_i - y||.
  double residual = 0.0;
};

/// One factorization of A shared by every solve. Square full-rank case:
/// LU with partial pivoting; N < D: complete orthogonal decomposition
/// giving minimum-norm solutions on the active subspace.
class ExpansionSolver {
 public:
  /// Throws SingularOperator when sigma_min(A) <= inv_tol * sigma_max(A),
  /// BadLevel when the bundle is not at full level.
  explicit ExpansionSolver(const OperatorBundle& bundle, double inv_tol = kDefaultInvTol);

  /// Solves A x = b.
  Vector solve(const Vector& rhs) const;
  /// Solves A* x = b.
  Vector solve_adjoint(const Vector& rhs) const;

  double cond() const noexcept { return cond_; }
  const OperatorBundle& bundle() const noexcept { return *bundle_; }

 private:
  std::shared_ptr<const OperatorBundle> bundle_;
  std::variant<Eigen::PartialPivLU<Matrix>, Eigen::CompleteOrthogonalDecomposition<Matrix>> factor_;
  std::optional<Eigen::CompleteOrthogonalDecomposition<Matrix>> adjoint_factor_;
  double cond_ = 0.0;
};

/// f'_i solving A f'_i = e_i. Throws SingularOperator.
DualPerturbedFamily dual_system(const OperatorBundle& bundle, const BasisFamily& basis,
                                double inv_tol = kDefaultInvTol);
DualPerturbedFamily dual_system(const ExpansionSolver& solver, const BasisFamily& basis);

/// Solves A* x = y and sets c_i = (e_i, x). Throws SingularOperator,
/// DimensionMismatch.
Expansion expand(const OperatorBundle& bundle, const BasisFamily& basis, const Vector& y,
                 double inv_tol = kDefaultInvTol);
Expansion expand(const ExpansionSolver& solver, const BasisFamily& basis, const Vector& y);

/// sum_i c_i f_i accumulated in ascending i. Throws DimensionMismatch.
Vector reconstruct(const PerturbedFamily& family, const Vector& coefficients);
Vector reconstruct(const Matrix& family_columns, const Vector& coefficients);

/// True iff c agrees within tol (max-abs, relative to max(1, |c_ls|_inf))
/// with the least-squares solution of F c = y from a column-pivoted QR of F.
bool uniqueness_check(const PerturbedFamily& family, const Vector& y, const Vector& coefficients,
                      double tol = 1e-8);

}  // namespace bprt
