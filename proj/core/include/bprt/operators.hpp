#pragma once

// Dense truncations of the finite-rank operators
//   K_n x  = sum_{i<=n} (f_i - e'_i, x) e_i
//   A_n x  = sum_{i<=n} (f_i, x) e_i
//   A*_n x = sum_{i<=n} (e_i, x) f_i

#include <optional>

#include "bprt/hilbert.hpp"

namespace bprt {

/// Above this dimension the spectral norm falls back to power iteration.
inline constexpr Index kDenseSvdLimit = 1024;

struct OperatorBundle {
  Matrix K;
  Matrix A;
  Matrix A_star;
  Index level = 0;
  /// Family size N the bundle was built from.
  Index count = 0;
  /// max-abs of A - (I + K); set only when level == N == D.
  std::optional<double> identity_defect;
  /// Leading `level` columns of E and F, kept for factorized cross-checks.
  Matrix basis_columns;
  Matrix perturbed_columns;

  Index dim() const noexcept { return A.rows(); }
  bool full_level() const noexcept { return level == count; }
};

/// Assembles K, A and A* independently by rank-one accumulation over
/// i = 1..level. Throws BadLevel unless 1 <= level <= N.
OperatorBundle build_bundle(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family,
                            Index level);

/// K_level as a dense matrix: sum_{i < level} e_i d_i^T (0-based columns).
Matrix truncated_perturbation(const BasisFamily& basis, const PerturbedFamily& family, Index level);

/// sigma_max(K_j - K_l) for 0 <= l < j <= N. Throws BadRange.
double operator_gap(const BasisFamily& basis, const DualFamily& dual, const PerturbedFamily& family, Index l,
                    Index j);

/// Largest singular value. Dense SVD up to kDenseSvdLimit, power iteration
/// on M^T M (relative tolerance 1e-8) beyond.
double spectral_norm(const Matrix& m);

}  // namespace bprt
