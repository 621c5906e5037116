#pragma once

// Finite-truncation model of a real Hilbert space. Vectors are coordinate
// arrays of length `dim`; families are stored column-wise.

#include <Eigen/Dense>

#include <vector>

#include "bprt/error.hpp"

namespace bprt {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultBioTol = 1e-10;
inline constexpr double kOrthonormalTol = 1e-8;

class TruncatedSpace {
 public:
  explicit TruncatedSpace(Index dim);

  Index dim() const noexcept { return dim_; }

  double inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  friend bool operator==(const TruncatedSpace&, const TruncatedSpace&) = default;

 private:
  Index dim_;
};

/// The truncated stand-in for a Schauder basis {e_i}: N linearly independent
/// columns in R^D, N <= D.
class BasisFamily {
 public:
  /// Throws RankDeficient when sigma_min <= rank_tol * sigma_max, BadSpec on
  /// empty input or N > D.
  explicit BasisFamily(Matrix columns, double rank_tol = kDefaultRankTol);

  TruncatedSpace space() const { return TruncatedSpace(e_.rows()); }
  Index dim() const noexcept { return e_.rows(); }
  Index count() const noexcept { return e_.cols(); }
  const Matrix& matrix() const noexcept { return e_; }
  auto vector(Index i) const { return e_.col(i); }
  double rank_tol() const noexcept { return rank_tol_; }

 private:
  Matrix e_;
  double rank_tol_;
};

/// Biorthogonal system {e'_i}: (e'_i, e_j) = delta_ij.
class DualFamily {
 public:
  DualFamily(Matrix columns, double residual) : e_dual_(std::move(columns)), residual_(residual) {}

  Index dim() const noexcept { return e_dual_.rows(); }
  Index count() const noexcept { return e_dual_.cols(); }
  const Matrix& matrix() const noexcept { return e_dual_; }
  auto vector(Index i) const { return e_dual_.col(i); }

  /// max_{i,j} |(e'_i, e_j) - delta_ij| measured at construction.
  double residual() const noexcept { return residual_; }

  BasisFamily as_basis(double rank_tol = kDefaultRankTol) const { return BasisFamily(e_dual_, rank_tol); }

 private:
  Matrix e_dual_;
  double residual_;
};

/// Candidate family {f_i} with cached deltas d_i = f_i - e'_i.
class PerturbedFamily {
 public:
  /// Deltas are computed as f_i - e'_i.
  static PerturbedFamily from_vectors(Matrix vectors, const DualFamily& dual);
  /// Vectors are computed as e'_i + d_i, so d_i + e'_i == f_i holds bitwise.
  static PerturbedFamily from_deltas(const DualFamily& dual, Matrix deltas);

  Index dim() const noexcept { return f_.rows(); }
  Index count() const noexcept { return f_.cols(); }
  const Matrix& matrix() const noexcept { return f_; }
  auto vector(Index i) const { return f_.col(i); }
  const Matrix& deltas() const noexcept { return d_; }
  const Vector& delta_norms() const noexcept { return delta_norms_; }

 private:
  PerturbedFamily(Matrix f, Matrix d);

  Matrix f_;
  Matrix d_;
  Vector delta_norms_;
};

/// Gram matrix of the columns, filled from the upper triangle so that the
/// result is exactly symmetric.
Matrix gram(const Matrix& columns);
Matrix gram(const BasisFamily& basis);

/// Solves E^T X = I with a column-pivoted factorization. For N < D returns
/// the minimum-norm dual E (E^T E)^{-1}, which lies in span{e_i}.
DualFamily biorthogonal(const BasisFamily& basis);

double max_abs(const Matrix& m);

/// max-abs of E^T E - I.
double orthonormality_defect(const BasisFamily& basis);
bool is_orthonormal(const BasisFamily& basis, double tol = kOrthonormalTol);

/// Singular values in decreasing order.
Vector singular_values(const Matrix& m);

/// Number of singular values strictly above rel_tol * sigma_max.
Index numerical_rank(const Matrix& m, double rel_tol);

}  // namespace bprt
