#include "bprt/hilbert.hpp"

#include <cmath>
#include <string>

namespace bprt {

TruncatedSpace::TruncatedSpace(Index dim) : dim_(dim) {
  if (dim < 1) throw BadSpec("space dimension must be positive, got " + std::to_string(dim));
}

double TruncatedSpace::inner(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("vector length does not match space dimension");
  return x.dot(y);
}

double TruncatedSpace::norm(const Vector& x) const { return std::sqrt(inner(x, x)); }

BasisFamily::BasisFamily(Matrix columns, double rank_tol) : e_(std::move(columns)), rank_tol_(rank_tol) {
  if (e_.rows() < 1 || e_.cols() < 1) throw BadSpec("basis family must be non-empty");
  if (e_.cols() > e_.rows()) {
    throw BadSpec("basis count " + std::to_string(e_.cols()) + " exceeds dimension " + std::to_string(e_.rows()));
  }
  const Index rank = numerical_rank(e_, rank_tol_);
  if (rank < e_.cols()) {
    throw RankDeficient("basis family has numerical rank " + std::to_string(rank) + " < " +
                        std::to_string(e_.cols()));
  }
}

PerturbedFamily::PerturbedFamily(Matrix f, Matrix d) : f_(std::move(f)), d_(std::move(d)) {
  delta_norms_ = d_.colwise().norm().transpose();
}

PerturbedFamily PerturbedFamily::from_vectors(Matrix vectors, const DualFamily& dual) {
  if (vectors.rows() != dual.dim() || vectors.cols() != dual.count()) {
    throw DimensionMismatch("perturbed family is " + std::to_string(vectors.rows()) + "x" +
                            std::to_string(vectors.cols()) + ", dual family is " + std::to_string(dual.dim()) +
                            "x" + std::to_string(dual.count()));
  }
  Matrix d = vectors - dual.matrix();
  return PerturbedFamily(std::move(vectors), std::move(d));
}

PerturbedFamily PerturbedFamily::from_deltas(const DualFamily& dual, Matrix deltas) {
  if (deltas.rows() != dual.dim() || deltas.cols() != dual.count()) {
    throw DimensionMismatch("delta matrix does not match dual family shape");
  }
  Matrix f = dual.matrix() + deltas;
  return PerturbedFamily(std::move(f), std::move(deltas));
}

Matrix gram(const Matrix& columns) {
  const Index n = columns.cols();
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = columns.col(i).dot(columns.col(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Matrix gram(const BasisFamily& basis) { return gram(basis.matrix()); }

DualFamily biorthogonal(const BasisFamily& basis) {
  const Matrix& e = basis.matrix();
  const Index n = basis.count();
  const Matrix identity = Matrix::Identity(n, n);
  Matrix e_dual;
  if (basis.dim() == n) {
    Eigen::ColPivHouseholderQR<Matrix> qr(e.transpose());
    qr.setThreshold(basis.rank_tol());
    if (qr.rank() < n) throw RankDeficient("basis matrix is numerically singular");
    e_dual = qr.solve(identity);
  } else {
    // Minimum-norm solution of E^T X = I.
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(e.transpose());
    cod.setThreshold(basis.rank_tol());
    if (cod.rank() < n) throw RankDeficient("basis matrix is numerically rank deficient");
    e_dual = cod.solve(identity);
  }
  const double residual = max_abs(e_dual.transpose() * e - identity);
  return DualFamily(std::move(e_dual), residual);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double orthonormality_defect(const BasisFamily& basis) {
  return max_abs(gram(basis) - Matrix::Identity(basis.count(), basis.count()));
}

bool is_orthonormal(const BasisFamily& basis, double tol) { return orthonormality_defect(basis) <= tol; }

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

Index numerical_rank(const Matrix& m, double rel_tol) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = rel_tol * s(0);
  Index rank = 0;
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace bprt
