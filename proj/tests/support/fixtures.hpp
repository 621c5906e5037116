#pragma once

#include <cstdint>

#include "bprt/corpus.hpp"
#include "bprt/random.hpp"

namespace bprt::testing {

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

/// Columns e_1 = (1,0), e_2 = (1,1).
inline Matrix skew_basis() { return mat2(1, 1, 0, 1); }

/// The running 2x2 example: E = I, f_1 = (1, 0.5), f_2 = (0, 1).
inline CorpusFamily running_example() {
  BasisFamily basis(Matrix::Identity(2, 2));
  DualFamily dual = biorthogonal(basis);
  PerturbedFamily family = PerturbedFamily::from_vectors(mat2(1, 0, 0.5, 1), dual);
  return {std::move(basis), std::move(dual), std::move(family)};
}

/// Well-conditioned general basis (I + small Gaussian) with random deltas of
/// norm `scale` * U(0.2, 1).
inline CorpusFamily random_family(Index dim, Index count, std::uint64_t seed, double scale = 0.2) {
  Rng rng(seed);
  Matrix e = Matrix::Identity(dim, count) + (0.3 / std::sqrt(static_cast<double>(dim))) * rng.gaussian_matrix(dim, count);
  BasisFamily basis(std::move(e));
  DualFamily dual = biorthogonal(basis);
  Matrix deltas(dim, count);
  for (Index i = 0; i < count; ++i) deltas.col(i) = scale * rng.uniform(0.2, 1.0) * rng.unit_vector(dim);
  PerturbedFamily family = PerturbedFamily::from_deltas(dual, std::move(deltas));
  return {std::move(basis), std::move(dual), std::move(family)};
}

/// Replaces f_2 with f_1.
inline PerturbedFamily with_repeated_member(const PerturbedFamily& family, const DualFamily& dual) {
  Matrix f = family.matrix();
  f.col(1) = f.col(0);
  return PerturbedFamily::from_vectors(std::move(f), dual);
}

inline double relative_error(double actual, double expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

}  // namespace bprt::testing
