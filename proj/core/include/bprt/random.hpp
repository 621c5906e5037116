#pragma once

// Reproducible random numbers. The engine is std::mt19937_64 (fully
// specified by the standard). Uniforms take the top 53 bits of each draw;
// normals use the Box-Muller transform, consuming two uniforms per pair and
// caching the second value. Nothing here depends on the unspecified
// <random> distributions, so streams are identical across platforms.

#include <cstdint>
#include <optional>
#include <random>

#include "bprt/hilbert.hpp"

namespace bprt {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();

  Vector gaussian_vector(Index n);
  Matrix gaussian_matrix(Index rows, Index cols);
  /// Uniform direction on the unit sphere in R^n (n >= 1).
  Vector unit_vector(Index n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace bprt
