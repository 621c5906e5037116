#include "bprt/random.hpp"

#include <cmath>
#include <numbers>

namespace bprt {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Vector Rng::gaussian_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = gaussian();
  return v;
}

Matrix Rng::gaussian_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) m(r, c) = gaussian();
  }
  return m;
}

Vector Rng::unit_vector(Index n) {
  for (;;) {
    Vector v = gaussian_vector(n);
    const double norm = v.norm();
    if (norm > 0.0) return v / norm;
  }
}

}  // namespace bprt
